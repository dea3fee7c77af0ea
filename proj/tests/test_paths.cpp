#include <doctest.h>

#include <cmath>
#include <random>

#include "friction/errors.hpp"
#include "friction/paths.hpp"
#include "helpers.hpp"

using namespace friction;
using testutil::jump_path;
using testutil::sample_function;

TEST_SUITE("paths") {

TEST_CASE("log crossings of exp(t) land on the analytic grid") {
    const SampledPath p = sample_function([](double t) { return std::exp(t); }, 1001);
    const CrossingDecomposition c = log_crossing_times(p, 0.2);
    REQUIRE(c.count() == 4);  // the passage at t=1 coincides with the horizon
    const double expected[] = {0.2, 0.4, 0.6, 0.8};
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::fabs(c.times[k] - expected[k]) <= 1.5e-3);
    CHECK(c.terminal_index == 1000);
}

TEST_CASE("constant path has no crossings") {
    const SampledPath p = sample_function([](double) { return 1.0; }, 101);
    CHECK(log_crossing_times(p, 0.1).count() == 0);
    CHECK(absolute_crossing_times(p, 1.0).count() == 0);
}

TEST_CASE("log crossings of exp(-t)") {
    const SampledPath p = sample_function([](double t) { return std::exp(-t); }, 1001);
    const CrossingDecomposition c = log_crossing_times(p, 0.5);
    REQUIRE(c.count() == 1);
    CHECK(std::fabs(c.times[0] - 0.5) <= 1.5e-3);
}

TEST_CASE("absolute crossings of linear ramps") {
    {
        const SampledPath p = sample_function([](double t) { return 1.0 + 2.0 * t; }, 1001);
        const CrossingDecomposition c = absolute_crossing_times(p, 1.0);
        REQUIRE(c.count() == 1);  // the second passage sits exactly at the horizon
        CHECK(c.times[0] == doctest::Approx(0.5).epsilon(2e-3));
        CHECK(c.values[0] == doctest::Approx(2.0).epsilon(1e-2));
    }
    {
        const SampledPath p = sample_function([](double t) { return 1.0 + 3.0 * t; }, 1001);
        const CrossingDecomposition c = absolute_crossing_times(p, 1.0);
        REQUIRE(c.count() == 2);
        CHECK(std::fabs(c.times[0] - 1.0 / 3.0) <= 1.5e-3);
        CHECK(std::fabs(c.times[1] - 2.0 / 3.0) <= 1.5e-3);
    }
}

TEST_CASE("crossing count grows as the threshold shrinks") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const SampledPath p = sample_gbm(0.0, 0.3, 801, 1.0, 1000 + s);
        std::size_t prev = log_crossing_times(p, 0.25).count();
        for (double eps : {0.15, 0.08, 0.04}) {
            const std::size_t k = log_crossing_times(p, eps).count();
            CHECK(k >= prev);
            prev = k;
        }
    }
}

TEST_CASE("grid elements: enumeration and membership") {
    const auto u = grid_elements(GridSpec{0.1, 2, 4});
    const std::vector<double> expected = {0.1 / 16, 0.1 / 12, 0.0125, 0.025, 0.05, 0.075, 0.1};
    REQUIRE(u.size() == expected.size());
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(u[i] == doctest::Approx(expected[i]));

    CHECK(grid_contains(GridSpec{0.1, 1, 4}, 0.05));   // both families contain eps/2
    CHECK(!grid_contains(GridSpec{0.1, 1, 4}, 0.03));
}

TEST_CASE("snap_below takes the largest element strictly below") {
    CHECK(snap_below(0.06, GridSpec{0.1, 1, 8}) == doctest::Approx(0.05));
    CHECK(snap_below(0.05 + 1e-12, GridSpec{0.1, 1, 8}) == doctest::Approx(0.05));
    CHECK(snap_below(0.05, GridSpec{0.1, 1, 8}) < 0.05);  // strict inequality
    CHECK_THROWS_AS(snap_below(0.004, GridSpec{0.1, 1, 8}), NoGridElementBelow);
}

TEST_CASE("discretize: constant path maps to the constant jump path") {
    const SampledPath p = sample_function([](double) { return 1.0; }, 101);
    const JumpPath j = discretize(p, 0.1, 10);
    CHECK(j.jumps() == 0);
    CHECK(j.levels[0] == doctest::Approx(1.0));
}

TEST_CASE("discretize: one crossing of exp(t) at eps=0.5") {
    const SampledPath p = sample_function([](double t) { return std::exp(t); }, 1001);
    const JumpPath j = discretize(p, 0.5, 10, 64);
    REQUIRE(j.jumps() == 1);
    // largest grid element of U_1 strictly below the observed gap (~0.5) is 0.25
    CHECK(j.jump_times[0] == doctest::Approx(0.25));
    CHECK(j.levels[1] == doctest::Approx(std::exp(0.5)).epsilon(2e-3));
}

TEST_CASE("discretize properties on sampled brownian paths") {
    for (std::uint64_t s = 0; s < 25; ++s) {
        const SampledPath p = sample_gbm(0.0, 0.4, 1001, 1.0, 7000 + s);
        const double eps = 0.15;
        const CrossingDecomposition c = log_crossing_times(p, eps);
        const std::size_t max_jumps = 3;
        const JumpPath j = discretize(p, eps, max_jumps, 64);
        CHECK(j.jumps() == std::min(c.count(), max_jumps));
        // levels are the crossing samples exactly; snapped times precede them
        for (std::size_t k = 0; k < j.jumps(); ++k) {
            CHECK(j.levels[k + 1] == c.values[k]);
            CHECK(j.jump_times[k] < c.times[k]);
            if (k > 0) CHECK(j.jump_times[k] > j.jump_times[k - 1]);
        }
        // sampled log steps overshoot by at most one sample increment
        CHECK(is_grid_jump_path(j, eps, 64, 0.08));
        if (j.jumps() > 0) CHECK(!is_grid_jump_path(j, 2.0 * eps, 64, 0.08));
    }
}

TEST_CASE("grid jump path rejects off-grid gaps and wrong log steps") {
    const double eps = 0.1;
    JumpPath ok = jump_path(1.0, {0.05}, {1.0, std::exp(eps)});
    CHECK(is_grid_jump_path(ok, eps, 8, 1e-9));  // 0.05 = eps/2 is on the k=1 grid
    JumpPath bad_gap = jump_path(1.0, {0.03}, {1.0, std::exp(eps)});
    CHECK(!is_grid_jump_path(bad_gap, eps, 8, 1e-9));
    JumpPath bad_step = jump_path(1.0, {0.05}, {1.0, std::exp(2.0 * eps)});
    CHECK(!is_grid_jump_path(bad_step, eps, 8, 1e-9));
}

TEST_CASE("sup-norm distance") {
    const JumpPath a = jump_path(1.0, {}, {1.0});
    CHECK(sup_norm_distance(a, a) == doctest::Approx(0.0));
    const JumpPath b = jump_path(1.0, {}, {1.5});
    CHECK(sup_norm_distance(a, b) == doctest::Approx(0.5));
    const JumpPath c = jump_path(1.0, {0.5}, {1.0, 2.0});
    const JumpPath d = jump_path(1.0, {0.6}, {1.0, 2.0});
    CHECK(sup_norm_distance(c, d) == doctest::Approx(1.0));
}

TEST_CASE("sup-norm distance is a metric on random jump paths") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto rnd = [&]() {
        std::vector<double> t{0.2 + 0.2 * u(gen), 0.6 + 0.2 * u(gen)};
        std::vector<double> l{1.0, 1.0 + u(gen), 0.5 + u(gen)};
        if (l[2] == l[1]) l[2] += 0.01;
        return jump_path(1.0, t, l);
    };
    for (int i = 0; i < 50; ++i) {
        const JumpPath a = rnd(), b = rnd(), c = rnd();
        const double ab = sup_norm_distance(a, b);
        CHECK(ab == doctest::Approx(sup_norm_distance(b, a)));
        CHECK(ab <= sup_norm_distance(a, c) + sup_norm_distance(c, b) + 1e-12);
        CHECK(ab >= 0.0);
    }
}

TEST_CASE("gbm sampler: determinism and degenerate volatility") {
    const SampledPath a = sample_gbm(0.1, 0.2, 101, 1.0, 99);
    const SampledPath b = sample_gbm(0.1, 0.2, 101, 1.0, 99);
    CHECK(a.values == b.values);  // bitwise
    const SampledPath c = sample_gbm(0.0, 0.0, 11, 1.0, 1);
    for (double v : c.values) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("gbm terminal moments match arithmetic brownian motion") {
    const std::size_t n_paths = 100000;
    double mean = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < n_paths; ++i) {
        const SampledPath p = sample_gbm(0.0, 0.2, 2, 1.0, mix_seed(123, i));
        const double x = std::log(p.terminal());
        mean += x;
        sq += x * x;
    }
    mean /= n_paths;
    const double var = sq / n_paths - mean * mean;
    const double se_mean = 0.2 / std::sqrt(static_cast<double>(n_paths));
    CHECK(std::fabs(mean - (-0.02)) <= 3.0 * se_mean);
    const double se_var = 0.04 * std::sqrt(2.0 / (n_paths - 1));
    CHECK(std::fabs(var - 0.04) <= 3.0 * se_var);
}

TEST_CASE("exp-fbm: brownian case covariance and determinism") {
    FbmSampler sampler(0.5, 1.0, 11, 1.0);  // grid contains 0.3 and 0.7
    const std::size_t n_paths = 100000;
    double m3 = 0.0, m7 = 0.0, cross = 0.0;
    for (std::size_t i = 0; i < n_paths; ++i) {
        const SampledPath p = sampler.draw(mix_seed(77, i));
        const double x3 = std::log(p.values[3]);
        const double x7 = std::log(p.values[7]);
        m3 += x3;
        m7 += x7;
        cross += x3 * x7;
    }
    m3 /= n_paths;
    m7 /= n_paths;
    const double cov = cross / n_paths - m3 * m7;
    // cov(B_0.3, B_0.7) = 0.3; se of the sample covariance ~ sqrt((c11 c22 + c12^2)/n)
    const double se = std::sqrt((0.3 * 0.7 + 0.3 * 0.3) / n_paths);
    CHECK(std::fabs(cov - 0.3) <= 3.0 * se);

    const SampledPath a = sample_exp_fbm(0.7, 0.3, 64, 1.0, 5);
    const SampledPath b = sample_exp_fbm(0.7, 0.3, 64, 1.0, 5);
    CHECK(a.values == b.values);
}

TEST_CASE("exp-fbm: rough case terminal variance") {
    FbmSampler sampler(0.8, 1.0, 9, 1.0);
    const std::size_t n_paths = 100000;
    double mean = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < n_paths; ++i) {
        const double x = std::log(sampler.draw(mix_seed(31, i)).terminal());
        mean += x;
        sq += x * x;
    }
    mean /= n_paths;
    const double var = sq / n_paths - mean * mean;
    const double se = 1.0 * std::sqrt(2.0 / (n_paths - 1));
    CHECK(std::fabs(var - 1.0) <= 3.0 * se);  // t^{2H} = 1 at t = 1
}

TEST_CASE("fbm grid-size guard") {
    CHECK_THROWS_AS(FbmSampler(0.5, 1.0, 5000, 1.0), ConfigInvalid);
}

}  // TEST_SUITE
