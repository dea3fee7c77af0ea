#include <doctest.h>

#include <cmath>

#include "friction/errors.hpp"
#include "friction/payoffs.hpp"
#include "helpers.hpp"

using namespace friction;
using testutil::jump_path;
using testutil::sample_function;

TEST_SUITE("payoffs") {

TEST_CASE("evaluation on jump paths") {
    const JumpPath p = jump_path(1.0, {0.3, 0.7}, {1.0, 1.2, 0.9});
    CHECK(evaluate(payoffs::lookback(), p) == doctest::Approx(1.2));

    const JumpPath c = jump_path(1.0, {}, {1.0});
    CHECK(evaluate(payoffs::asian(), c) == doctest::Approx(1.0));
    // piecewise-constant average is exact
    CHECK(evaluate(payoffs::asian(), p) == doctest::Approx(0.3 * 1.0 + 0.4 * 1.2 + 0.3 * 0.9));

    const JumpPath q = jump_path(1.0, {0.5}, {1.0, std::exp(0.1)});
    CHECK(evaluate(payoffs::call(1.0), q) == doctest::Approx(std::exp(0.1) - 1.0));
    CHECK(evaluate(payoffs::put(1.0), q) == doctest::Approx(0.0));
    CHECK(evaluate(payoffs::quadratic(), q) == doctest::Approx(std::exp(0.2)));
    CHECK(evaluate(payoffs::terminal(), q) == doctest::Approx(std::exp(0.1)));
}

TEST_CASE("asian on sampled paths uses the trapezoid rule") {
    const SampledPath ramp = sample_function([](double t) { return 1.0 + t; }, 101);
    CHECK(evaluate(payoffs::asian(), ramp) == doctest::Approx(1.5));
}

TEST_CASE("tail claim value and boundary") {
    CHECK(alpha_tail_value(1.5, 2.0) == doctest::Approx(0.75));
    CHECK(alpha_tail_value(3.0, 2.0) == doctest::Approx(4.5));
    CHECK(alpha_tail_value(2.0, 2.0) == doctest::Approx(3.0));  // indicator on at equality

    const JumpPath p = jump_path(1.0, {0.4}, {1.0, 3.0});
    CHECK(evaluate(payoffs::alpha_tail(2.0), p) == doctest::Approx(4.5));
}

TEST_CASE("tail claim is nonincreasing in the level") {
    for (double m : {0.5, 1.0, 1.9, 2.0, 2.5, 10.0}) {
        double prev = alpha_tail_value(m, 1.0);
        for (double k : {2.0, 4.0, 8.0, 100.0}) {
            const double v = alpha_tail_value(m, k);
            CHECK(v <= prev + 1e-15);
            prev = v;
        }
    }
}

TEST_CASE("quadratic truncation") {
    CHECK(truncate_quadratic(4.0, 10.0, 2.0) == doctest::Approx(4.0));
    CHECK(truncate_quadratic(100.0, 10.0, 2.0) == doctest::Approx(30.0));
    // both branches meet at the unique fixed point of x^2 = lambda (x + 1)
    const double x = 1.0 + std::sqrt(3.0);  // lambda = 2
    CHECK(truncate_quadratic(x * x, 2.0, x) == doctest::Approx(x * x));
    CHECK(x * x == doctest::Approx(2.0 * (x + 1.0)));
}

TEST_CASE("payoff truncation follows the capped-claim rule") {
    const PayoffSpec base = payoffs::lookback();
    const PayoffSpec capped = payoffs::truncate(base, 2.0);  // cap = L*2 + 0
    const JumpPath small = jump_path(1.0, {0.5}, {1.0, 1.5});
    const JumpPath big = jump_path(1.0, {0.5}, {1.0, 5.0});
    CHECK(evaluate(capped, small) == doctest::Approx(1.5));
    CHECK(evaluate(capped, big) == doctest::Approx(2.0));
    CHECK(evaluate(capped, big) <= evaluate(base, big));
}

TEST_CASE("quadratic growth constant") {
    CHECK(quadratic_growth_constant(payoffs::quadratic()) == doctest::Approx(2.0));
    const PayoffSpec quarter =
        payoffs::custom_vanilla([](double x) { return x * x / 4.0; }, 1.0, "quarter_square");
    CHECK(quadratic_growth_constant(quarter) == doctest::Approx(4.0));
    const PayoffSpec linear = payoffs::custom_vanilla([](double x) { return x; }, 1.0, "linear");
    CHECK_THROWS_AS(quadratic_growth_constant(linear), NoCqFound);
}

TEST_CASE("sup-norm regularity validator") {
    CHECK(check_lipschitz_supnorm(payoffs::lookback(), 200, 11).pass);
    CHECK(check_lipschitz_supnorm(payoffs::call(1.0), 200, 12).pass);
    CHECK(check_lipschitz_supnorm(payoffs::asian(), 200, 13).pass);
    CHECK(check_lipschitz_supnorm(payoffs::quadratic(), 200, 14).pass);  // growth form

    const LipschitzReport bad = check_lipschitz_supnorm(payoffs::lookback(0.5), 200, 15);
    CHECK(!bad.pass);
    CHECK(bad.worst_ratio > 0.5);  // witness: constant paths at separated levels
}

TEST_CASE("time-shift regularity validator") {
    const LipschitzReport lb = check_lipschitz_timeshift(payoffs::lookback(), 200, 21);
    CHECK(lb.pass);
    CHECK(lb.worst_ratio == doctest::Approx(0.0));  // shifts never move the max

    CHECK(check_lipschitz_timeshift(payoffs::asian(), 200, 22).pass);

    const LipschitzReport skipped = check_lipschitz_timeshift(payoffs::call(1.0), 200, 23);
    CHECK(!skipped.applicable);
    CHECK(skipped.note.find("skipped") != std::string::npos);
}

TEST_CASE("positive homogeneity spot checks") {
    const JumpPath p = jump_path(1.0, {0.4, 0.8}, {1.0, 1.3, 0.8});
    for (double lam : {0.5, 2.0, 3.7}) {
        JumpPath scaled = p;
        for (double& l : scaled.levels) l *= lam;
        CHECK(evaluate(payoffs::lookback(), scaled) ==
              doctest::Approx(lam * evaluate(payoffs::lookback(), p)));
        CHECK(evaluate(payoffs::quadratic(), scaled) ==
              doctest::Approx(lam * lam * evaluate(payoffs::quadratic(), p)));
    }
}

TEST_CASE("static option set validation") {
    StaticOptionSet ok;
    ok.options = {payoffs::call(1.0), payoffs::quadratic()};
    ok.prices = {0.3, 2.0};
    CHECK_NOTHROW(ok.validate());
    CHECK(ok.growth_constant() == doctest::Approx(2.0));
    CHECK(ok.last_price() == doctest::Approx(2.0));

    StaticOptionSet no_growth;
    no_growth.options = {payoffs::call(1.0)};
    no_growth.prices = {0.3};
    CHECK_THROWS_AS(no_growth.validate(), NoCqFound);  // final claim must grow like x^2

    StaticOptionSet unbounded_pd;
    PayoffSpec lb = payoffs::lookback();
    unbounded_pd.options = {lb, payoffs::quadratic()};
    unbounded_pd.prices = {1.5, 2.0};
    CHECK_THROWS_AS(unbounded_pd.validate(), ConfigInvalid);

    StaticOptionSet bounded_pd;
    bounded_pd.options = {payoffs::truncate(payoffs::lookback(), 3.0), payoffs::quadratic()};
    bounded_pd.prices = {1.5, 2.0};
    CHECK_NOTHROW(bounded_pd.validate());
}

TEST_CASE("value at the zero path") {
    CHECK(value_at_zero(payoffs::lookback()) == doctest::Approx(0.0));
    CHECK(value_at_zero(payoffs::call(1.0)) == doctest::Approx(0.0));
    CHECK(value_at_zero(payoffs::put(1.0)) == doctest::Approx(1.0));
    const PayoffSpec capped = payoffs::truncate(payoffs::put(1.0), 5.0, 1.0);
    CHECK(capped.cap == doctest::Approx(6.0));
}

}  // TEST_SUITE
