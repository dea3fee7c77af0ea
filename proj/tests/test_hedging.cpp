#include <doctest.h>

#include <cmath>

#include "friction/errors.hpp"
#include "friction/hedging.hpp"
#include "helpers.hpp"

using namespace friction;
using testutil::market_with_quadratic;
using testutil::sample_function;

namespace {

TreeConfig dyadic_config(double eps, std::size_t max_jumps, int i_max) {
    TreeConfig c;
    c.mode = TreeMode::Dyadic;
    c.epsilon = eps;
    c.max_jumps = max_jumps;
    c.i_max = i_max;
    return c;
}

// sampled staircase with exact lattice levels, jumping at the given times
SampledPath staircase(const JumpPath& jp, std::size_t n = 401) {
    return sample_function([&](double t) { return jp.value_at(t); }, n, jp.horizon);
}

}  // namespace

TEST_SUITE("hedging") {

TEST_CASE("doubling hedge on the constant path holds only the static leg") {
    const MarketSpec m = market_with_quadratic(0.1);
    const SampledPath flat = sample_function([](double) { return 1.0; }, 101);
    const ExecutionReport rep = execute(DoublingHedge{2.0, 1.0}, flat, m);
    CHECK(rep.log.empty());
    CHECK(rep.crossings == 0);
    CHECK(rep.z == doctest::Approx(4.0 + 2.0 * 1.0));  // c_q^2 + c_q q(1)
    CHECK(rep.z >= (1.0 - 8.0 * m.kappa) / 4.0);
}

TEST_CASE("doubling hedge on a rising ramp, evaluated by hand") {
    // one registered unit crossing at t=0.5 (value 2); the passage at the
    // horizon (value 3) is terminal. The single trade shorts the running max
    // through the previous crossing, executed at the crossing level.
    const MarketSpec m = market_with_quadratic(0.1);
    const SampledPath ramp = sample_function([](double t) { return 1.0 + 2.0 * t; }, 1001);
    const ExecutionReport rep = execute(DoublingHedge{2.0, 1.0}, ramp, m);
    REQUIRE(rep.log.size() == 1);
    CHECK(rep.log[0].side == -1);
    CHECK(rep.log[0].size == doctest::Approx(1.0));
    CHECK(rep.log[0].price == doctest::Approx(2.0));
    // z = [4 + 2*9] + 0.9*2 - 1.1*3 = 22 + 1.8 - 3.3
    CHECK(rep.z == doctest::Approx(20.5).epsilon(1e-9));
    CHECK(rep.max_crossing_value == doctest::Approx(3.0));
}

TEST_CASE("execution audit replays the trade log exactly") {
    const MarketSpec m = market_with_quadratic(0.05);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const SampledPath p = sample_gbm(0.0, 0.5, 501, 1.0, 900 + s);
        const ExecutionReport rep = execute(DoublingHedge{2.0, 1.0}, p, m);
        CHECK(std::fabs(rep.replay(m.kappa) - rep.z) <= 1e-12 * (1.0 + std::fabs(rep.z)));
    }
}

TEST_CASE("doubling cost identity") {
    const MarketSpec m = market_with_quadratic(0.05, 2.0);
    CHECK(doubling_cost(DoublingHedge{2.0, 1.0}, m) == doctest::Approx(4.0 + 2.0 * 2.0));
}

TEST_CASE("pathwise inequalities on a brownian corpus") {
    const MarketSpec m = market_with_quadratic(0.1);
    std::size_t violations = 0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const SampledPath p = sample_gbm(0.0, 0.3, 1001, 1.0, mix_seed(5150, s));
        const DoublingReport rep = verify_doubling(p, m, 2.0, 100.0);
        if (!rep.ok) ++violations;
        CHECK(rep.chain_supnorm_ok);
        CHECK(rep.chain_alpha_ok);
    }
    CHECK(violations == 0);
}

TEST_CASE("tail claim cost bound") {
    CHECK(tail_claim_cost_bound(0.1, 2.0, 2.0, 100.0) == doctest::Approx(12.8));
    const double b1 = tail_claim_cost_bound(0.1, 2.0, 2.0, 10.0);
    const double b2 = tail_claim_cost_bound(0.1, 2.0, 2.0, 100.0);
    CHECK(b2 == doctest::Approx(b1 / 10.0));
    // level * bound is constant in the level
    CHECK(10.0 * b1 == doctest::Approx(100.0 * b2));
    CHECK(tail_claim_cost_bound(0.124, 2.0, 2.0, 100.0) > 100.0 * b2);
}

TEST_CASE("lift guards") {
    const EventTree dtree = build_tree(dyadic_config(0.1, 2, 2));
    const EventTree ptree = [] {
        TreeConfig c;
        c.mode = TreeMode::Partition;
        c.epsilon = 0.1;
        c.partition = {0.5};
        return build_tree(c);
    }();
    HedgePlan plan;
    plan.statics = {1.0};
    plan.buy.assign(dtree.nodes.size(), 0.0);
    plan.sell.assign(dtree.nodes.size(), 0.0);
    plan.liq_sell.assign(dtree.nodes.size(), 0.0);
    plan.liq_buy.assign(dtree.nodes.size(), 0.0);

    CHECK_NOTHROW(lift(plan, dtree, 0.1, 2));
    CHECK_THROWS_AS(lift(plan, dtree, 0.05, 2), TreeMismatch);
    CHECK_THROWS_AS(lift(plan, dtree, 0.1, 4), TreeMismatch);
    CHECK_THROWS_AS(lift(plan, ptree, 0.1, 2), TreeMismatch);
}

TEST_CASE("a zero tree hedge lifts to the bare static leg") {
    const EventTree dtree = build_tree(dyadic_config(0.1, 2, 2));
    const MarketSpec m = market_with_quadratic(0.05);
    HedgePlan plan;
    plan.statics = {1.25, 0.5};
    plan.buy.assign(dtree.nodes.size(), 0.0);
    plan.sell.assign(dtree.nodes.size(), 0.0);
    plan.liq_sell.assign(dtree.nodes.size(), 0.0);
    plan.liq_buy.assign(dtree.nodes.size(), 0.0);
    const LiftedHedge hedge = lift(plan, dtree, 0.1, 2);

    const SampledPath p = sample_gbm(0.0, 0.08, 801, 1.0, 77);
    const ExecutionReport rep = execute(hedge, p, m);
    CHECK(rep.log.empty());
    const double expected = 1.25 + 0.5 * p.terminal() * p.terminal();
    CHECK(rep.z == doctest::Approx(expected));
}

TEST_CASE("lifted execution of an optimal plan on lattice staircases") {
    const double eps = 0.1;
    const EventTree dtree = build_tree(dyadic_config(eps, 2, 2));
    MarketSpec m = market_with_quadratic(0.02);
    const double band = widened_band_kappa(m.kappa, eps);
    const PayoffSpec g = payoffs::lookback();
    const PriceResult plan = primal_lp_banded(dtree, g, m, band);
    const LiftedHedge hedge = lift(plan.plan, dtree, eps, 2);

    MarketSpec banded = m;
    banded.kappa = band;

    for (const auto& [leaf, tree_path] : enumerate_paths(dtree)) {
        if (tree_path.jumps() == 0) continue;
        const SampledPath staircase_path = staircase(tree_path);
        const ExecutionReport rep = execute(hedge, staircase_path, m);
        CHECK(rep.crossings == tree_path.jumps());
        CHECK(!rep.truncated);
        CHECK(rep.max_overshoot <= 1e-9);

        // resolve the snapped image independently and compare the trade log
        // with the plan's node trades (the node-k trade fires at crossing k+1)
        int node = 0;
        double prev_time = 0.0;
        std::vector<int> chain{0};
        for (std::size_t k = 0; k < tree_path.jumps(); ++k) {
            const double snapped =
                snap_below(tree_path.jump_times[k] - prev_time,
                           GridSpec{eps, static_cast<int>(k) + 1, 2});
            const int dir = tree_path.levels[k + 1] > tree_path.levels[k] ? 1 : -1;
            int next = -1;
            for (int c : dtree.nodes[node].children) {
                if (!dtree.nodes[c].absorbed &&
                    dtree.nodes[c].level_offset == dtree.nodes[node].level_offset + dir &&
                    std::fabs(dtree.nodes[c].time - (dtree.nodes[node].time + snapped)) < 1e-12) {
                    next = c;
                    break;
                }
            }
            REQUIRE(next >= 0);
            chain.push_back(next);
            node = next;
            prev_time = tree_path.jump_times[k];
        }
        double pos = 0.0;
        std::size_t log_at = 0;
        for (std::size_t k = 1; k <= tree_path.jumps(); ++k) {
            double target = 0.0;
            for (std::size_t j = 0; j < k && j < chain.size(); ++j)
                target += plan.plan.buy[chain[j]] - plan.plan.sell[chain[j]];
            if (std::fabs(target - pos) > 0.0) {
                REQUIRE(log_at < rep.log.size());
                CHECK(rep.log[log_at].size == doctest::Approx(std::fabs(target - pos)));
                CHECK(rep.log[log_at].time == doctest::Approx(tree_path.jump_times[k - 1]));
                ++log_at;
                pos = target;
            }
        }
        CHECK(log_at == rep.log.size());

        // the replayed tree value on the snapped image floors the real value
        int resolved_leaf = -1;
        for (int c : dtree.nodes[chain.back()].children)
            if (dtree.nodes[c].absorbed) resolved_leaf = c;
        REQUIRE(resolved_leaf >= 0);
        const double z_tree = liquidation_value(plan.plan, dtree, resolved_leaf, banded);
        CHECK(rep.z >= z_tree - 1e-9);
        // and the plan super-replicates the payoff of the snapped image
        CHECK(rep.z >= evaluate(g, leaf_path(dtree, resolved_leaf)) - 1e-9);
    }
}

TEST_CASE("frozen beyond the tree depth") {
    const double eps = 0.15;
    const EventTree dtree = build_tree(dyadic_config(eps, 1, 2));
    MarketSpec m = market_with_quadratic(0.02);
    const PriceResult plan =
        primal_lp_banded(dtree, payoffs::lookback(), m, widened_band_kappa(m.kappa, eps));
    const LiftedHedge hedge = lift(plan.plan, dtree, eps, 2);

    // a staircase with three up jumps overruns the one-jump tree
    const JumpPath jp = testutil::jump_path(
        1.0, {0.2, 0.5, 0.8},
        {1.0, std::exp(eps), std::exp(2 * eps), std::exp(3 * eps)});
    const ExecutionReport rep = execute(hedge, staircase(jp, 801), m);
    CHECK(rep.truncated);
    CHECK(rep.crossings == 3);
    // trades may fire at crossings 1 and 2 (the root and depth-1 node trades);
    // after absorption the position is frozen
    for (const TradeRecord& t : rep.log) CHECK(t.time <= 0.5 + 1e-12);
}

TEST_CASE("monte-carlo verification holds the pathwise floor") {
    const double eps = 0.1;
    const EventTree dtree = build_tree(dyadic_config(eps, 3, 2));
    MarketSpec m = market_with_quadratic(0.02);
    const PayoffSpec g = payoffs::lookback();
    const PriceResult plan = primal_lp_banded(dtree, g, m, widened_band_kappa(m.kappa, eps));

    SamplerSpec sampler;
    sampler.kind = SamplerSpec::Kind::Gbm;
    sampler.sigma = 0.1;
    sampler.n = 1001;
    const McStats stats = monte_carlo_verify(plan.plan, dtree, sampler, 200, m, g, eps, 404);
    CHECK(stats.violations == 0);
    CHECK(stats.n_checked + stats.n_excluded_depth + stats.n_excluded_grid == 200);
    CHECK(stats.excluded_fraction < 0.2);
    CHECK(stats.min_margin >= -1e-9);
}

TEST_CASE("zero-volatility sampler reduces to the constant scenario") {
    const double eps = 0.1;
    const EventTree dtree = build_tree(dyadic_config(eps, 2, 2));
    MarketSpec m = market_with_quadratic(0.02);
    const PayoffSpec g = payoffs::lookback();
    const PriceResult plan = primal_lp_banded(dtree, g, m, widened_band_kappa(m.kappa, eps));

    SamplerSpec sampler;
    sampler.kind = SamplerSpec::Kind::Gbm;
    sampler.sigma = 0.0;
    sampler.n = 101;
    const McStats stats = monte_carlo_verify(plan.plan, dtree, sampler, 5, m, g, eps, 1);
    CHECK(stats.n_checked == 5);
    CHECK(stats.violations == 0);
    // the constant-leaf constraint already forces z = static leg >= payoff
    CHECK(stats.max_shortfall <= 1e-9);
}

TEST_CASE("exp-fbm corpus keeps the same contract") {
    const double eps = 0.12;
    const EventTree dtree = build_tree(dyadic_config(eps, 3, 2));
    MarketSpec m = market_with_quadratic(0.02);
    const PayoffSpec g = payoffs::lookback();
    const PriceResult plan = primal_lp_banded(dtree, g, m, widened_band_kappa(m.kappa, eps));

    SamplerSpec sampler;
    sampler.kind = SamplerSpec::Kind::ExpFbm;
    sampler.hurst = 0.7;
    sampler.sigma = 0.08;
    sampler.n = 512;
    const McStats stats = monte_carlo_verify(plan.plan, dtree, sampler, 100, m, g, eps, 11);
    CHECK(stats.violations == 0);
    CHECK(stats.excluded_fraction < 0.2);
}

}  // TEST_SUITE
