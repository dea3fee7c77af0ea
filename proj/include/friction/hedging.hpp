#pragma once

#include <cstdint>
#include <vector>

#include "friction/pricing.hpp"

namespace friction {

struct TradeRecord {
    double time = 0.0;
    double size = 0.0;   // shares, positive
    double price = 0.0;  // execution level
    int side = +1;       // +1 buy, -1 sell
};

struct ExecutionReport {
    double z = 0.0;  // terminal liquidation value
    std::vector<TradeRecord> log;
    double static_leg = 0.0;      // value of the static position on this path
    double terminal_level = 0.0;  // path level at the horizon
    double payoff = 0.0;          // filled by verifiers
    double shortfall = 0.0;       // payoff - z
    // diagnostics
    double max_crossing_value = 0.0;  // max over S_0, crossing values, S_T
    double max_overshoot = 0.0;       // worst |increment| - threshold at a crossing
    std::size_t crossings = 0;
    bool truncated = false;  // ran past the tree depth; position frozen

    // audit: recompute z from the static leg, the trade log and the terminal
    // liquidation; must reproduce the reported value
    double replay(double kappa) const;
};

// Short the running maximum of the unit-crossing skeleton: at the i-th
// registered crossing the position becomes minus the running maximum through
// the previous crossing; the terminal position is bought back at the horizon.
// The static leg holds c_q^2 in cash and c_q units of the final (quadratic)
// option.
struct DoublingHedge {
    double c_q = 2.0;
    double crossing_delta = 1.0;
};

ExecutionReport execute(const DoublingHedge& hedge, const SampledPath& path,
                        const MarketSpec& market);

// c_q^2 + c_q * price_N: the setup cost of the doubling portfolio.
double doubling_cost(const DoublingHedge& hedge, const MarketSpec& market);

struct DoublingReport {
    bool ok = false;
    double z = 0.0;
    double max_theta_sq = 0.0;   // max crossing value squared
    double bound_main = 0.0;     // (1-8k)/4 * max_theta_sq
    double margin_main = 0.0;
    double alpha_value = 0.0;    // tail claim on this path
    double bound_alpha = 0.0;    // K(1-8k)/32 * alpha
    double margin_alpha = 0.0;
    bool chain_supnorm_ok = false;  // ||S|| <= 2 max crossing value
    bool chain_alpha_ok = false;    // K alpha <= 8 max_theta_sq
    double overshoot_margin = 0.0;  // reported, not asserted
};

// Executes the doubling hedge and checks both pathwise inequalities at the
// stated tail level; failures are recorded in the report, never thrown.
DoublingReport verify_doubling(const SampledPath& path, const MarketSpec& market, double c_q,
                               double tail_level);

// 32/(1-8k) (c_q^2 + c_q price_N) / K: super-replication cost bound of the
// tail claim at level K; K * bound is constant in K.
double tail_claim_cost_bound(double kappa, double c_q, double price_N, double tail_level);

// A tree plan replayed on continuous paths: the plan's node-k trade executes
// at the (k+1)-th log crossing of the real path, at the sampled crossing
// level; past the tree depth the position freezes until the horizon.
struct LiftedHedge {
    const EventTree* tree = nullptr;
    const HedgePlan* plan = nullptr;
    double epsilon = 0.0;
    int i_max = 64;
};

LiftedHedge lift(const HedgePlan& plan, const EventTree& tree, double epsilon, int i_max);

ExecutionReport execute(const LiftedHedge& hedge, const SampledPath& path,
                        const MarketSpec& market);

struct McStats {
    std::size_t n_total = 0;
    std::size_t n_excluded_depth = 0;  // more crossings than the tree depth
    std::size_t n_excluded_grid = 0;   // no grid element below an observed gap
    std::size_t n_checked = 0;
    std::size_t violations = 0;
    double excluded_fraction = 0.0;
    double min_margin = 0.0;   // min over paths of z - (payoff - bound)
    double mean_shortfall = 0.0;
    double max_shortfall = 0.0;
    std::vector<double> shortfalls;  // payoff - z per checked path
};

// Samples continuous paths, executes the lifted hedge and asserts the
// pathwise estimate  z >= payoff - L(1+sum c_i)(e^{2eps}+eps-1)||S||
//                              - L c_N (e^eps - 1)(2 f_N(S) + ||S||).
McStats monte_carlo_verify(const HedgePlan& plan, const EventTree& tree,
                           const SamplerSpec& sampler, std::size_t n_paths,
                           const MarketSpec& market, const PayoffSpec& payoff, double epsilon,
                           std::uint64_t seed);

}  // namespace friction
