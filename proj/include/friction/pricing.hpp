#pragma once

#include <optional>
#include <vector>

#include "friction/lp.hpp"
#include "friction/payoffs.hpp"
#include "friction/tree.hpp"

namespace friction {

// kappa is the proportional transaction cost rate: buys cost (1+kappa)*price,
// sells yield (1-kappa)*price and the terminal position is liquidated with the
// same friction.
struct MarketSpec {
    double kappa = 0.05;
    StaticOptionSet statics;

    void validate() const;  // enforces 0 < kappa < 1/8
};

// Per-node probability mass p and shadow value x = p*m; m is the shadow price,
// defined (finite) only where p is positive.
struct ConsistentPriceSystem {
    std::vector<double> p;
    std::vector<double> m;
    std::vector<double> x;
};

struct CpsCheck {
    bool ok = false;
    double flow_residual = 0.0;
    double martingale_residual = 0.0;
    double band_violation = 0.0;
    double price_violation = 0.0;
    double mass_defect = 0.0;
};

CpsCheck check_cps(const EventTree& tree, const ConsistentPriceSystem& cps, double band_kappa,
                   const std::vector<double>& option_caps,
                   const std::vector<std::vector<double>>& option_leaf_values, double tol);
CpsCheck check_cps(const EventTree& tree, const ConsistentPriceSystem& cps,
                   const MarketSpec& market, const PayoffSpec& payoff, double tol);

// Static vector c (cash free, option positions long-only) plus per-node trade
// increments; absorbed leaves carry the terminal liquidation split.
struct HedgePlan {
    std::vector<double> statics;   // c_0 .. c_N
    std::vector<double> buy;       // per node
    std::vector<double> sell;      // per node
    std::vector<double> liq_sell;  // per node, leaves only
    std::vector<double> liq_buy;   // per node, leaves only
};

struct PriceResult {
    double value = 0.0;
    HedgePlan plan;
    LpSolution lp;
};

struct DualResult {
    double value = 0.0;
    ConsistentPriceSystem cps;
    LpSolution lp;
};

// Cheapest semi-static super-replication of the payoff over every leaf path;
// trading is adapted by construction (one trade pair per information set).
// The returned plan is re-verified leaf by leaf against the liquidation
// formula before it is returned.
PriceResult primal_lp(const EventTree& tree, const PayoffSpec& payoff, const MarketSpec& market,
                      const LpOptions& opts = {});
// Super-replication required only on the given leaf subset (a model support).
PriceResult primal_lp_subset(const EventTree& tree, const PayoffSpec& payoff,
                             const MarketSpec& market, const std::vector<int>& support,
                             const LpOptions& opts = {});

// Super-replication at an explicit band rate in (0, 1). The band is a
// technical parameter of the widened program (it may exceed the model's 1/8
// friction restriction); statics and quotes still come from the market.
PriceResult primal_lp_banded(const EventTree& tree, const PayoffSpec& payoff,
                             const MarketSpec& market, double band_kappa,
                             const LpOptions& opts = {});

// Best consistent-price-system value: maximize E[G] over per-node masses and
// shadow values subject to flow conservation, the martingale condition, the
// bid-ask band and the option price caps.
DualResult dual_lp(const EventTree& tree, const PayoffSpec& payoff, const MarketSpec& market,
                   const LpOptions& opts = {});

struct GapReport {
    double primal = 0.0;
    double dual = 0.0;
    double gap = 0.0;
    double rel_gap = 0.0;
    bool primal_cert_ok = false;
    bool dual_cert_ok = false;
    // consistent price system rebuilt from the primal row multipliers
    bool multipliers_consistent = false;
    double multiplier_value = 0.0;
};

GapReport duality_gap(const EventTree& tree, const PayoffSpec& payoff, const MarketSpec& market,
                      const LpOptions& opts = {});

// Exact liquidation value of one leaf's slice of a plan: static leg, trade
// legs at the node levels, and the terminal liquidation penalty.
double liquidation_value(const HedgePlan& plan, const EventTree& tree, int leaf,
                         const MarketSpec& market);

struct PathTrade {
    double time = 0.0;
    double buy = 0.0;
    double sell = 0.0;
};

// Stieltjes evaluation on an explicit jump path: every trade time must be 0 or
// one of the path's jump times (MisalignedPlan otherwise); trades execute at
// the prevailing level, the terminal position is liquidated with friction.
double liquidation_value(const std::vector<double>& statics, const std::vector<PathTrade>& trades,
                         const JumpPath& path, const MarketSpec& market);

// ---- explicit constants of the bound programs ----

// 8 sqrt(c_q^2 + c_q * price_N): bounds the expected running sup of any
// consistent system that respects the quadratic option's price.
double supnorm_moment_bound(double c_q, double price_N);

// Tightened option caps for the lower-bound program at discretization epsilon.
std::vector<double> tightened_option_caps(const MarketSpec& market, double epsilon, double L);

// Largest shrunk band kappa~ < kappa with min((1+k)/(1+k~),(1-k~)/(1-k)) >= e^{2eps};
// empty when no positive solution exists.
std::optional<double> shrunk_band_kappa(double kappa, double epsilon);

// Smallest widened band kappa~ > kappa with min((1+k~)/(1+k),(1-k)/(1-k~)) >= e^{4eps}.
// Throws KappaOutOfRange when the result leaves (0, 1).
double widened_band_kappa(double kappa, double epsilon);

// Price-cap slack for the widened program:
//   L (e^{2eps}+eps-1) C^2 / (2(1-8 kappa)) + 2 L (e^eps - 1) price_N + eps.
double price_cap_slack(double L, double epsilon, double kappa, double supnorm_bound,
                       double price_N);

double lower_bound_correction(double L, double supnorm_bound, double epsilon);
double upper_bound_correction(double L, double supnorm_bound, double epsilon, double kappa);

struct BoundEntry {
    double epsilon = 0.0;
    bool feasible = false;     // admissible band and a nonempty measure set
    double value = 0.0;        // -inf when the lower measure set is empty
    double raw_dual = 0.0;     // sup E[G] before correction / positive part
    double correction = 0.0;
    double kappa_tilde = 0.0;
    std::vector<double> adjusted_prices;  // lower program only
    bool flagged_empty = false;  // some cap fell below its minimal consistent value
};

// Lower bound: shrunk band, tightened caps, dual solve, minus the correction.
BoundEntry lower_bound_value(const EventTree& partition_tree, const PayoffSpec& payoff,
                             const MarketSpec& market, double epsilon,
                             const LpOptions& opts = {});
// Upper bound: widened band, caps + slack, the final option truncated at
// lambda (S_T + 1), positive part, plus the correction.
BoundEntry upper_bound_value(const EventTree& dyadic_tree, const PayoffSpec& payoff,
                             const MarketSpec& market, double epsilon, double lambda,
                             const LpOptions& opts = {});

struct NoArbReport {
    bool ok = false;
    double slack = 0.0;  // +inf when there are no options to constrain
    ConsistentPriceSystem witness;
};

// Maximal uniform price slack of a frictionless martingale measure on the
// tree: ok iff some measure prices every option strictly below its quote.
NoArbReport check_no_arbitrage(const EventTree& tree, const MarketSpec& market, double tol = 1e-9,
                               const LpOptions& opts = {});

}  // namespace friction
