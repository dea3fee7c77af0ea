#include "friction/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "friction/errors.hpp"

namespace friction {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

void MarketSpec::validate() const {
    if (!(kappa > 0.0 && kappa < 0.125)) throw ConfigInvalid("kappa must lie in (0, 1/8)");
    statics.validate();
}

namespace {

struct LeafData {
    std::vector<int> leaves;                 // all tree leaves, construction order
    std::vector<JumpPath> paths;             // per leaf
    std::vector<double> g;                   // payoff per leaf
    std::vector<std::vector<double>> f;      // per option, per leaf
    std::vector<double> terminal;            // leaf level
};

LeafData evaluate_leaves(const EventTree& tree, const PayoffSpec& payoff,
                         const StaticOptionSet& statics) {
    LeafData d;
    d.leaves = tree.leaves;
    d.paths.reserve(d.leaves.size());
    for (int leaf : d.leaves) d.paths.push_back(leaf_path(tree, leaf));
    d.g.resize(d.leaves.size());
    d.terminal.resize(d.leaves.size());
    for (std::size_t k = 0; k < d.leaves.size(); ++k) {
        d.g[k] = evaluate(payoff, d.paths[k]);
        d.terminal[k] = d.paths[k].terminal();
    }
    d.f.resize(statics.size());
    for (std::size_t i = 0; i < statics.size(); ++i) {
        d.f[i].resize(d.leaves.size());
        for (std::size_t k = 0; k < d.leaves.size(); ++k)
            d.f[i][k] = evaluate(statics.options[i], d.paths[k]);
    }
    return d;
}

// ---- primal ----

struct PrimalCore {
    LinearProgram lp;
    LpSolution sol;
    HedgePlan plan;
    std::vector<std::size_t> support_index;  // leaf-array indices carrying rows
};

PrimalCore build_and_solve_primal(const EventTree& tree, const LeafData& d,
                                  const MarketSpec& market, const std::vector<int>& support,
                                  const LpOptions& opts) {
    const std::size_t n_nodes = tree.nodes.size();
    const std::size_t n_opts = market.statics.size();
    const double kap = market.kappa;

    std::vector<char> in_support(n_nodes, 0);
    for (int id : support) {
        if (id < 0 || id >= static_cast<int>(n_nodes) || !tree.is_leaf(id))
            throw ConfigInvalid("support contains a non-leaf node id");
        in_support[id] = 1;
    }

    PrimalCore core;
    LinearProgram& lp = core.lp;
    lp.sense = Sense::Min;

    const std::size_t cash_col = lp.add_variable(1.0, -kInf, kInf);
    std::vector<std::size_t> opt_col(n_opts);
    for (std::size_t i = 0; i < n_opts; ++i)
        opt_col[i] = lp.add_variable(market.statics.prices[i], 0.0, kInf);

    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> buy_col(n_nodes, npos), sell_col(n_nodes, npos);
    for (std::size_t v = 0; v < n_nodes; ++v) {
        if (tree.is_leaf(static_cast<int>(v))) continue;
        buy_col[v] = lp.add_variable(0.0, 0.0, kInf);
        sell_col[v] = lp.add_variable(0.0, 0.0, kInf);
    }
    for (std::size_t k = 0; k < d.leaves.size(); ++k)
        if (in_support[d.leaves[k]]) core.support_index.push_back(k);

    const std::size_t ncols = lp.num_vars();
    // the terminal liquidation is the smaller of selling the position at the
    // bid or buying it back at the ask, so the super-replication constraint
    // splits into two linear rows per leaf: sell-side rows first, then the
    // buy-back side, both in leaf order
    for (const double liq : {1.0 - kap, 1.0 + kap}) {
        for (std::size_t k : core.support_index) {
            const int leaf = d.leaves[k];
            std::vector<double> row(ncols, 0.0);
            row[cash_col] = 1.0;
            for (std::size_t i = 0; i < n_opts; ++i) row[opt_col[i]] = d.f[i][k];
            const double s_T = d.terminal[k];
            for (int v : tree.path_nodes(leaf)) {
                if (tree.is_leaf(v)) continue;
                const double s = tree.level(v);
                row[buy_col[v]] = -(1.0 + kap) * s + liq * s_T;
                row[sell_col[v]] = (1.0 - kap) * s - liq * s_T;
            }
            lp.add_row(std::move(row), Relation::Ge, d.g[k]);
        }
    }

    core.sol = solve(lp, opts);
    if (core.sol.status == LpStatus::Unbounded)
        throw NoPriceSystem("primal super-replication cost is unbounded below; "
                            "the static option quotes admit a money pump");
    if (core.sol.status != LpStatus::Optimal)
        throw NumericalBreakdown("primal super-replication solve failed");

    HedgePlan& plan = core.plan;
    plan.statics.resize(n_opts + 1);
    plan.statics[0] = core.sol.x[cash_col];
    for (std::size_t i = 0; i < n_opts; ++i) plan.statics[i + 1] = core.sol.x[opt_col[i]];
    plan.buy.assign(n_nodes, 0.0);
    plan.sell.assign(n_nodes, 0.0);
    plan.liq_sell.assign(n_nodes, 0.0);
    plan.liq_buy.assign(n_nodes, 0.0);
    for (std::size_t v = 0; v < n_nodes; ++v) {
        if (buy_col[v] != npos) {
            plan.buy[v] = core.sol.x[buy_col[v]];
            plan.sell[v] = core.sol.x[sell_col[v]];
        }
    }
    // terminal liquidation per supported leaf, derived from the position
    for (std::size_t k : core.support_index) {
        const int leaf = d.leaves[k];
        double gamma = 0.0;
        for (int v : tree.path_nodes(leaf))
            if (!tree.is_leaf(v)) gamma += plan.buy[v] - plan.sell[v];
        plan.liq_sell[leaf] = std::max(gamma, 0.0);
        plan.liq_buy[leaf] = std::max(-gamma, 0.0);
    }
    return core;
}

// ---- dual ----

struct DualCore {
    LinearProgram lp;
    LpSolution sol;
    LpStatus status = LpStatus::Optimal;
    double value = 0.0;
    ConsistentPriceSystem cps;
};

DualCore build_and_solve_dual(const EventTree& tree, const LeafData& d, double band_kappa,
                              const std::vector<double>& caps,
                              const std::vector<std::vector<double>>& option_values,
                              const LpOptions& opts) {
    const std::size_t n_nodes = tree.nodes.size();
    DualCore core;
    LinearProgram& lp = core.lp;
    lp.sense = Sense::Max;

    std::vector<std::size_t> p_col(n_nodes), x_col(n_nodes);
    std::vector<double> leaf_obj(n_nodes, 0.0);
    for (std::size_t k = 0; k < d.leaves.size(); ++k) leaf_obj[d.leaves[k]] = d.g[k];
    for (std::size_t v = 0; v < n_nodes; ++v) {
        p_col[v] = lp.add_variable(tree.is_leaf(static_cast<int>(v)) ? leaf_obj[v] : 0.0, 0.0, kInf);
        x_col[v] = lp.add_variable(0.0, -kInf, kInf);
    }
    const std::size_t ncols = lp.num_vars();

    {  // root carries unit mass
        std::vector<double> row(ncols, 0.0);
        row[p_col[0]] = 1.0;
        lp.add_row(std::move(row), Relation::Eq, 1.0);
    }
    for (std::size_t v = 0; v < n_nodes; ++v) {
        if (tree.is_leaf(static_cast<int>(v))) continue;
        std::vector<double> flow(ncols, 0.0), mart(ncols, 0.0);
        flow[p_col[v]] = 1.0;
        mart[x_col[v]] = 1.0;
        for (int c : tree.nodes[v].children) {
            flow[p_col[c]] = -1.0;
            mart[x_col[c]] = -1.0;
        }
        lp.add_row(std::move(flow), Relation::Eq, 0.0);
        lp.add_row(std::move(mart), Relation::Eq, 0.0);
    }
    for (std::size_t v = 0; v < n_nodes; ++v) {
        const double s = tree.level(static_cast<int>(v));
        std::vector<double> up(ncols, 0.0), dn(ncols, 0.0);
        up[x_col[v]] = 1.0;
        up[p_col[v]] = -(1.0 + band_kappa) * s;
        dn[x_col[v]] = 1.0;
        dn[p_col[v]] = -(1.0 - band_kappa) * s;
        lp.add_row(std::move(up), Relation::Le, 0.0);
        lp.add_row(std::move(dn), Relation::Ge, 0.0);
    }
    for (std::size_t i = 0; i < caps.size(); ++i) {
        std::vector<double> row(ncols, 0.0);
        for (std::size_t k = 0; k < d.leaves.size(); ++k) row[p_col[d.leaves[k]]] = option_values[i][k];
        lp.add_row(std::move(row), Relation::Le, caps[i]);
    }

    core.sol = solve(lp, opts);
    core.status = core.sol.status;
    if (core.status != LpStatus::Optimal) return core;

    core.value = core.sol.objective;
    core.cps.p.resize(n_nodes);
    core.cps.x.resize(n_nodes);
    core.cps.m.assign(n_nodes, kNan);
    for (std::size_t v = 0; v < n_nodes; ++v) {
        core.cps.p[v] = core.sol.x[p_col[v]];
        core.cps.x[v] = core.sol.x[x_col[v]];
        if (core.cps.p[v] > 1e-11) core.cps.m[v] = core.cps.x[v] / core.cps.p[v];
    }
    return core;
}

std::vector<int> all_leaves(const EventTree& tree) { return tree.leaves; }

}  // namespace

CpsCheck check_cps(const EventTree& tree, const ConsistentPriceSystem& cps, double band_kappa,
                   const std::vector<double>& option_caps,
                   const std::vector<std::vector<double>>& option_leaf_values, double tol) {
    CpsCheck chk;
    const std::size_t n = tree.nodes.size();
    if (cps.p.size() != n || cps.x.size() != n) return chk;

    double mass = 0.0;
    for (std::size_t k = 0; k < tree.leaves.size(); ++k) mass += cps.p[tree.leaves[k]];
    chk.mass_defect = std::fabs(mass - 1.0);

    for (std::size_t v = 0; v < n; ++v) {
        if (!tree.is_leaf(static_cast<int>(v))) {
            double pc = 0.0, xc = 0.0;
            for (int c : tree.nodes[v].children) {
                pc += cps.p[c];
                xc += cps.x[c];
            }
            chk.flow_residual = std::max(chk.flow_residual, std::fabs(cps.p[v] - pc));
            chk.martingale_residual = std::max(chk.martingale_residual, std::fabs(cps.x[v] - xc));
        }
        const double s = tree.level(static_cast<int>(v));
        const double lo = (1.0 - band_kappa) * s * cps.p[v];
        const double hi = (1.0 + band_kappa) * s * cps.p[v];
        chk.band_violation = std::max({chk.band_violation, lo - cps.x[v], cps.x[v] - hi});
        if (cps.p[v] < 0.0) chk.band_violation = std::max(chk.band_violation, -cps.p[v]);
    }
    for (std::size_t i = 0; i < option_caps.size(); ++i) {
        double e = 0.0;
        for (std::size_t k = 0; k < tree.leaves.size(); ++k)
            e += cps.p[tree.leaves[k]] * option_leaf_values[i][k];
        chk.price_violation = std::max(chk.price_violation, e - option_caps[i]);
    }
    chk.ok = chk.flow_residual <= tol && chk.martingale_residual <= tol &&
             chk.band_violation <= tol && chk.price_violation <= tol && chk.mass_defect <= tol;
    return chk;
}

CpsCheck check_cps(const EventTree& tree, const ConsistentPriceSystem& cps,
                   const MarketSpec& market, const PayoffSpec& payoff, double tol) {
    const LeafData d = evaluate_leaves(tree, payoff, market.statics);
    return check_cps(tree, cps, market.kappa, market.statics.prices, d.f, tol);
}

namespace {

PriceResult primal_with_recheck(const EventTree& tree, const PayoffSpec& payoff,
                                const MarketSpec& banded, const std::vector<int>& support,
                                const LpOptions& opts) {
    if (support.empty()) throw ConfigInvalid("support must be nonempty");
    const LeafData d = evaluate_leaves(tree, payoff, banded.statics);
    PrimalCore core = build_and_solve_primal(tree, d, banded, support, opts);

    // recheck, not trust: the witness must clear every supported leaf when
    // re-evaluated through the exact liquidation formula
    for (std::size_t k : core.support_index) {
        const double z = liquidation_value(core.plan, tree, d.leaves[k], banded);
        const double slack = 100.0 * opts.tol * (1.0 + std::fabs(d.g[k]));
        if (z < d.g[k] - slack)
            throw NumericalBreakdown("hedge witness fails at leaf " +
                                     std::to_string(d.leaves[k]) + ": liquidation " +
                                     std::to_string(z) + " < payoff " + std::to_string(d.g[k]));
    }
    return PriceResult{core.sol.objective, std::move(core.plan), std::move(core.sol)};
}

}  // namespace

PriceResult primal_lp(const EventTree& tree, const PayoffSpec& payoff, const MarketSpec& market,
                      const LpOptions& opts) {
    return primal_lp_subset(tree, payoff, market, all_leaves(tree), opts);
}

PriceResult primal_lp_subset(const EventTree& tree, const PayoffSpec& payoff,
                             const MarketSpec& market, const std::vector<int>& support,
                             const LpOptions& opts) {
    market.validate();
    return primal_with_recheck(tree, payoff, market, support, opts);
}

PriceResult primal_lp_banded(const EventTree& tree, const PayoffSpec& payoff,
                             const MarketSpec& market, double band_kappa,
                             const LpOptions& opts) {
    if (!(band_kappa > 0.0 && band_kappa < 1.0))
        throw ConfigInvalid("band rate must lie in (0, 1)");
    market.statics.validate();
    MarketSpec banded = market;
    banded.kappa = band_kappa;
    return primal_with_recheck(tree, payoff, banded, all_leaves(tree), opts);
}

DualResult dual_lp(const EventTree& tree, const PayoffSpec& payoff, const MarketSpec& market,
                   const LpOptions& opts) {
    market.validate();
    const LeafData d = evaluate_leaves(tree, payoff, market.statics);
    DualCore core =
        build_and_solve_dual(tree, d, market.kappa, market.statics.prices, d.f, opts);
    if (core.status == LpStatus::Infeasible)
        throw NoPriceSystem("no consistent price system on this tree at these option quotes");
    if (core.status != LpStatus::Optimal)
        throw NumericalBreakdown("consistent-price-system solve failed");
    return DualResult{core.value, std::move(core.cps), std::move(core.sol)};
}

GapReport duality_gap(const EventTree& tree, const PayoffSpec& payoff, const MarketSpec& market,
                      const LpOptions& opts) {
    market.validate();
    const LeafData d = evaluate_leaves(tree, payoff, market.statics);
    const std::vector<int> support = all_leaves(tree);
    PrimalCore primal = build_and_solve_primal(tree, d, market, support, opts);
    DualCore dual = build_and_solve_dual(tree, d, market.kappa, market.statics.prices, d.f, opts);
    if (dual.status != LpStatus::Optimal)
        throw NoPriceSystem("no consistent price system on this tree at these option quotes");

    GapReport rep;
    rep.primal = primal.sol.objective;
    rep.dual = dual.value;
    rep.gap = std::fabs(rep.primal - rep.dual);
    rep.rel_gap = rep.gap / (1.0 + std::fabs(rep.dual));
    const double cert_tol = std::max(opts.tol * 100.0, 1e-8);
    rep.primal_cert_ok = verify_certificates(primal.lp, primal.sol, cert_tol);
    rep.dual_cert_ok = verify_certificates(dual.lp, dual.sol, cert_tol);

    // rebuild a consistent price system from the primal row multipliers:
    // leaf mass is the sum of the two liquidation-side duals, the leaf shadow
    // value their bid/ask-weighted sum; internal values aggregate upward
    const std::size_t n_nodes = tree.nodes.size();
    const std::size_t n_leaves = d.leaves.size();
    ConsistentPriceSystem sys;
    sys.p.assign(n_nodes, 0.0);
    sys.x.assign(n_nodes, 0.0);
    sys.m.assign(n_nodes, kNan);
    for (std::size_t k = 0; k < n_leaves; ++k) {
        const double y_sell = primal.sol.duals[k];
        const double y_buy = primal.sol.duals[n_leaves + k];
        const double s_T = d.terminal[k];
        sys.p[d.leaves[k]] = y_sell + y_buy;
        sys.x[d.leaves[k]] =
            s_T * ((1.0 - market.kappa) * y_sell + (1.0 + market.kappa) * y_buy);
    }
    for (std::size_t vv = n_nodes; vv-- > 0;) {
        const int v = static_cast<int>(vv);
        if (tree.is_leaf(v)) continue;  // children carry higher ids, already final
        double pc = 0.0, xc = 0.0;
        for (int c : tree.nodes[v].children) {
            pc += sys.p[c];
            xc += sys.x[c];
        }
        sys.p[v] = pc;
        sys.x[v] = xc;
    }
    for (std::size_t v = 0; v < n_nodes; ++v)
        if (sys.p[v] > 1e-11) sys.m[v] = sys.x[v] / sys.p[v];

    const CpsCheck chk = check_cps(tree, sys, market.kappa, market.statics.prices, d.f, cert_tol);
    rep.multiplier_value = 0.0;
    for (std::size_t k = 0; k < n_leaves; ++k) rep.multiplier_value += sys.p[d.leaves[k]] * d.g[k];
    rep.multipliers_consistent =
        chk.ok && std::fabs(rep.multiplier_value - rep.primal) <= cert_tol * (1.0 + std::fabs(rep.primal));
    return rep;
}

double liquidation_value(const HedgePlan& plan, const EventTree& tree, int leaf,
                         const MarketSpec& market) {
    const JumpPath path = leaf_path(tree, leaf);
    double z = plan.statics.empty() ? 0.0 : plan.statics[0];
    for (std::size_t i = 0; i < market.statics.size(); ++i)
        z += plan.statics[i + 1] * evaluate(market.statics.options[i], path);
    double gamma = 0.0;
    const double kap = market.kappa;
    for (int v : tree.path_nodes(leaf)) {
        if (tree.is_leaf(v)) continue;
        const double s = tree.level(v);
        z += (1.0 - kap) * s * plan.sell[v] - (1.0 + kap) * s * plan.buy[v];
        gamma += plan.buy[v] - plan.sell[v];
    }
    const double s_T = tree.level(leaf);
    z += (gamma - kap * std::fabs(gamma)) * s_T;
    return z;
}

double liquidation_value(const std::vector<double>& statics, const std::vector<PathTrade>& trades,
                         const JumpPath& path, const MarketSpec& market) {
    path.validate();
    double z = statics.empty() ? 0.0 : statics[0];
    if (!statics.empty() && statics.size() != market.statics.size() + 1)
        throw ConfigInvalid("static vector must have one entry per option plus cash");
    for (std::size_t i = 0; i < market.statics.size(); ++i)
        z += statics[i + 1] * evaluate(market.statics.options[i], path);

    const double kap = market.kappa;
    double gamma = 0.0;
    for (const PathTrade& t : trades) {
        bool aligned = std::fabs(t.time) <= 1e-12 || std::fabs(t.time - path.horizon) <= 1e-12;
        for (double jt : path.jump_times) aligned = aligned || std::fabs(t.time - jt) <= 1e-12;
        if (!aligned)
            throw MisalignedPlan("trade at t=" + std::to_string(t.time) +
                                 " does not sit on the path's jump structure");
        const double s = path.value_at(t.time);
        z += (1.0 - kap) * s * t.sell - (1.0 + kap) * s * t.buy;
        gamma += t.buy - t.sell;
    }
    z += (gamma - kap * std::fabs(gamma)) * path.terminal();
    return z;
}

// ---- constants ----

double supnorm_moment_bound(double c_q, double price_N) {
    if (!(c_q > 1.0)) throw ConfigInvalid("growth constant must exceed 1");
    return 8.0 * std::sqrt(c_q * c_q + c_q * price_N);
}

std::vector<double> tightened_option_caps(const MarketSpec& market, double epsilon, double L) {
    if (!(epsilon > 0.0 && epsilon < std::log(1.0 + 1.0 / L)))
        throw ConfigInvalid("epsilon must lie in (0, ln(1+1/L))");
    const std::size_t n = market.statics.size();
    if (n == 0) return {};
    const double c_hat = supnorm_moment_bound(market.statics.growth_constant(),
                                              market.statics.last_price());
    std::vector<double> caps(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        caps[i] = market.statics.prices[i] - L * c_hat * (std::exp(4.0 * epsilon) + epsilon - 1.0);
    const double e1 = std::exp(epsilon) - 1.0;
    caps[n - 1] =
        (market.statics.prices[n - 1] * (1.0 - L * e1) - L * c_hat * e1) / (1.0 + L * e1);
    return caps;
}

std::optional<double> shrunk_band_kappa(double kappa, double epsilon) {
    const double a = (1.0 + kappa) * std::exp(-2.0 * epsilon) - 1.0;
    const double b = 1.0 - (1.0 - kappa) * std::exp(2.0 * epsilon);
    const double kt = std::min(a, b);
    if (!(kt > 0.0)) return std::nullopt;
    return kt;
}

double widened_band_kappa(double kappa, double epsilon) {
    const double a = (1.0 + kappa) * std::exp(4.0 * epsilon) - 1.0;
    const double b = 1.0 - (1.0 - kappa) * std::exp(-4.0 * epsilon);
    const double kt = std::max(a, b);
    if (!(kt < 1.0))
        throw KappaOutOfRange("widened band rate " + std::to_string(kt) + " leaves (0,1)");
    return kt;
}

double price_cap_slack(double L, double epsilon, double kappa, double supnorm_bound,
                       double price_N) {
    if (!(kappa < 0.125)) throw ConfigInvalid("kappa must lie below 1/8");
    return L * (std::exp(2.0 * epsilon) + epsilon - 1.0) * supnorm_bound * supnorm_bound /
               (2.0 * (1.0 - 8.0 * kappa)) +
           2.0 * L * (std::exp(epsilon) - 1.0) * price_N + epsilon;
}

double lower_bound_correction(double L, double supnorm_bound, double epsilon) {
    return L * supnorm_bound * (std::exp(4.0 * epsilon) + epsilon - 1.0);
}

double upper_bound_correction(double L, double supnorm_bound, double epsilon, double kappa) {
    return L * (std::exp(2.0 * epsilon) + epsilon - 1.0) * supnorm_bound * supnorm_bound /
           (2.0 * (1.0 - 8.0 * kappa));
}

BoundEntry lower_bound_value(const EventTree& partition_tree, const PayoffSpec& payoff,
                             const MarketSpec& market, double epsilon, const LpOptions& opts) {
    market.validate();
    if (partition_tree.config.mode != TreeMode::Partition)
        throw ConfigInvalid("lower bound runs on a partition-mode tree");
    if (market.statics.empty())
        throw ConfigInvalid("lower bound needs the quadratic static option");
    const double L = payoff.lipschitz_L;
    const double c_hat =
        supnorm_moment_bound(market.statics.growth_constant(), market.statics.last_price());

    BoundEntry entry;
    entry.epsilon = epsilon;
    entry.correction = lower_bound_correction(L, c_hat, epsilon);
    entry.adjusted_prices = tightened_option_caps(market, epsilon, L);

    const LeafData d = evaluate_leaves(partition_tree, payoff, market.statics);
    for (std::size_t i = 0; i < entry.adjusted_prices.size(); ++i) {
        const double min_value = *std::min_element(d.f[i].begin(), d.f[i].end());
        if (entry.adjusted_prices[i] < min_value) entry.flagged_empty = true;
    }

    const auto kt = shrunk_band_kappa(market.kappa, epsilon);
    if (!kt) {
        entry.feasible = false;
        entry.value = -kInf;
        return entry;
    }
    entry.kappa_tilde = *kt;

    DualCore core =
        build_and_solve_dual(partition_tree, d, *kt, entry.adjusted_prices, d.f, opts);
    if (core.status != LpStatus::Optimal) {
        entry.feasible = false;
        entry.value = -kInf;  // supremum over the empty set
        return entry;
    }
    entry.feasible = true;
    entry.raw_dual = core.value;
    entry.value = core.value - entry.correction;
    return entry;
}

BoundEntry upper_bound_value(const EventTree& dyadic_tree, const PayoffSpec& payoff,
                             const MarketSpec& market, double epsilon, double lambda,
                             const LpOptions& opts) {
    market.validate();
    if (dyadic_tree.config.mode != TreeMode::Dyadic)
        throw ConfigInvalid("upper bound runs on a dyadic-mode tree");
    if (market.statics.empty())
        throw ConfigInvalid("upper bound needs the quadratic static option");
    if (!(lambda > 1.0)) throw ConfigInvalid("lambda must exceed 1");

    const double L = payoff.lipschitz_L;
    const double c_hat =
        supnorm_moment_bound(market.statics.growth_constant(), market.statics.last_price());
    const double slack =
        price_cap_slack(L, epsilon, market.kappa, c_hat, market.statics.last_price());

    BoundEntry entry;
    entry.epsilon = epsilon;
    entry.correction = upper_bound_correction(L, c_hat, epsilon, market.kappa);
    entry.kappa_tilde = widened_band_kappa(market.kappa, epsilon);

    const LeafData d = evaluate_leaves(dyadic_tree, payoff, market.statics);
    const std::size_t n = market.statics.size();
    std::vector<double> caps(n);
    std::vector<std::vector<double>> values = d.f;
    for (std::size_t i = 0; i < n; ++i) caps[i] = market.statics.prices[i] + slack;
    for (std::size_t k = 0; k < d.leaves.size(); ++k)
        values[n - 1][k] = truncate_quadratic(d.f[n - 1][k], lambda, d.terminal[k]);

    DualCore core = build_and_solve_dual(dyadic_tree, d, entry.kappa_tilde, caps, values, opts);
    if (core.status != LpStatus::Optimal) {
        entry.feasible = false;
        entry.value = entry.correction;  // positive part of an empty supremum
        return entry;
    }
    entry.feasible = true;
    entry.raw_dual = core.value;
    entry.value = std::max(core.value, 0.0) + entry.correction;
    return entry;
}

NoArbReport check_no_arbitrage(const EventTree& tree, const MarketSpec& market, double tol,
                               const LpOptions& opts) {
    market.validate();
    const std::size_t n_nodes = tree.nodes.size();
    const std::size_t n_opts = market.statics.size();
    const PayoffSpec dummy = payoffs::lookback();
    const LeafData d = evaluate_leaves(tree, dummy, market.statics);

    LinearProgram lp;
    lp.sense = Sense::Max;
    std::vector<std::size_t> p_col(n_nodes);
    for (std::size_t v = 0; v < n_nodes; ++v) p_col[v] = lp.add_variable(0.0, 0.0, kInf);
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t s_col = npos;
    if (n_opts > 0) s_col = lp.add_variable(1.0, -kInf, kInf);
    const std::size_t ncols = lp.num_vars();

    {
        std::vector<double> row(ncols, 0.0);
        row[p_col[0]] = 1.0;
        lp.add_row(std::move(row), Relation::Eq, 1.0);
    }
    for (std::size_t v = 0; v < n_nodes; ++v) {
        if (tree.is_leaf(static_cast<int>(v))) continue;
        std::vector<double> flow(ncols, 0.0), mart(ncols, 0.0);
        flow[p_col[v]] = 1.0;
        mart[p_col[v]] = tree.level(static_cast<int>(v));
        for (int c : tree.nodes[v].children) {
            flow[p_col[c]] = -1.0;
            mart[p_col[c]] = -tree.level(c);
        }
        lp.add_row(std::move(flow), Relation::Eq, 0.0);
        lp.add_row(std::move(mart), Relation::Eq, 0.0);
    }
    for (std::size_t i = 0; i < n_opts; ++i) {
        std::vector<double> row(ncols, 0.0);
        for (std::size_t k = 0; k < d.leaves.size(); ++k) row[p_col[d.leaves[k]]] = d.f[i][k];
        row[s_col] = 1.0;
        lp.add_row(std::move(row), Relation::Le, market.statics.prices[i]);
    }

    NoArbReport rep;
    const LpSolution sol = solve(lp, opts);
    if (sol.status == LpStatus::Infeasible) {
        rep.ok = false;
        rep.slack = -kInf;
        return rep;
    }
    if (sol.status == LpStatus::Unbounded)
        throw NumericalBreakdown("price slack program unbounded (non-positive option payoffs?)");

    rep.slack = n_opts > 0 ? sol.x[s_col] : kInf;
    rep.ok = n_opts == 0 || rep.slack > tol;
    rep.witness.p.resize(n_nodes);
    rep.witness.x.resize(n_nodes);
    rep.witness.m.resize(n_nodes);
    for (std::size_t v = 0; v < n_nodes; ++v) {
        rep.witness.p[v] = sol.x[p_col[v]];
        rep.witness.x[v] = rep.witness.p[v] * tree.level(static_cast<int>(v));
        rep.witness.m[v] = rep.witness.p[v] > 1e-11 ? tree.level(static_cast<int>(v)) : kNan;
    }
    return rep;
}

}  // namespace friction
