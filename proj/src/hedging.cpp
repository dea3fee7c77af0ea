#include "friction/hedging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "friction/errors.hpp"
#include "friction/kernels.hpp"

namespace friction {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double ExecutionReport::replay(double kappa) const {
    double z_acc = static_leg;
    double pos = 0.0;
    for (const TradeRecord& t : log) {
        if (t.side > 0) {
            z_acc -= (1.0 + kappa) * t.price * t.size;
            pos += t.size;
        } else {
            z_acc += (1.0 - kappa) * t.price * t.size;
            pos -= t.size;
        }
    }
    z_acc += (pos - kappa * std::fabs(pos)) * terminal_level;
    return z_acc;
}

namespace {

double static_leg_value(const std::vector<double>& statics, const StaticOptionSet& set,
                        const SampledPath& path) {
    double v = statics.empty() ? 0.0 : statics[0];
    for (std::size_t i = 0; i < set.size(); ++i) v += statics[i + 1] * evaluate(set.options[i], path);
    return v;
}

}  // namespace

ExecutionReport execute(const DoublingHedge& hedge, const SampledPath& path,
                        const MarketSpec& market) {
    market.validate();
    if (!path.canonical()) throw ConfigInvalid("doubling hedge needs a canonical path");
    if (market.statics.empty())
        throw ConfigInvalid("doubling hedge needs the quadratic static option");
    if (!(hedge.c_q > 1.0)) throw ConfigInvalid("growth constant must exceed 1");

    const CrossingDecomposition cross = absolute_crossing_times(path, hedge.crossing_delta);
    const double kap = market.kappa;

    ExecutionReport rep;
    rep.crossings = cross.count();
    rep.terminal_level = path.terminal();

    // static leg: c_q^2 cash plus c_q units of the final option
    std::vector<double> statics(market.statics.size() + 1, 0.0);
    statics[0] = hedge.c_q * hedge.c_q;
    statics.back() = hedge.c_q;
    rep.static_leg = static_leg_value(statics, market.statics, path);

    double z = rep.static_leg;
    double pos = 0.0;
    double run_max = path.values.front();  // through the previous crossing
    double prev_value = path.values.front();
    rep.max_crossing_value = std::max(path.values.front(), path.terminal());
    for (std::size_t i = 0; i < cross.count(); ++i) {
        const double v = cross.values[i];
        rep.max_overshoot =
            std::max(rep.max_overshoot, std::fabs(v - prev_value) - hedge.crossing_delta);
        const double target = -run_max;
        if (target < pos) {
            const double size = pos - target;
            rep.log.push_back(TradeRecord{cross.times[i], size, v, -1});
            z += (1.0 - kap) * v * size;
            pos = target;
        }
        run_max = std::max(run_max, v);
        prev_value = v;
        rep.max_crossing_value = std::max(rep.max_crossing_value, v);
    }
    z += (pos - kap * std::fabs(pos)) * path.terminal();
    rep.z = z;
    return rep;
}

double doubling_cost(const DoublingHedge& hedge, const MarketSpec& market) {
    if (market.statics.empty())
        throw ConfigInvalid("doubling hedge needs the quadratic static option");
    return hedge.c_q * hedge.c_q + hedge.c_q * market.statics.last_price();
}

DoublingReport verify_doubling(const SampledPath& path, const MarketSpec& market, double c_q,
                               double tail_level) {
    DoublingReport out;
    const ExecutionReport rep = execute(DoublingHedge{c_q, 1.0}, path, market);
    const double kap = market.kappa;

    out.z = rep.z;
    out.max_theta_sq = rep.max_crossing_value * rep.max_crossing_value;
    out.bound_main = (1.0 - 8.0 * kap) / 4.0 * out.max_theta_sq;
    out.margin_main = rep.z - out.bound_main;
    out.overshoot_margin = rep.max_overshoot * (1.0 + rep.max_crossing_value);

    const double sup = kern::max_val(path.values.data(), path.values.size());
    out.alpha_value = alpha_tail_value(sup, tail_level);
    out.bound_alpha = tail_level * (1.0 - 8.0 * kap) / 32.0 * out.alpha_value;
    out.margin_alpha = rep.z - out.bound_alpha;

    const double slack = 1e-12 * (1.0 + std::fabs(rep.z));
    out.chain_supnorm_ok = sup <= 2.0 * rep.max_crossing_value + slack;
    out.chain_alpha_ok = tail_level * out.alpha_value <= 8.0 * out.max_theta_sq + slack;
    out.ok = out.margin_main >= -slack && out.margin_alpha >= -slack && out.chain_supnorm_ok &&
             out.chain_alpha_ok;
    return out;
}

double tail_claim_cost_bound(double kappa, double c_q, double price_N, double tail_level) {
    if (!(kappa < 0.125)) throw ConfigInvalid("kappa must lie below 1/8");
    if (!(tail_level > 0.0)) throw ConfigInvalid("tail level must be positive");
    return 32.0 / (1.0 - 8.0 * kappa) * (c_q * c_q + c_q * price_N) / tail_level;
}

LiftedHedge lift(const HedgePlan& plan, const EventTree& tree, double epsilon, int i_max) {
    if (tree.config.mode != TreeMode::Dyadic)
        throw TreeMismatch("lifting is defined for dyadic-mode trees");
    if (plan.buy.size() != tree.nodes.size() || plan.sell.size() != tree.nodes.size())
        throw TreeMismatch("plan was not built on this tree");
    if (std::fabs(tree.config.epsilon - epsilon) > 1e-15)
        throw TreeMismatch("epsilon differs from the tree's");
    if (tree.config.i_max != i_max) throw TreeMismatch("grid truncation differs from the tree's");
    return LiftedHedge{&tree, &plan, epsilon, i_max};
}

ExecutionReport execute(const LiftedHedge& hedge, const SampledPath& path,
                        const MarketSpec& market) {
    market.validate();
    if (!path.canonical()) throw ConfigInvalid("lifted hedge needs a canonical path");
    const EventTree& tree = *hedge.tree;
    const HedgePlan& plan = *hedge.plan;
    const CrossingDecomposition cross = log_crossing_times(path, hedge.epsilon);
    const std::size_t max_jumps = tree.config.max_jumps;

    ExecutionReport rep;
    rep.crossings = cross.count();
    rep.terminal_level = path.terminal();
    rep.static_leg = static_leg_value(plan.statics, market.statics, path);
    rep.truncated = cross.count() > max_jumps;
    rep.max_crossing_value = std::max(path.values.front(), path.terminal());

    // resolve the discretized image in the tree and collect the post-trade
    // holdings along the resolved chain
    std::vector<double> holdings{plan.buy[0] - plan.sell[0]};
    const std::size_t resolved_jumps = std::min(cross.count(), max_jumps);
    int node = 0;
    double prev_time = 0.0, prev_value = path.values.front();
    for (std::size_t k = 0; k < resolved_jumps; ++k) {
        const double snapped = snap_below(cross.times[k] - prev_time,
                                          GridSpec{hedge.epsilon, static_cast<int>(k) + 1,
                                                   hedge.i_max});
        const double target_time = tree.nodes[node].time + snapped;
        const int dir = cross.values[k] > prev_value ? +1 : -1;
        int next = -1;
        for (int c : tree.nodes[node].children) {
            const TreeNode& cn = tree.nodes[c];
            if (!cn.absorbed && cn.level_offset == tree.nodes[node].level_offset + dir &&
                std::fabs(cn.time - target_time) <= 1e-9) {
                next = c;
                break;
            }
        }
        if (next < 0)
            throw TreeMismatch("discretized image leaves the tree at jump " + std::to_string(k + 1));
        node = next;
        holdings.push_back(holdings.back() + plan.buy[node] - plan.sell[node]);
        const double lstep = std::fabs(std::log(cross.values[k]) - std::log(prev_value));
        rep.max_overshoot = std::max(rep.max_overshoot, lstep - hedge.epsilon);
        rep.max_crossing_value = std::max(rep.max_crossing_value, cross.values[k]);
        prev_time = cross.times[k];
        prev_value = cross.values[k];
    }

    // the plan's node-k trade executes at the (k+1)-th real crossing; the
    // resolved tail holding freezes once the image is absorbed
    const double kap = market.kappa;
    double z = rep.static_leg;
    double pos = 0.0;
    for (std::size_t k = 1; k <= cross.count(); ++k) {
        const std::size_t idx = std::min(k - 1, holdings.size() - 1);
        const double target = holdings[idx];
        if (target == pos) continue;
        const double price = cross.values[k - 1];
        const double size = std::fabs(target - pos);
        if (target > pos) {
            rep.log.push_back(TradeRecord{cross.times[k - 1], size, price, +1});
            z -= (1.0 + kap) * price * size;
        } else {
            rep.log.push_back(TradeRecord{cross.times[k - 1], size, price, -1});
            z += (1.0 - kap) * price * size;
        }
        pos = target;
    }
    z += (pos - kap * std::fabs(pos)) * path.terminal();
    rep.z = z;
    return rep;
}

McStats monte_carlo_verify(const HedgePlan& plan, const EventTree& tree,
                           const SamplerSpec& sampler, std::size_t n_paths,
                           const MarketSpec& market, const PayoffSpec& payoff, double epsilon,
                           std::uint64_t seed) {
    const LiftedHedge hedge = lift(plan, tree, epsilon, tree.config.i_max);
    const double L = payoff.lipschitz_L;
    const std::size_t n_opts = market.statics.size();
    // static option positions: c_1..c_{N-1} enter the level term, c_N the
    // quadratic comparison term
    double c_sum = 0.0;
    for (std::size_t i = 1; i + 1 < plan.statics.size(); ++i) c_sum += plan.statics[i];
    const double c_last = plan.statics.size() > 1 ? plan.statics.back() : 0.0;

    const double lvl_term = std::exp(2.0 * epsilon) + epsilon - 1.0;
    const double q_term = std::exp(epsilon) - 1.0;

    McStats stats;
    stats.n_total = n_paths;
    stats.min_margin = kInf;

    const FbmSampler* fbm = nullptr;
    FbmSampler fbm_storage = sampler.kind == SamplerSpec::Kind::ExpFbm
                                 ? FbmSampler(sampler.hurst, sampler.sigma, sampler.n,
                                              sampler.horizon)
                                 : FbmSampler(0.5, 0.0, 2, 1.0);
    if (sampler.kind == SamplerSpec::Kind::ExpFbm) fbm = &fbm_storage;

    for (std::size_t i = 0; i < n_paths; ++i) {
        const std::uint64_t s = mix_seed(seed, i);
        const SampledPath path = fbm ? fbm->draw(s)
                                     : sample_gbm(sampler.mu, sampler.sigma, sampler.n,
                                                  sampler.horizon, s);
        const CrossingDecomposition cross = log_crossing_times(path, epsilon);
        if (cross.count() > tree.config.max_jumps) {
            ++stats.n_excluded_depth;
            continue;
        }
        ExecutionReport rep;
        try {
            rep = execute(hedge, path, market);
        } catch (const NoGridElementBelow&) {
            ++stats.n_excluded_grid;
            continue;
        }
        const double g = evaluate(payoff, path);
        const double sup = kern::max_val(path.values.data(), path.values.size());
        double bound = L * (1.0 + c_sum) * lvl_term * sup;
        if (n_opts > 0) {
            const double f_last = evaluate(market.statics.options.back(), path);
            bound += L * c_last * q_term * (2.0 * f_last + sup);
        }
        const double margin = rep.z - (g - bound);
        const double shortfall = g - rep.z;
        ++stats.n_checked;
        stats.shortfalls.push_back(shortfall);
        stats.mean_shortfall += shortfall;
        stats.max_shortfall = std::max(stats.max_shortfall, shortfall);
        stats.min_margin = std::min(stats.min_margin, margin);
        if (margin < -1e-9 * (1.0 + std::fabs(g))) ++stats.violations;
    }
    if (stats.n_checked > 0) stats.mean_shortfall /= static_cast<double>(stats.n_checked);
    stats.excluded_fraction =
        static_cast<double>(stats.n_excluded_depth + stats.n_excluded_grid) /
        static_cast<double>(std::max<std::size_t>(1, n_paths));
    return stats;
}

}  // namespace friction
