#include "friction/payoffs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "friction/errors.hpp"
#include "friction/kernels.hpp"

namespace friction {

namespace payoffs {

PayoffSpec lookback(double lipschitz_L) {
    PayoffSpec p;
    p.kind = PayoffKind::LookbackMax;
    p.lipschitz_L = lipschitz_L;
    p.path_dependent = true;
    p.name = "lookback_max";
    return p;
}

PayoffSpec asian(double lipschitz_L) {
    PayoffSpec p;
    p.kind = PayoffKind::AsianAverage;
    p.lipschitz_L = lipschitz_L;
    p.path_dependent = true;
    p.name = "asian_average";
    return p;
}

PayoffSpec call(double strike, double lipschitz_L) {
    PayoffSpec p;
    p.kind = PayoffKind::EuropeanCall;
    p.strike = strike;
    p.lipschitz_L = lipschitz_L;
    p.path_dependent = false;
    p.name = "call_" + std::to_string(strike);
    return p;
}

PayoffSpec put(double strike) {
    PayoffSpec p;
    p.kind = PayoffKind::EuropeanPut;
    p.strike = strike;
    p.lipschitz_L = 1.0;
    p.bounded = true;  // payoff <= strike on positive paths
    p.path_dependent = false;
    p.name = "put_" + std::to_string(strike);
    return p;
}

PayoffSpec terminal() {
    PayoffSpec p = call(0.0);
    p.name = "terminal";
    return p;
}

PayoffSpec quadratic(double lipschitz_L) {
    // |x^2 - y^2| = |x-y|(x+y) <= |x-y|(1 + x + y), so L = 1 is valid for the
    // vanilla-growth form of the regularity assumption.
    PayoffSpec p;
    p.kind = PayoffKind::QuadraticVanilla;
    p.lipschitz_L = lipschitz_L;
    p.path_dependent = false;
    p.name = "quadratic";
    return p;
}

PayoffSpec alpha_tail(double level) {
    if (!(level > 0.0)) throw ConfigInvalid("alpha_tail level must be positive");
    PayoffSpec p;
    p.kind = PayoffKind::AlphaTail;
    p.tail_level = level;
    p.lipschitz_L = 1.0 / level + 1.0;
    p.path_dependent = true;
    p.name = "alpha_tail_" + std::to_string(level);
    return p;
}

PayoffSpec custom_vanilla(std::function<double(double)> q, double lipschitz_L,
                          std::string name) {
    PayoffSpec p;
    p.kind = PayoffKind::CustomVanilla;
    p.vanilla = std::move(q);
    p.lipschitz_L = lipschitz_L;
    p.path_dependent = false;
    p.name = std::move(name);
    return p;
}

PayoffSpec truncate(const PayoffSpec& base, double level, std::optional<double> value_at_zero_opt) {
    const double g0 = value_at_zero_opt ? *value_at_zero_opt : value_at_zero(base);
    PayoffSpec p;
    p.kind = PayoffKind::Truncated;
    p.base = std::make_shared<PayoffSpec>(base);
    p.cap = base.lipschitz_L * level + g0;
    p.lipschitz_L = base.lipschitz_L;
    p.bounded = true;
    p.path_dependent = base.path_dependent;
    p.name = base.name + "_capped";
    return p;
}

}  // namespace payoffs

namespace {

double path_max(const JumpPath& p) {
    return kern::max_val(p.levels.data(), p.levels.size());
}

double path_max(const SampledPath& p) {
    return kern::max_val(p.values.data(), p.values.size());
}

double path_average(const JumpPath& p) {
    // exact time average of the piecewise-constant path
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t j = 0; j < p.jump_times.size(); ++j) {
        acc += p.levels[j] * (p.jump_times[j] - prev);
        prev = p.jump_times[j];
    }
    acc += p.levels.back() * (p.horizon - prev);
    return acc / p.horizon;
}

double path_average(const SampledPath& p) {
    // trapezoidal rule
    double acc = 0.0;
    for (std::size_t i = 1; i < p.times.size(); ++i)
        acc += 0.5 * (p.values[i] + p.values[i - 1]) * (p.times[i] - p.times[i - 1]);
    return acc / p.horizon();
}

template <typename Path>
double evaluate_impl(const PayoffSpec& g, const Path& path) {
    switch (g.kind) {
        case PayoffKind::LookbackMax:
            return path_max(path);
        case PayoffKind::AsianAverage:
            return path_average(path);
        case PayoffKind::EuropeanCall:
            return std::max(path.terminal() - g.strike, 0.0);
        case PayoffKind::EuropeanPut:
            return std::max(g.strike - path.terminal(), 0.0);
        case PayoffKind::QuadraticVanilla: {
            const double s = path.terminal();
            return s * s;
        }
        case PayoffKind::AlphaTail:
            return alpha_tail_value(path_max(path), g.tail_level);
        case PayoffKind::Truncated:
            return std::min(evaluate_impl(*g.base, path), g.cap);
        case PayoffKind::CustomVanilla:
            return g.vanilla(path.terminal());
    }
    throw ConfigInvalid("unknown payoff kind");
}

}  // namespace

double evaluate(const PayoffSpec& payoff, const JumpPath& path) {
    return evaluate_impl(payoff, path);
}

double evaluate(const PayoffSpec& payoff, const SampledPath& path) {
    return evaluate_impl(payoff, path);
}

double alpha_tail_value(double sup_norm, double level) {
    double v = sup_norm / level;
    if (sup_norm >= level) v += sup_norm;
    return v;
}

double truncate_quadratic(double fN_value, double lambda, double terminal) {
    if (!(lambda > 1.0)) throw ConfigInvalid("truncation lambda must exceed 1");
    return std::min(fN_value, lambda * (terminal + 1.0));
}

double value_at_zero(const PayoffSpec& payoff) {
    switch (payoff.kind) {
        case PayoffKind::LookbackMax:
        case PayoffKind::AsianAverage:
        case PayoffKind::QuadraticVanilla:
            return 0.0;
        case PayoffKind::EuropeanCall:
            return std::max(-payoff.strike, 0.0);
        case PayoffKind::EuropeanPut:
            return payoff.strike;
        case PayoffKind::AlphaTail:
            return 0.0;
        case PayoffKind::Truncated:
            return std::min(value_at_zero(*payoff.base), payoff.cap);
        case PayoffKind::CustomVanilla:
            return payoff.vanilla(0.0);
    }
    throw ConfigInvalid("unknown payoff kind");
}

double quadratic_growth_constant(const PayoffSpec& q, double x_max) {
    std::function<double(double)> fn;
    switch (q.kind) {
        case PayoffKind::QuadraticVanilla:
            fn = [](double x) { return x * x; };
            break;
        case PayoffKind::CustomVanilla:
            fn = q.vanilla;
            break;
        case PayoffKind::EuropeanCall:
            fn = [k = q.strike](double x) { return std::max(x - k, 0.0); };
            break;
        case PayoffKind::EuropeanPut:
            fn = [k = q.strike](double x) { return std::max(k - x, 0.0); };
            break;
        default:
            throw ConfigInvalid("growth constant defined for vanilla claims only");
    }
    // tabulated candidates: powers of two, kept well below the probe limit so
    // the probe grid is never vacuous
    for (double c = 2.0; c <= x_max / 4.0; c *= 2.0) {
        bool ok = true;
        const int probes = 4096;
        for (int i = 0; i <= probes; ++i) {
            const double x = c + (x_max - c) * static_cast<double>(i) / probes;
            if (fn(x) < x * x / c) {
                ok = false;
                break;
            }
        }
        if (ok) return c;
    }
    throw NoCqFound(q.name + " does not dominate x^2/c for any tabulated c below " +
                    std::to_string(x_max));
}

namespace {

JumpPath constant_jump_path(double level, double horizon = 1.0) {
    JumpPath p;
    p.horizon = horizon;
    p.levels = {level};
    return p;
}

JumpPath random_jump_path(std::mt19937_64& gen, double horizon = 1.0) {
    std::uniform_int_distribution<int> njumps(0, 5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int n = njumps(gen);
    std::vector<double> times;
    for (int i = 0; i < n; ++i) times.push_back(horizon * (0.05 + 0.9 * u(gen)));
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    JumpPath p;
    p.horizon = horizon;
    p.jump_times = times;
    double level = std::exp(0.8 * (u(gen) - 0.5));
    p.levels.push_back(level);
    for (std::size_t i = 0; i < times.size(); ++i) {
        double next = level * std::exp(0.6 * (u(gen) - 0.5));
        if (next == level) next = level * 1.01;
        p.levels.push_back(next);
        level = next;
    }
    return p;
}

}  // namespace

LipschitzReport check_lipschitz_supnorm(const PayoffSpec& payoff, int trials,
                                        std::uint64_t seed) {
    LipschitzReport rep;
    rep.declared_L = payoff.lipschitz_L;
    std::mt19937_64 gen(seed);

    // Vanilla claims with superlinear growth satisfy the growth form
    // |q(x)-q(y)| <= L |x-y| (1 + q(x)/x + q(y)/y); everything else the plain
    // sup-norm form |G(a)-G(b)| <= L ||a-b||.
    const bool growth_form =
        payoff.kind == PayoffKind::QuadraticVanilla || payoff.kind == PayoffKind::CustomVanilla;

    auto probe = [&](const JumpPath& a, const JumpPath& b) {
        double unit_bound;  // bound at L = 1
        if (growth_form) {
            const double x = a.terminal(), y = b.terminal();
            const double qx = evaluate(payoff, a), qy = evaluate(payoff, b);
            unit_bound = std::fabs(x - y) * (1.0 + qx / x + qy / y);
        } else {
            unit_bound = sup_norm_distance(a, b);
        }
        if (unit_bound < 1e-12) return;
        const double lhs = std::fabs(evaluate(payoff, a) - evaluate(payoff, b));
        const double ratio = lhs / unit_bound;
        if (ratio > rep.worst_ratio) {
            rep.worst_ratio = ratio;
            rep.worst_lhs = lhs;
            rep.worst_rhs = payoff.lipschitz_L * unit_bound;
        }
    };

    // deterministic probes: constant paths at separated levels
    probe(constant_jump_path(1.0), constant_jump_path(2.0));
    probe(constant_jump_path(1.0), constant_jump_path(1.5));
    probe(constant_jump_path(0.5), constant_jump_path(3.0));
    for (int t = 0; t < trials; ++t) probe(random_jump_path(gen), random_jump_path(gen));

    rep.pass = rep.worst_ratio <= payoff.lipschitz_L * (1.0 + 1e-9);
    return rep;
}

LipschitzReport check_lipschitz_timeshift(const PayoffSpec& payoff, int trials,
                                          std::uint64_t seed) {
    LipschitzReport rep;
    rep.declared_L = payoff.lipschitz_L;
    if (!payoff.path_dependent) {
        rep.applicable = false;
        rep.pass = true;
        rep.note = "skipped: payoff is not path dependent";
        return rep;
    }
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        JumpPath a = random_jump_path(gen);
        if (a.jump_times.empty()) continue;
        // same levels, perturbed jump times (order preserved, kept interior)
        JumpPath b = a;
        for (std::size_t j = 0; j < b.jump_times.size(); ++j) {
            const double lo = (j == 0) ? 0.0 : b.jump_times[j - 1];
            const double hi = (j + 1 < b.jump_times.size()) ? a.jump_times[j + 1] : a.horizon;
            const double span = hi - lo;
            b.jump_times[j] = lo + span * (0.1 + 0.8 * u(gen));
        }
        double shift_sum = 0.0;
        double pa = 0.0, pb = 0.0;
        for (std::size_t j = 0; j < a.jump_times.size(); ++j) {
            shift_sum += std::fabs((a.jump_times[j] - pa) - (b.jump_times[j] - pb));
            pa = a.jump_times[j];
            pb = b.jump_times[j];
        }
        const double supn = kern::max_val(a.levels.data(), a.levels.size());
        const double bound = supn * shift_sum;
        if (bound < 1e-12) continue;
        const double lhs = std::fabs(evaluate(payoff, a) - evaluate(payoff, b));
        const double ratio = lhs / bound;
        if (ratio > rep.worst_ratio) {
            rep.worst_ratio = ratio;
            rep.worst_lhs = lhs;
            rep.worst_rhs = payoff.lipschitz_L * bound;
        }
    }
    rep.pass = rep.worst_ratio <= payoff.lipschitz_L * (1.0 + 1e-9);
    return rep;
}

double StaticOptionSet::last_price() const {
    if (prices.empty()) throw ConfigInvalid("static option set is empty");
    return prices.back();
}

double StaticOptionSet::growth_constant() const {
    if (options.empty()) throw ConfigInvalid("static option set is empty");
    return quadratic_growth_constant(options.back());
}

void StaticOptionSet::validate() const {
    if (options.size() != prices.size())
        throw ConfigInvalid("static option set needs one price per option");
    if (options.empty()) return;
    quadratic_growth_constant(options.back());  // throws unless quadratic growth holds
    for (std::size_t i = 0; i + 1 < options.size(); ++i) {
        if (options[i].path_dependent && !options[i].bounded)
            throw ConfigInvalid("path-dependent static option '" + options[i].name +
                                "' must be bounded");
    }
}

}  // namespace friction
