#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "friction/paths.hpp"

namespace friction {

enum class PayoffKind {
    LookbackMax,      // sup of the path
    AsianAverage,     // time average
    EuropeanCall,     // (S_T - strike)+
    EuropeanPut,      // (strike - S_T)+
    QuadraticVanilla, // S_T^2
    AlphaTail,        // ||S||/K + ||S|| on {||S|| >= K}
    Truncated,        // min(base, cap)
    CustomVanilla,    // q(S_T)
};

struct PayoffSpec {
    PayoffKind kind = PayoffKind::LookbackMax;
    double strike = 0.0;      // call / put
    double tail_level = 1.0;  // AlphaTail threshold K
    double cap = 0.0;         // Truncated
    std::shared_ptr<const PayoffSpec> base;   // Truncated
    std::function<double(double)> vanilla;    // CustomVanilla
    double lipschitz_L = 1.0;  // sup-norm Lipschitz constant
    bool bounded = false;
    bool path_dependent = true;
    std::string name;
};

namespace payoffs {
PayoffSpec lookback(double lipschitz_L = 1.0);
PayoffSpec asian(double lipschitz_L = 1.0);
PayoffSpec call(double strike, double lipschitz_L = 1.0);
PayoffSpec put(double strike);
PayoffSpec terminal();  // the underlying itself, S_T
PayoffSpec quadratic(double lipschitz_L = 1.0);
PayoffSpec alpha_tail(double level);
PayoffSpec custom_vanilla(std::function<double(double)> q, double lipschitz_L,
                          std::string name);
// Capped claim min(base, L*K + base(0)); the value at the zero path can be
// overridden where the base payoff leaves it undefined.
PayoffSpec truncate(const PayoffSpec& base, double level,
                    std::optional<double> value_at_zero = {});
}  // namespace payoffs

double evaluate(const PayoffSpec& payoff, const JumpPath& path);
double evaluate(const PayoffSpec& payoff, const SampledPath& path);

// Tail claim on a given running sup: m/K + m on {m >= K} (boundary inclusive).
double alpha_tail_value(double sup_norm, double level);

double truncate_quadratic(double fN_value, double lambda, double terminal);

// Payoff of the identically-zero path (used for truncation caps).
double value_at_zero(const PayoffSpec& payoff);

// Smallest tabulated c > 1 with q(x) >= x^2/c for all x >= c on a dense probe
// grid up to x_max. Canonical result for q(x) = x^2 is 2. Throws NoCqFound
// when the quadratic growth check fails below x_max.
double quadratic_growth_constant(const PayoffSpec& q, double x_max = 1e6);

struct LipschitzReport {
    bool applicable = true;
    bool pass = false;
    double declared_L = 0.0;
    double worst_ratio = 0.0;
    double worst_lhs = 0.0;   // |G(a) - G(b)| at the worst pair
    double worst_rhs = 0.0;   // bound value at the worst pair
    std::string note;
};

LipschitzReport check_lipschitz_supnorm(const PayoffSpec& payoff, int trials,
                                        std::uint64_t seed);
LipschitzReport check_lipschitz_timeshift(const PayoffSpec& payoff, int trials,
                                          std::uint64_t seed);

// Static option family f_1..f_N with ask prices; index 0 (cash, price 1) is
// implicit. When nonempty, the last option must be a convex vanilla claim
// with quadratic growth; earlier path-dependent options must be bounded.
struct StaticOptionSet {
    std::vector<PayoffSpec> options;
    std::vector<double> prices;

    std::size_t size() const { return options.size(); }
    bool empty() const { return options.empty(); }
    double last_price() const;
    double growth_constant() const;  // c_q of the final vanilla claim
    void validate() const;
};

}  // namespace friction
