#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "friction/lp.hpp"
#include "friction/paths.hpp"
#include "friction/payoffs.hpp"
#include "friction/pricing.hpp"

namespace testutil {

// uniform n-point sample of f on [0, horizon]
inline friction::SampledPath sample_function(const std::function<double(double)>& f,
                                             std::size_t n, double horizon = 1.0) {
    friction::SampledPath p;
    p.times.resize(n);
    p.values.resize(n);
    const double dt = horizon / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        p.times[i] = static_cast<double>(i) * dt;
        p.values[i] = f(p.times[i]);
    }
    p.times.back() = horizon;
    p.values.back() = f(horizon);
    return p;
}

inline friction::JumpPath jump_path(double horizon, std::vector<double> times,
                                    std::vector<double> levels) {
    friction::JumpPath p;
    p.horizon = horizon;
    p.jump_times = std::move(times);
    p.levels = std::move(levels);
    return p;
}

inline friction::MarketSpec market_cash_only(double kappa) {
    friction::MarketSpec m;
    m.kappa = kappa;
    return m;
}

inline friction::MarketSpec market_with_quadratic(double kappa, double quad_price = 2.0) {
    friction::MarketSpec m;
    m.kappa = kappa;
    m.statics.options.push_back(friction::payoffs::quadratic());
    m.statics.prices.push_back(quad_price);
    return m;
}

// brute-force LP oracle for <= 3 variables: enumerate all basic points from
// row/bound intersections, keep the feasible ones, take the best objective
struct VertexOracle {
    enum class Outcome { Optimal, Infeasible, Unbounded };
    Outcome outcome = Outcome::Infeasible;
    double value = 0.0;
};

VertexOracle vertex_enumerate(const friction::LinearProgram& lp);

}  // namespace testutil
