#include "helpers.hpp"

#include <algorithm>
#include <limits>

namespace testutil {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBox = 1e7;  // artificial box marking unbounded directions
constexpr double kTol = 1e-7;

struct Plane {
    std::vector<double> a;
    double b;
};

bool solve_square(std::vector<std::vector<double>> m, std::vector<double> rhs,
                  std::vector<double>& out) {
    const std::size_t n = rhs.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
        if (std::fabs(m[piv][c]) < 1e-12) return false;
        std::swap(m[piv], m[c]);
        std::swap(rhs[piv], rhs[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
            rhs[r] -= f * rhs[c];
        }
    }
    out.resize(n);
    for (std::size_t c = 0; c < n; ++c) out[c] = rhs[c] / m[c][c];
    return true;
}

}  // namespace

VertexOracle vertex_enumerate(const friction::LinearProgram& lp) {
    const std::size_t n = lp.num_vars();
    std::vector<Plane> planes;
    for (std::size_t i = 0; i < lp.num_rows(); ++i) planes.push_back({lp.rows[i], lp.rhs[i]});
    auto lo = [&](std::size_t j) { return lp.lower.empty() ? 0.0 : lp.lower[j]; };
    auto hi = [&](std::size_t j) { return lp.upper.empty() ? kInf : lp.upper[j]; };
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        planes.push_back({e, lo(j) > -kInf ? lo(j) : -kBox});
        planes.push_back({e, hi(j) < kInf ? hi(j) : kBox});
    }

    auto feasible = [&](const std::vector<double>& x) {
        for (std::size_t i = 0; i < lp.num_rows(); ++i) {
            double act = 0.0;
            for (std::size_t j = 0; j < n; ++j) act += lp.rows[i][j] * x[j];
            const double s = act - lp.rhs[i];
            if (lp.relations[i] == friction::Relation::Le && s > kTol) return false;
            if (lp.relations[i] == friction::Relation::Ge && s < -kTol) return false;
            if (lp.relations[i] == friction::Relation::Eq && std::fabs(s) > kTol) return false;
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double l = lo(j) > -kInf ? lo(j) : -kBox;
            const double u = hi(j) < kInf ? hi(j) : kBox;
            if (x[j] < l - kTol || x[j] > u + kTol) return false;
        }
        return true;
    };

    VertexOracle out;
    const double sense = lp.sense == friction::Sense::Max ? 1.0 : -1.0;
    double best = -kInf;
    bool found = false, on_box = false;

    std::vector<std::size_t> idx(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == n) {
            std::vector<std::vector<double>> m(n);
            std::vector<double> rhs(n);
            for (std::size_t k = 0; k < n; ++k) {
                m[k] = planes[idx[k]].a;
                rhs[k] = planes[idx[k]].b;
            }
            std::vector<double> x;
            if (!solve_square(m, rhs, x) || !feasible(x)) return;
            double obj = 0.0;
            for (std::size_t j = 0; j < n; ++j) obj += lp.objective[j] * x[j];
            const double v = sense * obj;
            if (!found || v > best + 1e-12) {
                best = v;
                found = true;
                on_box = false;
                for (std::size_t j = 0; j < n; ++j)
                    if (std::fabs(std::fabs(x[j]) - kBox) < 1.0) on_box = true;
            } else if (std::fabs(v - best) <= 1e-12) {
                // an equally good interior vertex demotes the box flag
                bool this_on_box = false;
                for (std::size_t j = 0; j < n; ++j)
                    if (std::fabs(std::fabs(x[j]) - kBox) < 1.0) this_on_box = true;
                on_box = on_box && this_on_box;
            }
            return;
        }
        for (std::size_t i = start; i < planes.size(); ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);

    if (!found) {
        out.outcome = VertexOracle::Outcome::Infeasible;
        return out;
    }
    if (on_box) {
        out.outcome = VertexOracle::Outcome::Unbounded;
        return out;
    }
    out.outcome = VertexOracle::Outcome::Optimal;
    out.value = lp.sense == friction::Sense::Max ? best : -best;
    return out;
}

}  // namespace testutil
