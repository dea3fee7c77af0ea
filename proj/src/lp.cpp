#include "friction/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "friction/errors.hpp"
#include "friction/kernels.hpp"

namespace friction {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::size_t LinearProgram::nonzeros() const {
    std::size_t nz = 0;
    for (const auto& row : rows)
        for (double a : row)
            if (a != 0.0) ++nz;
    return nz;
}

void LinearProgram::validate() const {
    const std::size_t n = num_vars();
    if (!lower.empty() && lower.size() != n) throw ConfigInvalid("lp lower bounds size mismatch");
    if (!upper.empty() && upper.size() != n) throw ConfigInvalid("lp upper bounds size mismatch");
    if (relations.size() != rows.size() || rhs.size() != rows.size())
        throw ConfigInvalid("lp row metadata size mismatch");
    for (double c : objective)
        if (std::isnan(c) || std::isinf(c)) throw ConfigInvalid("lp objective has nan/inf");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != n) throw ConfigInvalid("lp row width mismatch");
        for (double a : rows[i])
            if (std::isnan(a) || std::isinf(a)) throw ConfigInvalid("lp row has nan/inf");
        if (std::isnan(rhs[i]) || std::isinf(rhs[i])) throw ConfigInvalid("lp rhs has nan/inf");
    }
    for (std::size_t j = 0; j < lower.size(); ++j)
        if (lower[j] > upper[j]) throw ConfigInvalid("lp has crossing bounds");
}

std::size_t LinearProgram::add_variable(double obj, double lo, double hi) {
    if (lower.empty() && num_vars() > 0) throw ConfigInvalid("mixing bound conventions");
    objective.push_back(obj);
    lower.push_back(lo);
    upper.push_back(hi);
    for (auto& row : rows) row.push_back(0.0);
    return objective.size() - 1;
}

void LinearProgram::add_row(std::vector<double> coeffs, Relation rel, double b) {
    if (coeffs.size() != num_vars()) throw ConfigInvalid("row width mismatch");
    rows.push_back(std::move(coeffs));
    relations.push_back(rel);
    rhs.push_back(b);
}

namespace {

enum class MapKind { Shift, Mirror, Split };

struct VarMap {
    MapKind kind;
    std::size_t col = 0;   // primary internal column
    std::size_t col2 = 0;  // negative part for Split
    double offset = 0.0;   // Shift: lower bound; Mirror: upper bound
};

struct Standardized {
    std::size_t n_user_rows = 0;
    std::size_t n_rows = 0;        // user rows + bound rows
    std::size_t n_struct = 0;      // mapped user cols + slack cols
    std::size_t n_cols = 0;        // + artificials
    std::vector<VarMap> vmap;
    std::vector<double> c;              // internal objective (min sense)
    std::vector<std::vector<double>> a; // internal rows (dense over n_struct)
    std::vector<double> b;
    std::vector<Relation> rel;
    std::vector<bool> flipped;
    std::vector<std::size_t> slack_col;  // per row; npos for Eq rows
    double sense_sign = 1.0;  // +1 min, -1 max

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

Standardized standardize(const LinearProgram& lp) {
    Standardized s;
    s.sense_sign = lp.sense == Sense::Max ? -1.0 : 1.0;
    const std::size_t n = lp.num_vars();
    auto lo = [&](std::size_t j) { return lp.lower.empty() ? 0.0 : lp.lower[j]; };
    auto hi = [&](std::size_t j) { return lp.upper.empty() ? kInf : lp.upper[j]; };

    // map user variables onto nonnegative internal columns
    std::size_t next = 0;
    s.vmap.resize(n);
    std::vector<std::pair<std::size_t, double>> bound_rows;  // (internal col, width)
    for (std::size_t j = 0; j < n; ++j) {
        const double l = lo(j), u = hi(j);
        if (l > -kInf) {
            s.vmap[j] = VarMap{MapKind::Shift, next++, 0, l};
            if (u < kInf) bound_rows.emplace_back(s.vmap[j].col, u - l);
        } else if (u < kInf) {
            s.vmap[j] = VarMap{MapKind::Mirror, next++, 0, u};
        } else {
            s.vmap[j] = VarMap{MapKind::Split, next, next + 1, 0.0};
            next += 2;
        }
    }
    const std::size_t n_mapped = next;

    s.n_user_rows = lp.num_rows();
    s.n_rows = s.n_user_rows + bound_rows.size();

    // internal rows over mapped columns, rhs adjusted for shifts/mirrors
    s.a.assign(s.n_rows, {});
    s.b.assign(s.n_rows, 0.0);
    s.rel.assign(s.n_rows, Relation::Le);
    for (std::size_t i = 0; i < s.n_user_rows; ++i) {
        std::vector<double> row(n_mapped, 0.0);
        double b = lp.rhs[i];
        for (std::size_t j = 0; j < n; ++j) {
            const double aij = lp.rows[i][j];
            if (aij == 0.0) continue;
            const VarMap& vm = s.vmap[j];
            switch (vm.kind) {
                case MapKind::Shift:
                    row[vm.col] += aij;
                    b -= aij * vm.offset;
                    break;
                case MapKind::Mirror:
                    row[vm.col] -= aij;
                    b -= aij * vm.offset;
                    break;
                case MapKind::Split:
                    row[vm.col] += aij;
                    row[vm.col2] -= aij;
                    break;
            }
        }
        s.a[i] = std::move(row);
        s.b[i] = b;
        s.rel[i] = lp.relations[i];
    }
    for (std::size_t k = 0; k < bound_rows.size(); ++k) {
        std::vector<double> row(n_mapped, 0.0);
        row[bound_rows[k].first] = 1.0;
        s.a[s.n_user_rows + k] = std::move(row);
        s.b[s.n_user_rows + k] = bound_rows[k].second;
        s.rel[s.n_user_rows + k] = Relation::Le;
    }

    // internal objective
    s.c.assign(n_mapped, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double cj = s.sense_sign * lp.objective[j];
        const VarMap& vm = s.vmap[j];
        switch (vm.kind) {
            case MapKind::Shift:
                s.c[vm.col] += cj;
                break;
            case MapKind::Mirror:
                s.c[vm.col] -= cj;
                break;
            case MapKind::Split:
                s.c[vm.col] += cj;
                s.c[vm.col2] -= cj;
                break;
        }
    }

    // slack / surplus columns, then flip rows to b >= 0
    std::size_t n_slack = 0;
    for (Relation r : s.rel)
        if (r != Relation::Eq) ++n_slack;
    s.n_struct = n_mapped + n_slack;
    s.flipped.assign(s.n_rows, false);
    s.slack_col.assign(s.n_rows, Standardized::npos);
    std::size_t slack_at = n_mapped;
    for (std::size_t i = 0; i < s.n_rows; ++i) {
        s.a[i].resize(s.n_struct, 0.0);
        if (s.rel[i] == Relation::Le) {
            s.slack_col[i] = slack_at;
            s.a[i][slack_at++] = 1.0;
        } else if (s.rel[i] == Relation::Ge) {
            s.slack_col[i] = slack_at;
            s.a[i][slack_at++] = -1.0;
        }
        if (s.b[i] < 0.0) {
            for (double& v : s.a[i]) v = -v;
            s.b[i] = -s.b[i];
            s.flipped[i] = true;
        }
    }
    s.c.resize(s.n_struct, 0.0);
    s.n_cols = s.n_struct + s.n_rows;  // + one artificial per row
    return s;
}

class Simplex {
public:
    Simplex(const LinearProgram& lp, const LpOptions& opts)
        : lp_(lp), opts_(opts), s_(standardize(lp)) {
        m_ = s_.n_rows;
        width_ = s_.n_cols + 1;  // + rhs
        rhs_col_ = s_.n_cols;
        tab_.assign((m_ + 2) * width_, 0.0);
        cost_row_ = m_;
        phase1_row_ = m_ + 1;
        basis_.assign(m_, 0);
        row_active_.assign(m_, true);

        for (std::size_t i = 0; i < m_; ++i) {
            double* row = tab(i);
            std::copy(s_.a[i].begin(), s_.a[i].end(), row);
            row[s_.n_struct + i] = 1.0;  // artificial
            row[rhs_col_] = s_.b[i];
        }
        // initial basis: the row's slack where it survived flipping as +1,
        // else the artificial
        for (std::size_t i = 0; i < m_; ++i) {
            const std::size_t sc = s_.slack_col[i];
            if (sc != Standardized::npos && s_.a[i][sc] == 1.0) {
                basis_[i] = sc;
            } else {
                basis_[i] = s_.n_struct + i;
                artificial_rows_.push_back(i);
            }
        }
        // phase-2 reduced costs (all basic columns carry zero cost)
        double* cr = tab(cost_row_);
        std::copy(s_.c.begin(), s_.c.end(), cr);
        // phase-1 reduced costs: cost 1 on artificials, canonicalized
        double* dr = tab(phase1_row_);
        for (std::size_t i = 0; i < m_; ++i) dr[s_.n_struct + i] = 1.0;
        for (std::size_t i : artificial_rows_) {
            kern::axpy(dr, tab(i), -1.0, width_);
        }
    }

    LpSolution run() {
        LpSolution sol;
        const long max_iter = opts_.max_iterations > 0
                                  ? opts_.max_iterations
                                  : 200 * static_cast<long>(m_ + s_.n_cols) + 1000;

        if (!iterate(phase1_row_, max_iter, sol)) return sol;  // unbounded cannot happen here
        const double phase1_obj = -tab(phase1_row_)[rhs_col_];
        const double feas_tol = opts_.tol * (1.0 + b_scale());
        if (phase1_obj > feas_tol) {
            sol.status = LpStatus::Infeasible;
            sol.duals = extract_duals(phase1_row_, 1.0);
            sol.objective = s_.sense_sign > 0 ? kInf : -kInf;
            sol.iterations = iterations_;
            return sol;
        }
        drive_out_artificials();
        if (!iterate(cost_row_, max_iter, sol)) {
            finish_unbounded(sol);
            return sol;
        }
        extract_optimal(sol);
        return sol;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    double* tab(std::size_t row) { return tab_.data() + row * width_; }
    const double* tab(std::size_t row) const { return tab_.data() + row * width_; }

    double b_scale() const {
        double m = 0.0;
        for (double b : s_.b) m = std::max(m, std::fabs(b));
        return m;
    }

    bool is_artificial(std::size_t j) const { return j >= s_.n_struct; }

    std::size_t pick_entering(std::size_t price_row, const std::vector<char>& banned) const {
        const double* pr = tab(price_row);
        if (bland_) {
            for (std::size_t j = 0; j < s_.n_struct; ++j)
                if (!banned[j] && pr[j] < -opts_.tol) return j;
            return npos;
        }
        std::size_t best = npos;
        double best_val = -opts_.tol;
        for (std::size_t j = 0; j < s_.n_struct; ++j) {
            if (!banned[j] && pr[j] < best_val) {
                best_val = pr[j];
                best = j;
            }
        }
        return best;
    }

    // two-pass ratio test: find the exact minimum ratio, then pick the
    // stablest pivot within a tolerance window of it (Bland mode instead
    // takes the lowest basic variable index, which guarantees termination)
    std::size_t pick_leaving(std::size_t jc) const {
        // rhs entries carry roundoff around zero at degenerate vertices;
        // clamping them makes degenerate rows tie exactly so the stability
        // preference below can pick a well-sized pivot
        auto clamped = [&](std::size_t i) { return std::max(tab(i)[rhs_col_], 0.0); };
        double best_ratio = kInf;
        for (std::size_t i = 0; i < m_; ++i) {
            if (!row_active_[i]) continue;
            const double piv = tab(i)[jc];
            if (piv <= opts_.pivot_tol) continue;
            best_ratio = std::min(best_ratio, clamped(i) / piv);
        }
        if (best_ratio == kInf) return npos;
        // Bland's termination argument needs exact ties; the clamp above makes
        // degenerate rows tie at exactly zero
        const double window =
            bland_ ? best_ratio : best_ratio + opts_.tol * (1.0 + best_ratio);
        std::size_t best = npos;
        double best_piv = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (!row_active_[i]) continue;
            const double piv = tab(i)[jc];
            if (piv <= opts_.pivot_tol) continue;
            if (clamped(i) / piv > window) continue;
            if (bland_) {
                if (best == npos || basis_[i] < basis_[best]) best = i;
            } else if (piv > best_piv) {
                best_piv = piv;
                best = i;
            }
        }
        return best;
    }

    void pivot(std::size_t r, std::size_t jc) {
        double* prow = tab(r);
        kern::scale(prow, 1.0 / prow[jc], width_);
        prow[jc] = 1.0;
        for (std::size_t i = 0; i < m_ + 2; ++i) {
            if (i == r) continue;
            double* row = tab(i);
            const double f = row[jc];
            if (f == 0.0) continue;
            kern::axpy(row, prow, -f, width_);
            row[jc] = 0.0;
        }
        basis_[r] = jc;
    }

    // returns false when the phase hit an unbounded direction (stored in jc_)
    bool iterate(std::size_t price_row, long max_iter, LpSolution& sol) {
        int degenerate_run = 0;
        std::vector<char> banned(s_.n_struct, 0);
        while (true) {
            if (iterations_ > max_iter)
                throw NumericalBreakdown("simplex iteration limit (" + std::to_string(max_iter) +
                                         ") reached");
            const std::size_t jc = pick_entering(price_row, banned);
            if (jc == npos) return true;
            const std::size_t r = pick_leaving(jc);
            if (r == npos) {
                // phase 1 is bounded below by zero, and a noise-level descent
                // column (split free variables leave exact negated copies in
                // the tableau) is not a ray either: retire the column
                if (price_row == phase1_row_ || tab(price_row)[jc] >= -1e3 * opts_.tol) {
                    banned[jc] = 1;
                    continue;
                }
                jc_ = jc;
                sol.status = LpStatus::Unbounded;
                return false;
            }
            const double ratio = tab(r)[rhs_col_] / tab(r)[jc];
            ++iterations_;
            pivot(r, jc);
            if (ratio <= opts_.tol) {
                if (++degenerate_run >= opts_.degenerate_threshold && !bland_) {
                    bland_ = true;
                    bland_engaged_ = true;
                }
            } else {
                degenerate_run = 0;
            }
        }
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (!row_active_[i] || !is_artificial(basis_[i])) continue;
            std::size_t enter = npos;
            for (std::size_t j = 0; j < s_.n_struct; ++j) {
                if (std::fabs(tab(i)[j]) > opts_.pivot_tol) {
                    enter = j;
                    break;
                }
            }
            if (enter != npos) {
                ++iterations_;
                pivot(i, enter);
            } else {
                // numerically redundant row; retire it
                row_active_[i] = false;
                double* row = tab(i);
                std::fill(row, row + width_, 0.0);
            }
        }
    }

    std::vector<double> internal_x() const {
        std::vector<double> x(s_.n_cols, 0.0);
        for (std::size_t i = 0; i < m_; ++i)
            if (row_active_[i]) x[basis_[i]] = tab(i)[rhs_col_];
        return x;
    }

    std::vector<double> user_x(const std::vector<double>& xi) const {
        std::vector<double> x(lp_.num_vars(), 0.0);
        for (std::size_t j = 0; j < x.size(); ++j) {
            const VarMap& vm = s_.vmap[j];
            switch (vm.kind) {
                case MapKind::Shift:
                    x[j] = vm.offset + xi[vm.col];
                    break;
                case MapKind::Mirror:
                    x[j] = vm.offset - xi[vm.col];
                    break;
                case MapKind::Split:
                    x[j] = xi[vm.col] - xi[vm.col2];
                    break;
            }
        }
        return x;
    }

    // duals in the user's orientation; cost_sign folds min-conversion back
    std::vector<double> extract_duals(std::size_t price_row, double art_cost) const {
        std::vector<double> y(s_.n_user_rows, 0.0);
        const double* pr = tab(price_row);
        for (std::size_t i = 0; i < s_.n_user_rows; ++i) {
            if (!row_active_[i]) continue;
            double yi = art_cost - pr[s_.n_struct + i];
            if (s_.flipped[i]) yi = -yi;
            y[i] = s_.sense_sign * yi;
        }
        return y;
    }

    void extract_optimal(LpSolution& sol) {
        sol.status = LpStatus::Optimal;
        sol.x = user_x(internal_x());
        sol.objective = 0.0;
        for (std::size_t j = 0; j < lp_.num_vars(); ++j)
            sol.objective += lp_.objective[j] * sol.x[j];
        sol.duals = extract_duals(cost_row_, 0.0);
        sol.reduced_costs.assign(lp_.num_vars(), 0.0);
        for (std::size_t j = 0; j < lp_.num_vars(); ++j) {
            double z = lp_.objective[j];
            for (std::size_t i = 0; i < s_.n_user_rows; ++i)
                if (lp_.rows[i][j] != 0.0) z -= sol.duals[i] * lp_.rows[i][j];
            sol.reduced_costs[j] = z;
        }
        sol.iterations = iterations_;
        sol.bland_engaged = bland_engaged_;
    }

    void finish_unbounded(LpSolution& sol) {
        std::vector<double> d(s_.n_cols, 0.0);
        d[jc_] = 1.0;
        for (std::size_t i = 0; i < m_; ++i)
            if (row_active_[i]) d[basis_[i]] = -tab(i)[jc_];
        // directions: shifts drop, mirrors negate
        sol.ray.assign(lp_.num_vars(), 0.0);
        for (std::size_t j = 0; j < sol.ray.size(); ++j) {
            const VarMap& vm = s_.vmap[j];
            switch (vm.kind) {
                case MapKind::Shift:
                    sol.ray[j] = d[vm.col];
                    break;
                case MapKind::Mirror:
                    sol.ray[j] = -d[vm.col];
                    break;
                case MapKind::Split:
                    sol.ray[j] = d[vm.col] - d[vm.col2];
                    break;
            }
        }
        sol.objective = lp_.sense == Sense::Max ? kInf : -kInf;
        sol.iterations = iterations_;
        sol.bland_engaged = bland_engaged_;
    }

    const LinearProgram& lp_;
    LpOptions opts_;
    Standardized s_;
    std::size_t m_ = 0, width_ = 0, rhs_col_ = 0, cost_row_ = 0, phase1_row_ = 0;
    std::vector<double> tab_;
    std::vector<std::size_t> basis_;
    std::vector<bool> row_active_;
    std::vector<std::size_t> artificial_rows_;
    long iterations_ = 0;
    bool bland_ = false;
    bool bland_engaged_ = false;
    std::size_t jc_ = 0;
};

}  // namespace

LpSolution solve(const LinearProgram& lp, const LpOptions& opts) {
    lp.validate();
    if (lp.nonzeros() > opts.max_nonzeros)
        throw SizeExceeded(std::to_string(lp.nonzeros()) + " nonzeros exceed the limit of " +
                           std::to_string(opts.max_nonzeros));
    Simplex simplex(lp, opts);
    return simplex.run();
}

LpSolution solve(const LinearProgram& lp, double tol) {
    LpOptions opts;
    opts.tol = tol;
    return solve(lp, opts);
}

bool verify_certificates(const LinearProgram& lp, const LpSolution& sol, double tol) {
    if (sol.status != LpStatus::Optimal) return false;
    const std::size_t n = lp.num_vars();
    const std::size_t m = lp.num_rows();
    if (sol.x.size() != n || sol.duals.size() != m) return false;

    auto lo = [&](std::size_t j) { return lp.lower.empty() ? 0.0 : lp.lower[j]; };
    auto hi = [&](std::size_t j) { return lp.upper.empty() ? kInf : lp.upper[j]; };
    const double sign = lp.sense == Sense::Max ? -1.0 : 1.0;

    // primal feasibility and complementary slackness
    for (std::size_t i = 0; i < m; ++i) {
        double act = 0.0, scale = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            act += lp.rows[i][j] * sol.x[j];
            scale += std::fabs(lp.rows[i][j] * sol.x[j]);
        }
        const double ftol = tol * (1.0 + std::fabs(lp.rhs[i]) + scale);
        const double slack = act - lp.rhs[i];
        switch (lp.relations[i]) {
            case Relation::Le:
                if (slack > ftol) return false;
                break;
            case Relation::Ge:
                if (slack < -ftol) return false;
                break;
            case Relation::Eq:
                if (std::fabs(slack) > ftol) return false;
                break;
        }
        const double y_min = sign * sol.duals[i];
        if (lp.relations[i] == Relation::Le && y_min > tol * (1.0 + std::fabs(y_min))) return false;
        if (lp.relations[i] == Relation::Ge && y_min < -tol * (1.0 + std::fabs(y_min))) return false;
        if (std::fabs(y_min * slack) > tol * (1.0 + std::fabs(y_min)) * (1.0 + std::fabs(lp.rhs[i])))
            return false;
    }

    // bounds, reduced costs and the duality gap
    double pobj_min = 0.0;
    for (std::size_t j = 0; j < n; ++j) pobj_min += sign * lp.objective[j] * sol.x[j];
    double dobj_min = 0.0;
    for (std::size_t i = 0; i < m; ++i) dobj_min += sign * sol.duals[i] * lp.rhs[i];

    for (std::size_t j = 0; j < n; ++j) {
        const double l = lo(j), u = hi(j);
        const double btol = tol * (1.0 + std::fabs(sol.x[j]));
        if (sol.x[j] < l - btol || sol.x[j] > u + btol) return false;

        double z = sign * lp.objective[j];
        double zscale = std::fabs(z);
        for (std::size_t i = 0; i < m; ++i) {
            const double t = sign * sol.duals[i] * lp.rows[i][j];
            z -= t;
            zscale += std::fabs(t);
        }
        const double ztol = tol * (1.0 + zscale);
        const bool at_lower = l > -kInf && sol.x[j] - l <= btol;
        const bool at_upper = u < kInf && u - sol.x[j] <= btol;
        if (!at_lower && !at_upper && std::fabs(z) > ztol) return false;
        if (at_lower && !at_upper && z < -ztol) return false;
        if (at_upper && !at_lower && z > ztol) return false;
        if (z > ztol) {
            if (l <= -kInf) return false;
            dobj_min += z * l;
        } else if (z < -ztol) {
            if (u >= kInf) return false;
            dobj_min += z * u;
        }
    }
    if (std::fabs(pobj_min - dobj_min) > tol * (1.0 + std::fabs(pobj_min))) return false;
    if (std::fabs(sign * sol.objective - pobj_min) > tol * (1.0 + std::fabs(pobj_min))) return false;
    return true;
}

void write_lp_format(const LinearProgram& lp, std::ostream& os) {
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.12f", v);
        return std::string(buf);
    };
    os << "\\ dense lp dump; columns x0..x" << (lp.num_vars() - 1) << " in declaration order\n";
    os << (lp.sense == Sense::Max ? "Maximize\n" : "Minimize\n");
    os << " obj:";
    bool first = true;
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
        const double c = lp.objective[j];
        if (c == 0.0) continue;
        os << (first ? " " : (c < 0 ? " - " : " + ")) << num(first ? c : std::fabs(c)) << " x" << j;
        first = false;
    }
    if (first) os << " 0 x0";
    os << "\nSubject To\n";
    for (std::size_t i = 0; i < lp.num_rows(); ++i) {
        os << " c" << i << ":";
        bool f = true;
        for (std::size_t j = 0; j < lp.num_vars(); ++j) {
            const double a = lp.rows[i][j];
            if (a == 0.0) continue;
            os << (f ? " " : (a < 0 ? " - " : " + ")) << num(f ? a : std::fabs(a)) << " x" << j;
            f = false;
        }
        if (f) os << " 0 x0";
        const char* rel = lp.relations[i] == Relation::Le   ? "<="
                          : lp.relations[i] == Relation::Ge ? ">="
                                                            : "=";
        os << " " << rel << " " << num(lp.rhs[i]) << "\n";
    }
    os << "Bounds\n";
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
        const double l = lp.lower.empty() ? 0.0 : lp.lower[j];
        const double u = lp.upper.empty() ? kInf : lp.upper[j];
        if (l <= -kInf && u >= kInf) {
            os << " x" << j << " free\n";
        } else if (u >= kInf) {
            os << " " << num(l) << " <= x" << j << "\n";
        } else if (l <= -kInf) {
            os << " x" << j << " <= " << num(u) << "\n";
        } else {
            os << " " << num(l) << " <= x" << j << " <= " << num(u) << "\n";
        }
    }
    os << "End\n";
}

namespace {
class BuiltinBackend final : public LpBackend {
public:
    LpSolution solve(const LinearProgram& lp, const LpOptions& opts) override {
        return friction::solve(lp, opts);
    }
    const char* name() const override { return "builtin-simplex"; }
};
}  // namespace

std::unique_ptr<LpBackend> make_builtin_backend() { return std::make_unique<BuiltinBackend>(); }

}  // namespace friction
