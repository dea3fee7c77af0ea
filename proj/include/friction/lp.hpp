#pragma once

#include <iosfwd>
#include <memory>
#include <vector>

namespace friction {

enum class Relation { Le, Eq, Ge };
enum class Sense { Min, Max };
enum class LpStatus { Optimal, Infeasible, Unbounded };

// Dense LP:  optimize objective . x  subject to  rows[i] . x  <relation>  rhs[i]
// and per-variable bounds (+-inf allowed).
struct LinearProgram {
    Sense sense = Sense::Min;
    std::vector<double> objective;
    std::vector<std::vector<double>> rows;
    std::vector<Relation> relations;
    std::vector<double> rhs;
    std::vector<double> lower;  // defaults to 0 when empty
    std::vector<double> upper;  // defaults to +inf when empty

    std::size_t num_vars() const { return objective.size(); }
    std::size_t num_rows() const { return rows.size(); }
    std::size_t nonzeros() const;
    void validate() const;

    std::size_t add_variable(double obj, double lo, double hi);
    void add_row(std::vector<double> coeffs, Relation rel, double b);
};

// Row duals follow the shadow-price convention: duals[i] is the sensitivity of
// the optimal value to rhs[i] in the user's own orientation. Infeasible solves
// carry a Farkas certificate in `duals`; unbounded solves carry a ray in `ray`.
struct LpSolution {
    LpStatus status = LpStatus::Optimal;
    std::vector<double> x;
    double objective = 0.0;
    std::vector<double> duals;
    std::vector<double> reduced_costs;
    std::vector<double> ray;
    long iterations = 0;
    bool bland_engaged = false;
};

struct LpOptions {
    double tol = 1e-9;
    double pivot_tol = 1e-11;
    int degenerate_threshold = 50;  // consecutive degenerate pivots before Bland's rule
    std::size_t max_nonzeros = 50000;
    long max_iterations = 0;  // 0: derived from the problem size
};

LpSolution solve(const LinearProgram& lp, const LpOptions& opts = {});
LpSolution solve(const LinearProgram& lp, double tol);

// Recomputes primal/dual residuals, complementary slackness and the duality
// gap from the original problem data; true iff everything is within tol.
bool verify_certificates(const LinearProgram& lp, const LpSolution& sol, double tol);

// Text dump in LP file format, fixed-point coefficients; columns appear in
// declaration order as x0, x1, ...
void write_lp_format(const LinearProgram& lp, std::ostream& os);

// Pluggable solver interface; the built-in simplex is the reference backend.
class LpBackend {
public:
    virtual ~LpBackend() = default;
    virtual LpSolution solve(const LinearProgram& lp, const LpOptions& opts) = 0;
    virtual const char* name() const = 0;
};

std::unique_ptr<LpBackend> make_builtin_backend();

}  // namespace friction
