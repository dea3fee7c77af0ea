#pragma once

#include <stdexcept>
#include <string>

namespace friction {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Configuration or construction-time validation failure.
struct ConfigInvalid : Error {
    explicit ConfigInvalid(const std::string& msg) : Error("config invalid: " + msg) {}
};

// snap_below: the requested gap is at or below the smallest represented grid
// element; signals that the grid truncation index is too small.
struct NoGridElementBelow : Error {
    explicit NoGridElementBelow(const std::string& msg) : Error("no grid element below: " + msg) {}
};

// Dense covariance factorization lost positive definiteness.
struct FactorizationFailure : Error {
    explicit FactorizationFailure(const std::string& msg) : Error("factorization failure: " + msg) {}
};

// Tree construction would exceed the configured node budget.
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& msg) : Error("node budget exceeded: " + msg) {}
};

// LP exceeds the desk-scale size guard.
struct SizeExceeded : Error {
    explicit SizeExceeded(const std::string& msg) : Error("lp size exceeded: " + msg) {}
};

// Pivot breakdown, iteration limit, or a failed post-solve recheck.
struct NumericalBreakdown : Error {
    explicit NumericalBreakdown(const std::string& msg) : Error("numerical breakdown: " + msg) {}
};

struct KappaOutOfRange : Error {
    explicit KappaOutOfRange(const std::string& msg) : Error("kappa out of range: " + msg) {}
};

// No quadratic growth constant exists below the probe limit.
struct NoCqFound : Error {
    explicit NoCqFound(const std::string& msg) : Error("no growth constant found: " + msg) {}
};

// The dual program is infeasible: no consistent price system exists on the
// tree at the given prices (equivalently, the primal admits a money pump).
struct NoPriceSystem : Error {
    explicit NoPriceSystem(const std::string& msg) : Error("no price system: " + msg) {}
};

// A lifted hedge was paired with a tree it was not built on.
struct TreeMismatch : Error {
    explicit TreeMismatch(const std::string& msg) : Error("tree mismatch: " + msg) {}
};

// Trade times do not align with the path's jump structure.
struct MisalignedPlan : Error {
    explicit MisalignedPlan(const std::string& msg) : Error("misaligned plan: " + msg) {}
};

}  // namespace friction
