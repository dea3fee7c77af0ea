#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace friction {

// Strictly positive price path known at a finite set of sample times.
// times[0] = 0, times.back() = horizon, strictly increasing. Canonical market
// paths start at 1.
struct SampledPath {
    std::vector<double> times;
    std::vector<double> values;

    double horizon() const { return times.back(); }
    double terminal() const { return values.back(); }
    bool canonical() const;
    void validate() const;
};

// Right-continuous piecewise-constant positive path. levels[0] holds on
// [0, jump_times[0]); level j on [jump_times[j-1], jump_times[j]). Jump times
// lie strictly inside (0, horizon) and consecutive levels differ.
struct JumpPath {
    double horizon = 1.0;
    std::vector<double> jump_times;
    std::vector<double> levels;  // jump_times.size() + 1 entries

    double value_at(double t) const;
    double terminal() const { return levels.back(); }
    std::size_t jumps() const { return jump_times.size(); }
    void validate() const;
};

// Truncated dyadic gap grid for the k-th inter-jump time:
//   { i*eps/2^k : 1 <= i <= i_max }  union  { eps/(i*2^k) : 1 <= i <= i_max }.
struct GridSpec {
    double epsilon = 0.1;
    int k = 1;
    int i_max = 64;
};

std::vector<double> grid_elements(const GridSpec& spec);
bool grid_contains(const GridSpec& spec, double value, double tol = 1e-12);

// Largest grid element strictly below delta_t. Throws NoGridElementBelow when
// delta_t does not exceed the smallest represented element (i_max too small).
double snap_below(double delta_t, const GridSpec& spec);

// First-passage decomposition computed on the sample grid: crossing j is the
// first sample index after crossing j-1 whose increment from the previous
// crossing value reaches the threshold. A passage landing exactly on the final
// sample is terminal, not a crossing. The threshold comparison carries a 1e-12
// relative slack so lattice-exact samples register despite log round-off.
struct CrossingDecomposition {
    std::vector<std::size_t> indices;  // sample indices of registered crossings
    std::vector<double> times;
    std::vector<double> values;
    std::size_t terminal_index = 0;

    std::size_t count() const { return indices.size(); }  // K
};

CrossingDecomposition log_crossing_times(const SampledPath& path, double epsilon);
CrossingDecomposition absolute_crossing_times(const SampledPath& path, double delta);

// Grid-snapped discretization: level j is the path value at the j-th log
// crossing; jump time j is the running sum of snapped gaps, each the largest
// grid element strictly below the observed inter-crossing gap. Crossings
// beyond max_jumps are dropped (the image freezes at the max_jumps-th level).
JumpPath discretize(const SampledPath& path, double epsilon, std::size_t max_jumps,
                    int i_max = 64);

// True iff the path starts at 1, every log jump has magnitude epsilon (within
// tol) and every inter-jump gap lies on the truncated grid for its index.
bool is_grid_jump_path(const JumpPath& path, double epsilon, int i_max, double tol);

double sup_norm_distance(const SampledPath& a, const SampledPath& b);
double sup_norm_distance(const JumpPath& a, const JumpPath& b);

// Geometric Brownian path on a uniform n-point grid, S_0 = 1, exact in
// distribution: log-increments are (mu - sigma^2/2) dt + sigma sqrt(dt) Z.
SampledPath sample_gbm(double mu, double sigma, std::size_t n, double horizon,
                       std::uint64_t seed);

// Exponential fractional Brownian path S_t = exp(sigma * B^H_t) via dense
// Cholesky factorization of the fBm covariance (desk scale, n <= 4096).
// No drift correction is applied: at H = 0.5 this matches sample_gbm only up
// to the Ito drift -sigma^2/2 t in log space.
class FbmSampler {
public:
    FbmSampler(double hurst, double sigma, std::size_t n, double horizon);
    SampledPath draw(std::uint64_t seed) const;

    double hurst() const { return hurst_; }
    std::size_t grid_size() const { return n_; }

private:
    double hurst_;
    double sigma_;
    std::size_t n_;
    double horizon_;
    std::vector<double> times_;
    std::vector<double> chol_;  // row-major lower factor, (n-1) x (n-1)
};

SampledPath sample_exp_fbm(double hurst, double sigma, std::size_t n, double horizon,
                           std::uint64_t seed);

struct SamplerSpec {
    enum class Kind { Gbm, ExpFbm };
    Kind kind = Kind::Gbm;
    double mu = 0.0;
    double sigma = 0.2;
    double hurst = 0.5;
    std::size_t n = 1001;
    double horizon = 1.0;
};

SampledPath draw(const SamplerSpec& spec, std::uint64_t seed);

// Deterministic per-stream seed derivation (splitmix64).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace friction
