#include "friction/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "friction/errors.hpp"
#include "friction/kernels.hpp"

namespace friction {

namespace {

constexpr double kThresholdSlack = 1e-12;  // relative slack in crossing detection

struct Rng {
    std::mt19937_64 gen;
    bool have_spare = false;
    double spare = 0.0;

    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double uniform() {  // in [0, 1)
        return static_cast<double>(gen() >> 11) * 0x1.0p-53;
    }

    double normal() {  // Box-Muller, fully pinned by the seed
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare = r * std::sin(theta);
        have_spare = true;
        return r * std::cos(theta);
    }
};

}  // namespace

bool SampledPath::canonical() const {
    return !values.empty() && std::fabs(values.front() - 1.0) <= 1e-12;
}

void SampledPath::validate() const {
    if (times.size() < 2 || times.size() != values.size())
        throw ConfigInvalid("sampled path needs matching times/values, at least 2 points");
    if (times.front() != 0.0) throw ConfigInvalid("sampled path must start at time 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw ConfigInvalid("sample times not strictly increasing");
    for (double v : values)
        if (!(v > 0.0)) throw ConfigInvalid("sampled path values must be positive");
}

double JumpPath::value_at(double t) const {
    // right-continuous: level of the last jump time <= t
    std::size_t j = std::upper_bound(jump_times.begin(), jump_times.end(), t) - jump_times.begin();
    return levels[j];
}

void JumpPath::validate() const {
    if (levels.size() != jump_times.size() + 1)
        throw ConfigInvalid("jump path needs jump_times.size()+1 levels");
    if (!(horizon > 0.0)) throw ConfigInvalid("jump path horizon must be positive");
    double prev = 0.0;
    for (double t : jump_times) {
        if (!(t > prev) || !(t < horizon))
            throw ConfigInvalid("jump times must be strictly increasing inside (0, horizon)");
        prev = t;
    }
    for (std::size_t j = 0; j < levels.size(); ++j) {
        if (!(levels[j] > 0.0)) throw ConfigInvalid("jump path levels must be positive");
        if (j > 0 && levels[j] == levels[j - 1])
            throw ConfigInvalid("consecutive jump path levels must differ");
    }
}

std::vector<double> grid_elements(const GridSpec& spec) {
    if (!(spec.epsilon > 0.0)) throw ConfigInvalid("grid epsilon must be positive");
    if (spec.k < 1) throw ConfigInvalid("grid jump index must be >= 1");
    if (spec.i_max < 1) throw ConfigInvalid("grid truncation must be >= 1");
    const double pow2k = std::ldexp(1.0, spec.k);
    std::vector<double> out;
    out.reserve(2 * static_cast<std::size_t>(spec.i_max));
    for (int i = 1; i <= spec.i_max; ++i) out.push_back(spec.epsilon * i / pow2k);
    for (int i = 1; i <= spec.i_max; ++i) out.push_back(spec.epsilon / (i * pow2k));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool grid_contains(const GridSpec& spec, double value, double tol) {
    for (double e : grid_elements(spec))
        if (std::fabs(e - value) <= tol) return true;
    return false;
}

double snap_below(double delta_t, const GridSpec& spec) {
    const std::vector<double> elems = grid_elements(spec);
    auto it = std::lower_bound(elems.begin(), elems.end(), delta_t);
    if (it == elems.begin())
        throw NoGridElementBelow("gap " + std::to_string(delta_t) + " at or below smallest element " +
                                 std::to_string(elems.front()) + " (k=" + std::to_string(spec.k) +
                                 ", i_max=" + std::to_string(spec.i_max) + ")");
    return *(it - 1);
}

namespace {

template <typename Coord>
CrossingDecomposition crossing_scan(const SampledPath& path, double threshold, Coord coord) {
    path.validate();
    if (!(threshold > 0.0)) throw ConfigInvalid("crossing threshold must be positive");
    CrossingDecomposition out;
    out.terminal_index = path.times.size() - 1;
    const double effective = threshold * (1.0 - kThresholdSlack);
    double ref = coord(path.values[0]);
    for (std::size_t i = 1; i < path.times.size(); ++i) {
        if (std::fabs(coord(path.values[i]) - ref) >= effective) {
            if (i == out.terminal_index) break;  // passage at the horizon is terminal
            out.indices.push_back(i);
            out.times.push_back(path.times[i]);
            out.values.push_back(path.values[i]);
            ref = coord(path.values[i]);
        }
    }
    return out;
}

}  // namespace

CrossingDecomposition log_crossing_times(const SampledPath& path, double epsilon) {
    return crossing_scan(path, epsilon, [](double v) { return std::log(v); });
}

CrossingDecomposition absolute_crossing_times(const SampledPath& path, double delta) {
    return crossing_scan(path, delta, [](double v) { return v; });
}

JumpPath discretize(const SampledPath& path, double epsilon, std::size_t max_jumps, int i_max) {
    if (!path.canonical()) throw ConfigInvalid("discretize needs a canonical path (value 1 at t=0)");
    const CrossingDecomposition cross = log_crossing_times(path, epsilon);
    const std::size_t jumps = std::min(cross.count(), max_jumps);

    JumpPath out;
    out.horizon = path.horizon();
    out.levels.push_back(path.values.front());
    double tau_prev = 0.0;
    double tau_hat = 0.0;
    for (std::size_t j = 0; j < jumps; ++j) {
        const double gap = cross.times[j] - tau_prev;
        const double snapped = snap_below(gap, GridSpec{epsilon, static_cast<int>(j) + 1, i_max});
        tau_hat += snapped;
        out.jump_times.push_back(tau_hat);
        out.levels.push_back(cross.values[j]);
        tau_prev = cross.times[j];
    }
    return out;
}

bool is_grid_jump_path(const JumpPath& path, double epsilon, int i_max, double tol) {
    if (std::fabs(path.levels.front() - 1.0) > tol) return false;
    double prev_time = 0.0;
    for (std::size_t j = 0; j < path.jump_times.size(); ++j) {
        const double step = std::fabs(std::log(path.levels[j + 1]) - std::log(path.levels[j]));
        if (std::fabs(step - epsilon) > tol) return false;
        const double gap = path.jump_times[j] - prev_time;
        bool found = false;
        for (double e : grid_elements(GridSpec{epsilon, static_cast<int>(j) + 1, i_max})) {
            if (std::fabs(e - gap) <= tol) {
                found = true;
                break;
            }
        }
        if (!found) return false;
        prev_time = path.jump_times[j];
    }
    return true;
}

double sup_norm_distance(const SampledPath& a, const SampledPath& b) {
    if (a.times.size() == b.times.size() && a.times == b.times)
        return kern::max_abs_diff(a.values.data(), b.values.data(), a.values.size());
    // common refinement: both paths evaluated at the union of sample times,
    // holding the last known value between samples
    if (std::fabs(a.horizon() - b.horizon()) > 1e-12)
        throw ConfigInvalid("sup_norm_distance needs a common horizon");
    std::vector<double> grid;
    grid.reserve(a.times.size() + b.times.size());
    std::merge(a.times.begin(), a.times.end(), b.times.begin(), b.times.end(),
               std::back_inserter(grid));
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    double m = 0.0;
    std::size_t ia = 0, ib = 0;
    for (double t : grid) {
        while (ia + 1 < a.times.size() && a.times[ia + 1] <= t) ++ia;
        while (ib + 1 < b.times.size() && b.times[ib + 1] <= t) ++ib;
        m = std::max(m, std::fabs(a.values[ia] - b.values[ib]));
    }
    return m;
}

double sup_norm_distance(const JumpPath& a, const JumpPath& b) {
    if (std::fabs(a.horizon - b.horizon) > 1e-12)
        throw ConfigInvalid("sup_norm_distance needs a common horizon");
    std::vector<double> grid{0.0};
    grid.insert(grid.end(), a.jump_times.begin(), a.jump_times.end());
    grid.insert(grid.end(), b.jump_times.begin(), b.jump_times.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    double m = 0.0;
    for (double t : grid) m = std::max(m, std::fabs(a.value_at(t) - b.value_at(t)));
    return m;
}

SampledPath sample_gbm(double mu, double sigma, std::size_t n, double horizon,
                       std::uint64_t seed) {
    if (n < 2) throw ConfigInvalid("sample_gbm needs at least 2 grid points");
    if (!(sigma >= 0.0)) throw ConfigInvalid("sigma must be nonnegative");
    SampledPath path;
    path.times.resize(n);
    path.values.resize(n);
    const double dt = horizon / static_cast<double>(n - 1);
    const double drift = (mu - 0.5 * sigma * sigma) * dt;
    const double vol = sigma * std::sqrt(dt);
    Rng rng(seed);
    path.times[0] = 0.0;
    path.values[0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        path.times[i] = static_cast<double>(i) * dt;
        path.values[i] = path.values[i - 1] * std::exp(drift + vol * rng.normal());
    }
    path.times[n - 1] = horizon;
    return path;
}

FbmSampler::FbmSampler(double hurst, double sigma, std::size_t n, double horizon)
    : hurst_(hurst), sigma_(sigma), n_(n), horizon_(horizon) {
    if (!(hurst > 0.0 && hurst < 1.0)) throw ConfigInvalid("hurst must lie in (0,1)");
    if (n < 2) throw ConfigInvalid("fbm sampler needs at least 2 grid points");
    if (n > 4096) throw ConfigInvalid("fbm sampler limited to n <= 4096 (dense factorization)");
    const double dt = horizon / static_cast<double>(n - 1);
    times_.resize(n);
    for (std::size_t i = 0; i < n; ++i) times_[i] = static_cast<double>(i) * dt;
    times_[n - 1] = horizon;

    // covariance of fBm at the positive grid times, Cholesky-factored in place
    const std::size_t m = n - 1;
    const double h2 = 2.0 * hurst;
    std::vector<double> cov(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        const double ti = times_[i + 1];
        for (std::size_t j = 0; j <= i; ++j) {
            const double tj = times_[j + 1];
            const double c =
                0.5 * (std::pow(ti, h2) + std::pow(tj, h2) - std::pow(std::fabs(ti - tj), h2));
            cov[i * m + j] = c;
            cov[j * m + i] = c;
        }
    }
    chol_.assign(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double s = cov[i * m + j] - kern::dot(&chol_[i * m], &chol_[j * m], j);
            if (j == i) {
                if (!(s > 1e-14))
                    throw FactorizationFailure("fbm covariance not numerically positive definite "
                                               "(n too large or hurst too extreme)");
                chol_[i * m + i] = std::sqrt(s);
            } else {
                chol_[i * m + j] = s / chol_[j * m + j];
            }
        }
    }
}

SampledPath FbmSampler::draw(std::uint64_t seed) const {
    const std::size_t m = n_ - 1;
    Rng rng(seed);
    std::vector<double> z(m);
    for (std::size_t i = 0; i < m; ++i) z[i] = rng.normal();
    SampledPath path;
    path.times = times_;
    path.values.resize(n_);
    path.values[0] = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double b = kern::dot(&chol_[i * m], z.data(), i + 1);
        path.values[i + 1] = std::exp(sigma_ * b);
    }
    return path;
}

SampledPath sample_exp_fbm(double hurst, double sigma, std::size_t n, double horizon,
                           std::uint64_t seed) {
    return FbmSampler(hurst, sigma, n, horizon).draw(seed);
}

SampledPath draw(const SamplerSpec& spec, std::uint64_t seed) {
    if (spec.kind == SamplerSpec::Kind::Gbm)
        return sample_gbm(spec.mu, spec.sigma, spec.n, spec.horizon, seed);
    return sample_exp_fbm(spec.hurst, spec.sigma, spec.n, spec.horizon, seed);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + (stream + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace friction
