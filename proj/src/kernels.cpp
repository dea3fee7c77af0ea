#include "friction/kernels.hpp"

#include "friction/errors.hpp"

namespace friction::kern {

namespace {

struct Table {
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double*, const double*, double, std::size_t);
    void (*scale)(double*, double, std::size_t);
    double (*sum)(const double*, std::size_t);
    double (*max_val)(const double*, std::size_t);
    double (*max_abs_diff)(const double*, const double*, std::size_t);
    const char* name;
};

constexpr Table kScalar{scalar::dot, scalar::axpy, scalar::scale,
                        scalar::sum, scalar::max_val, scalar::max_abs_diff, "scalar"};

#if FRICTION_WITH_AVX2
constexpr Table kAvx2{avx2::dot, avx2::axpy, avx2::scale,
                      avx2::sum, avx2::max_val, avx2::max_abs_diff, "avx2"};
#endif

Table& table() {
    static Table t = avx2_supported() ?
#if FRICTION_WITH_AVX2
                                      kAvx2
#else
                                      kScalar
#endif
                                      : kScalar;
    return t;
}

}  // namespace

bool avx2_supported() {
#if FRICTION_WITH_AVX2 && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

void select_backend(Backend b) {
    switch (b) {
        case Backend::Scalar:
            table() = kScalar;
            return;
        case Backend::Avx2:
#if FRICTION_WITH_AVX2
            if (avx2_supported()) {
                table() = kAvx2;
                return;
            }
#endif
            throw ConfigInvalid("avx2 backend not available on this host");
        case Backend::Auto:
#if FRICTION_WITH_AVX2
            if (avx2_supported()) {
                table() = kAvx2;
                return;
            }
#endif
            table() = kScalar;
            return;
    }
}

const char* active_backend() { return table().name; }

double dot(const double* a, const double* b, std::size_t n) { return table().dot(a, b, n); }
void axpy(double* y, const double* x, double a, std::size_t n) { table().axpy(y, x, a, n); }
void scale(double* x, double a, std::size_t n) { table().scale(x, a, n); }
double sum(const double* x, std::size_t n) { return table().sum(x, n); }
double max_val(const double* x, std::size_t n) { return table().max_val(x, n); }
double max_abs_diff(const double* a, const double* b, std::size_t n) {
    return table().max_abs_diff(a, b, n);
}

}  // namespace friction::kern
