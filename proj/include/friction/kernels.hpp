#pragma once

#include <cstddef>

// Dense arithmetic kernels used by the simplex tableau updates, path scans and
// the covariance factorization. Scalar implementations are the reference; an
// AVX2 variant is selected at runtime when the CPU supports it. Element-wise
// kernels (axpy, scale) round identically in both variants; reductions (dot,
// sum, max) may differ in the last ulp because the lane-combine order differs.

namespace friction::kern {

enum class Backend { Auto, Scalar, Avx2 };

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double* y, const double* x, double a, std::size_t n);  // y += a*x
void scale(double* x, double a, std::size_t n);
double sum(const double* x, std::size_t n);
double max_val(const double* x, std::size_t n);  // n >= 1
double max_abs_diff(const double* a, const double* b, std::size_t n);
}  // namespace scalar

#if FRICTION_WITH_AVX2
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double* y, const double* x, double a, std::size_t n);
void scale(double* x, double a, std::size_t n);
double sum(const double* x, std::size_t n);
double max_val(const double* x, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
}  // namespace avx2
#endif

bool avx2_supported();
void select_backend(Backend b);  // throws ConfigInvalid if unsupported
const char* active_backend();    // "scalar" or "avx2"

double dot(const double* a, const double* b, std::size_t n);
void axpy(double* y, const double* x, double a, std::size_t n);
void scale(double* x, double a, std::size_t n);
double sum(const double* x, std::size_t n);
double max_val(const double* x, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);

}  // namespace friction::kern
