#pragma once

#include <cstddef>
#include <string>

namespace driftmon::kernels {

// Data-parallel inner loops used by the metrics/stats/monitor layers:
// thresholded counting over score arrays and mean/variance/covariance
// reductions. Each kernel has a scalar reference implementation plus SIMD
// variants (AVX2 on x86-64, NEON on AArch64) selected at runtime; the scalar
// path is the semantic definition and the SIMD paths are equivalence-tested
// against it.
enum class Backend {
    Scalar,
    Avx2,
    Neon,
};

// Backend chosen for this process (auto-detected at first use).
Backend active_backend();

// True if the given backend can run on this machine.
bool backend_available(Backend b);

// Force a backend (e.g. Scalar for differential testing). Throws
// std::invalid_argument if the backend is not available on this machine.
void set_backend(Backend b);

const char* backend_name(Backend b);

// Number of elements x[i] >= t. Exact (comparisons only), so all backends
// agree bit-for-bit.
std::size_t count_ge(const double* x, std::size_t n, double t);

// Sum of x[0..n). SIMD variants may reassociate, so cross-backend agreement
// is to rounding (~1e-12 relative), not bitwise.
double sum(const double* x, std::size_t n);

// Sum of (x[i] - mu)^2.
double sum_sq_diff(const double* x, std::size_t n, double mu);

// Sum of (x[i] - mx) * (y[i] - my).
double sum_prod_diff(const double* x, const double* y, std::size_t n,
                     double mx, double my);

namespace detail {
// Reference implementations, exposed for differential tests.
std::size_t count_ge_scalar(const double* x, std::size_t n, double t);
double sum_scalar(const double* x, std::size_t n);
double sum_sq_diff_scalar(const double* x, std::size_t n, double mu);
double sum_prod_diff_scalar(const double* x, const double* y, std::size_t n,
                            double mx, double my);

#if defined(__x86_64__) || defined(_M_X64)
std::size_t count_ge_avx2(const double* x, std::size_t n, double t);
double sum_avx2(const double* x, std::size_t n);
double sum_sq_diff_avx2(const double* x, std::size_t n, double mu);
double sum_prod_diff_avx2(const double* x, const double* y, std::size_t n,
                          double mx, double my);
#endif

#if defined(__ARM_NEON) || defined(__aarch64__)
std::size_t count_ge_neon(const double* x, std::size_t n, double t);
double sum_neon(const double* x, std::size_t n);
double sum_sq_diff_neon(const double* x, std::size_t n, double mu);
double sum_prod_diff_neon(const double* x, const double* y, std::size_t n,
                          double mx, double my);
#endif
} // namespace detail

} // namespace driftmon::kernels
