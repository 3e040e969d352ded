// AVX2 + FMA kernel variants. This translation unit is the only one compiled
// with -mavx2 -mfma; it is reached only after a runtime cpuid check, so the
// binary still runs on non-AVX2 machines.
#include "driftmon/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace driftmon::kernels::detail {

std::size_t count_ge_avx2(const double* x, std::size_t n, double t) {
    const __m256d vt = _mm256_set1_pd(t);
    std::size_t c = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        // Ordered non-signaling >=; NaN compares false, matching the scalar
        // path (NaN >= t is false).
        const __m256d m = _mm256_cmp_pd(v, vt, _CMP_GE_OQ);
        c += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(m)));
    }
    for (; i < n; ++i) c += (x[i] >= t) ? 1u : 0u;
    return c;
}

double sum_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) s += x[i];
    return s;
}

double sum_sq_diff_avx2(const double* x, std::size_t n, double mu) {
    const __m256d vmu = _mm256_set1_pd(mu);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), vmu);
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) {
        const double d = x[i] - mu;
        s += d * d;
    }
    return s;
}

double sum_prod_diff_avx2(const double* x, const double* y, std::size_t n,
                          double mx, double my) {
    const __m256d vmx = _mm256_set1_pd(mx);
    const __m256d vmy = _mm256_set1_pd(my);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i), vmx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + i), vmy);
        acc = _mm256_fmadd_pd(dx, dy, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) s += (x[i] - mx) * (y[i] - my);
    return s;
}

} // namespace driftmon::kernels::detail

#endif // x86-64
