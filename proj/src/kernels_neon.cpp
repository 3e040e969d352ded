// NEON kernel variants for AArch64. Compiled unconditionally but empty on
// other architectures; NEON is baseline on AArch64 so no runtime probe is
// needed there.
#include "driftmon/kernels.hpp"

#if defined(__ARM_NEON) || defined(__aarch64__)

#include <arm_neon.h>

namespace driftmon::kernels::detail {

std::size_t count_ge_neon(const double* x, std::size_t n, double t) {
    const float64x2_t vt = vdupq_n_f64(t);
    std::size_t c = 0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const uint64x2_t m = vcgeq_f64(vld1q_f64(x + i), vt);
        c += (vgetq_lane_u64(m, 0) & 1u) + (vgetq_lane_u64(m, 1) & 1u);
    }
    for (; i < n; ++i) c += (x[i] >= t) ? 1u : 0u;
    return c;
}

double sum_neon(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = vaddq_f64(acc, vld1q_f64(x + i));
    }
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) s += x[i];
    return s;
}

double sum_sq_diff_neon(const double* x, std::size_t n, double mu) {
    const float64x2_t vmu = vdupq_n_f64(mu);
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d = vsubq_f64(vld1q_f64(x + i), vmu);
        acc = vfmaq_f64(acc, d, d);
    }
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) {
        const double d = x[i] - mu;
        s += d * d;
    }
    return s;
}

double sum_prod_diff_neon(const double* x, const double* y, std::size_t n,
                          double mx, double my) {
    const float64x2_t vmx = vdupq_n_f64(mx);
    const float64x2_t vmy = vdupq_n_f64(my);
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t dx = vsubq_f64(vld1q_f64(x + i), vmx);
        const float64x2_t dy = vsubq_f64(vld1q_f64(y + i), vmy);
        acc = vfmaq_f64(acc, dx, dy);
    }
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) s += (x[i] - mx) * (y[i] - my);
    return s;
}

} // namespace driftmon::kernels::detail

#endif // ARM
