#include "driftmon/kernels.hpp"

#include <stdexcept>

namespace driftmon::kernels {

namespace detail {

std::size_t count_ge_scalar(const double* x, std::size_t n, double t) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) {
        c += (x[i] >= t) ? 1u : 0u;
    }
    return c;
}

double sum_scalar(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

double sum_sq_diff_scalar(const double* x, std::size_t n, double mu) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - mu;
        s += d * d;
    }
    return s;
}

double sum_prod_diff_scalar(const double* x, const double* y, std::size_t n,
                            double mx, double my) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += (x[i] - mx) * (y[i] - my);
    }
    return s;
}

} // namespace detail

namespace {

Backend detect_backend() {
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2")) return Backend::Avx2;
#endif
#if defined(__ARM_NEON) || defined(__aarch64__)
    return Backend::Neon;
#endif
    return Backend::Scalar;
}

Backend& backend_slot() {
    static Backend b = detect_backend();
    return b;
}

} // namespace

bool backend_available(Backend b) {
    switch (b) {
        case Backend::Scalar:
            return true;
        case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return __builtin_cpu_supports("avx2") != 0;
#else
            return false;
#endif
        case Backend::Neon:
#if defined(__ARM_NEON) || defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Backend active_backend() { return backend_slot(); }

void set_backend(Backend b) {
    if (!backend_available(b)) {
        throw std::invalid_argument(std::string("kernel backend not available: ") +
                                    backend_name(b));
    }
    backend_slot() = b;
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "unknown";
}

std::size_t count_ge(const double* x, std::size_t n, double t) {
    switch (backend_slot()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::Avx2: return detail::count_ge_avx2(x, n, t);
#endif
#if defined(__ARM_NEON) || defined(__aarch64__)
        case Backend::Neon: return detail::count_ge_neon(x, n, t);
#endif
        default: return detail::count_ge_scalar(x, n, t);
    }
}

double sum(const double* x, std::size_t n) {
    switch (backend_slot()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::Avx2: return detail::sum_avx2(x, n);
#endif
#if defined(__ARM_NEON) || defined(__aarch64__)
        case Backend::Neon: return detail::sum_neon(x, n);
#endif
        default: return detail::sum_scalar(x, n);
    }
}

double sum_sq_diff(const double* x, std::size_t n, double mu) {
    switch (backend_slot()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::Avx2: return detail::sum_sq_diff_avx2(x, n, mu);
#endif
#if defined(__ARM_NEON) || defined(__aarch64__)
        case Backend::Neon: return detail::sum_sq_diff_neon(x, n, mu);
#endif
        default: return detail::sum_sq_diff_scalar(x, n, mu);
    }
}

double sum_prod_diff(const double* x, const double* y, std::size_t n,
                     double mx, double my) {
    switch (backend_slot()) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::Avx2: return detail::sum_prod_diff_avx2(x, y, n, mx, my);
#endif
#if defined(__ARM_NEON) || defined(__aarch64__)
        case Backend::Neon: return detail::sum_prod_diff_neon(x, y, n, mx, my);
#endif
        default: return detail::sum_prod_diff_scalar(x, y, n, mx, my);
    }
}

} // namespace driftmon::kernels
