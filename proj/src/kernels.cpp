#include "gsqg/kernels.hpp"

#include "gsqg/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numbers>

namespace gsqg::kernels {

namespace detail {

// Scalar reference implementations.

void sine_synthesis_scalar(const double* coeffs, int m0, int n_modes,
                           double* values, int n_grid) {
    const double twopi = 2.0 * std::numbers::pi;
    for (int j = 0; j < n_grid; ++j) {
        const double t = twopi * j / n_grid;
        const double c2 = 2.0 * std::cos(t);
        double sprev = std::sin((m0 - 1.0) * t);
        double scur = std::sin(m0 * t);
        double acc = 0.0;
        for (int i = 0; i < n_modes; ++i) {
            acc += coeffs[i] * scur;
            const double snext = c2 * scur - sprev;
            sprev = scur;
            scur = snext;
        }
        values[j] = acc;
    }
}

void sine_analysis_scalar(const double* values, int n_grid, int m0,
                          int n_modes, double* out) {
    const double twopi = 2.0 * std::numbers::pi;
    std::memset(out, 0, sizeof(double) * static_cast<size_t>(n_modes));
    for (int j = 0; j < n_grid; ++j) {
        const double t = twopi * j / n_grid;
        const double v = values[j];
        const double c2 = 2.0 * std::cos(t);
        double sprev = std::sin((m0 - 1.0) * t);
        double scur = std::sin(m0 * t);
        for (int i = 0; i < n_modes; ++i) {
            out[i] += v * scur;
            const double snext = c2 * scur - sprev;
            sprev = scur;
            scur = snext;
        }
    }
}

void cosine_moments_scalar(const double* phi, int n_grid, int q_max,
                           double* out) {
    const double twopi = 2.0 * std::numbers::pi;
    std::memset(out, 0, sizeof(double) * static_cast<size_t>(q_max + 1));
    for (int j = 0; j < n_grid; ++j) {
        const double t = twopi * j / n_grid;
        const double v = phi[j];
        const double c2 = 2.0 * std::cos(t);
        double cprev = 1.0;
        double ccur = 0.5 * c2;
        out[0] += v;
        for (int q = 1; q <= q_max; ++q) {
            out[q] += v * ccur;
            const double cnext = c2 * ccur - cprev;
            cprev = ccur;
            ccur = cnext;
        }
    }
}

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_supported() { return __builtin_cpu_supports("avx2"); }
// Implemented in kernels_avx2.cpp (compiled with -mavx2).
void sine_synthesis_avx2(const double*, int, int, double*, int);
void sine_analysis_avx2(const double*, int, int, int, double*);
void cosine_moments_avx2(const double*, int, int, double*);
#else
bool avx2_supported() { return false; }
void sine_synthesis_avx2(const double* c, int m0, int nm, double* v, int n) {
    sine_synthesis_scalar(c, m0, nm, v, n);
}
void sine_analysis_avx2(const double* v, int n, int m0, int nm, double* o) {
    sine_analysis_scalar(v, n, m0, nm, o);
}
void cosine_moments_avx2(const double* p, int n, int q, double* o) {
    cosine_moments_scalar(p, n, q, o);
}
#endif

} // namespace detail

namespace {

Backend resolve_initial_backend() {
    if (const char* env = std::getenv("GSQG_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0) {
            if (!detail::avx2_supported()) {
                throw DomainError("GSQG_KERNELS=avx2 but CPU lacks AVX2");
            }
            return Backend::avx2;
        }
        throw DomainError("GSQG_KERNELS must be 'scalar' or 'avx2'");
    }
    return detail::avx2_supported() ? Backend::avx2 : Backend::scalar;
}

Backend& backend_slot() {
    static Backend b = resolve_initial_backend();
    return b;
}

} // namespace

Backend active_backend() { return backend_slot(); }

void set_backend(Backend b) {
    if (b == Backend::avx2 && !detail::avx2_supported()) {
        throw DomainError("set_backend: CPU lacks AVX2");
    }
    backend_slot() = b;
}

const char* backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

void sine_synthesis(const double* coeffs, int m0, int n_modes, double* values,
                    int n_grid) {
    if (active_backend() == Backend::avx2) {
        detail::sine_synthesis_avx2(coeffs, m0, n_modes, values, n_grid);
    } else {
        detail::sine_synthesis_scalar(coeffs, m0, n_modes, values, n_grid);
    }
}

void sine_analysis(const double* values, int n_grid, int m0, int n_modes,
                   double* out) {
    if (active_backend() == Backend::avx2) {
        detail::sine_analysis_avx2(values, n_grid, m0, n_modes, out);
    } else {
        detail::sine_analysis_scalar(values, n_grid, m0, n_modes, out);
    }
}

void cosine_moments(const double* phi, int n_grid, int q_max, double* out) {
    if (active_backend() == Backend::avx2) {
        detail::cosine_moments_avx2(phi, n_grid, q_max, out);
    } else {
        detail::cosine_moments_scalar(phi, n_grid, q_max, out);
    }
}

} // namespace gsqg::kernels
