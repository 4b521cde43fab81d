// AVX2 variants of the kernel loops. Compiled with -mavx2 -mfma on x86-64
// only; the dispatcher never calls these unless the CPU reports AVX2.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstring>
#include <numbers>

namespace gsqg::kernels::detail {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Loads sin((m0-1) t_j), sin(m0 t_j), 2 cos(t_j) for a block of 4 grid points.
struct SinBlock {
    __m256d sprev, scur, c2;
};

inline SinBlock make_block(int j, int n_grid, int m0) {
    alignas(32) double sp[4], sc[4], cc[4];
    for (int l = 0; l < 4; ++l) {
        const double t = kTwoPi * (j + l) / n_grid;
        sp[l] = std::sin((m0 - 1.0) * t);
        sc[l] = std::sin(m0 * t);
        cc[l] = 2.0 * std::cos(t);
    }
    return {_mm256_load_pd(sp), _mm256_load_pd(sc), _mm256_load_pd(cc)};
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

} // namespace

void sine_synthesis_avx2(const double* coeffs, int m0, int n_modes,
                         double* values, int n_grid) {
    int j = 0;
    for (; j + 4 <= n_grid; j += 4) {
        SinBlock b = make_block(j, n_grid, m0);
        __m256d acc = _mm256_setzero_pd();
        for (int i = 0; i < n_modes; ++i) {
            acc = _mm256_fmadd_pd(_mm256_set1_pd(coeffs[i]), b.scur, acc);
            const __m256d snext =
                _mm256_fmsub_pd(b.c2, b.scur, b.sprev);
            b.sprev = b.scur;
            b.scur = snext;
        }
        _mm256_storeu_pd(values + j, acc);
    }
    {
        // Remainder handled scalar, point by point.
        for (; j < n_grid; ++j) {
            const double t = kTwoPi * j / n_grid;
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
}

void sine_analysis_avx2(const double* values, int n_grid, int m0, int n_modes,
                        double* out) {
    std::memset(out, 0, sizeof(double) * static_cast<size_t>(n_modes));
    int j = 0;
    for (; j + 4 <= n_grid; j += 4) {
        SinBlock b = make_block(j, n_grid, m0);
        const __m256d v = _mm256_loadu_pd(values + j);
        for (int i = 0; i < n_modes; ++i) {
            out[i] += hsum(_mm256_mul_pd(v, b.scur));
            const __m256d snext = _mm256_fmsub_pd(b.c2, b.scur, b.sprev);
            b.sprev = b.scur;
            b.scur = snext;
        }
    }
    for (; j < n_grid; ++j) {
        const double t = kTwoPi * j / n_grid;
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

void cosine_moments_avx2(const double* phi, int n_grid, int q_max,
                         double* out) {
    std::memset(out, 0, sizeof(double) * static_cast<size_t>(q_max + 1));
    int j = 0;
    for (; j + 4 <= n_grid; j += 4) {
        alignas(32) double cc[4];
        for (int l = 0; l < 4; ++l) {
            cc[l] = 2.0 * std::cos(kTwoPi * (j + l) / n_grid);
        }
        const __m256d c2 = _mm256_load_pd(cc);
        const __m256d v = _mm256_loadu_pd(phi + j);
        __m256d cprev = _mm256_set1_pd(1.0);
        __m256d ccur = _mm256_mul_pd(c2, _mm256_set1_pd(0.5));
        out[0] += hsum(v);
        for (int q = 1; q <= q_max; ++q) {
            out[q] += hsum(_mm256_mul_pd(v, ccur));
            const __m256d cnext = _mm256_fmsub_pd(c2, ccur, cprev);
            cprev = ccur;
            ccur = cnext;
        }
    }
    for (; j < n_grid; ++j) {
        const double t = kTwoPi * j / n_grid;
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

} // namespace gsqg::kernels::detail

#endif // x86-64
