#pragma once

// Exact Fourier multiplier of the non-local operator K(s, beta) on the torus,
// and the eigenvalues mu_m of -L(s, beta) = -K(s, beta)(d^2/dtheta^2 + beta^2)
// on the odd sine basis e_m = sin(m theta)/sqrt(pi).
//
// The multiplier is defined by the series
//
//   Khat_m(s, beta) = sin(pi s)/(4^{1-s} pi^2)
//       * sum_{k>=0} [ 1/(|m|+2k-beta) + 1/(|m|+2k+beta+2s) ]
//                    * Gamma(k+s) Gamma(|m|+k+s) / (Gamma(|m|+k+1) k!),
//
// valid for -|m|-2s < beta < |m|. The series converges too slowly to be summed
// term by term at useful tolerances (the tail from K decays like K^{2s-2}), so
// khat() resums it exactly: each bracket factor is written as an integral
// int_0^1 x^{|m|+2k-beta-1} dx, the k-sum collapses to the Gauss function
// 2F1(s, |m|+s; |m|+1; y), and the integral is evaluated in closed form with
// the connection formula at y = 1 (logarithmic case for s = 1/2). Every series
// involved converges geometrically; no quadrature is used, which keeps this
// route independent from the kernel-quadrature oracle.
//
// Accuracy is ~1e-12 relative, uniform in m. Caveat: for s within ~1e-3 of 1/2
// (but not equal to 1/2) the two connection-formula branches cancel like
// 1/|1-2s| and accuracy degrades proportionally; s = 1/2 itself is exact.

#include <cstddef>
#include <vector>

namespace gsqg {

inline constexpr double kBoundaryGuard = 1e-6;

// Khat_{|m|}(s, beta). Requires 0 < s < 1 and
// -|m| - 2s + guard < beta < |m| - guard. tol in [1e-15, 1e-6] caps the
// truncation error of the internal series (default well below 1e-10).
double khat(double s, double beta, int m, double tol = 1e-12);

// Symbol of the inverse operator direction: Khat_{|m|}(1-s, beta+2s-2),
// the multiplier of (-L(s, beta))^{-1} up to the factor 2 pi. Valid for
// -|m| < beta < |m|.
double khat_inverse(double s, double beta, int m, double tol = 1e-12);

// Eigenvalue mu_m(s, beta) = 2 pi Khat_m(s, beta) (m^2 - beta^2) of
// -L(s, beta) on e_m. The polynomial factor is kept symbolic, so mu_m is
// exactly zero at |beta| = m.
double mu(double s, double beta, int m, double tol = 1e-12);

// Closed form of the Gauss series at unit argument,
//   sum_{k>=0} Gamma(a+k) Gamma(b+k) / (Gamma(c+k) k!)
//     = Gamma(a) Gamma(b) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)),
// for a, b > 0 and c > a + b.
double gauss_sum(double a, double b, double c);

// Table of Khat_m and mu_m for m = m0 .. m_max at fixed (s, beta).
struct MultiplierTable {
    double s = 0.0;
    double beta = 0.0;
    int m0 = 1;
    std::vector<double> khat; // khat[i] = Khat_{m0+i}
    std::vector<double> mu;   // mu[i]   = mu_{m0+i}

    int m_max() const { return m0 + static_cast<int>(khat.size()) - 1; }
    double khat_at(int m) const { return khat.at(static_cast<size_t>(m - m0)); }
    double mu_at(int m) const { return mu.at(static_cast<size_t>(m - m0)); }
};

// Builds the table; honors the GSQG_THREADS environment variable for the
// per-mode parallel fill. Requires -m0 - 2s < beta < m0 (with guard band) so
// every mode in the table is inside the validity window.
MultiplierTable build_table(double s, double beta, int m0, int m_max,
                            double tol = 1e-12);

// Least-squares slope of log khat[m] versus log m over m in [m_lo, m_hi].
// For m >> 1 the slope approaches -(2 - 2s).
double decay_exponent(const MultiplierTable& table, int m_lo, int m_hi);

} // namespace gsqg
