#pragma once

// Independent quadrature oracle for the convolution kernel of K(s, beta),
//
//   K(theta; s, beta) = C(1-s) int_0^inf rho^{-beta-1} (rho^2 + 1
//                        - 2 rho cos theta)^{-s} drho,
//   C(1-s) = Gamma(s) / (4^{1-s} pi Gamma(1-s)),
//
// on the native window -2s < beta < 0, and its Fourier cosine coefficients
// (1/2pi) int_0^{2pi} K(theta) cos(m theta) dtheta. This route never touches
// the multiplier series: the rho-integral is folded onto (0, 1] by the
// rho -> 1/rho symmetry, mapped by rho = e^u, and integrated by composite
// 16-point Gauss-Legendre panels with an analytic far tail; the theta-integral
// uses geometrically graded panels (ratio 2) toward the theta = 0 singularity,
// where K ~ theta^{2s-1} (s < 1/2) or -log theta (s = 1/2).

#include <vector>

namespace gsqg::oracle {

// C(1-s).
double kernel_constant(double s);

// K(theta; s, beta) for theta in (1e-8, 2pi - 1e-8), -2s < beta < 0 (guard
// band 1e-6 at both ends of the beta window). The rho-quadrature is refined
// by panel doubling until two successive levels agree to rel_tol; throws
// NumericError if that fails.
double kernel_value(double theta, double s, double beta, double rel_tol = 1e-10);

// Fourier coefficients Khat_m for m = 0 .. m_max in one theta sweep (the
// kernel is evaluated once per quadrature node and projected onto every
// cos(m theta)). theta-panel depth is chosen so the neglected (0, theta_min)
// mass is below rel_tol, and the sweep is accepted only if halving every
// panel moves no coefficient by more than rel_tol * |Khat_0|.
std::vector<double> kernel_fourier_coeffs(int m_max, double s, double beta,
                                          double rel_tol = 1e-8);

// Single-coefficient convenience wrapper.
double kernel_fourier_coeff(int m, double s, double beta, double rel_tol = 1e-8);

} // namespace gsqg::oracle
