#pragma once

// Sine-spectral representation of odd 2pi-periodic functions on the
// orthonormal basis e_m = sin(m theta)/sqrt(pi), the Sobolev norms built on
// it, and the variational objects of the steady-state problem:
//
//   B(w, v)  = sum_{m >= m0} mu_m (w, e_m)(v, e_m),
//   I[w]     = (1/2) B(w, w) - (c beta / (2 (beta+s))) int |w|^{2+2s/beta},
//   <I'[w], eta> = B(w, eta) - c <w |w|^{2s/beta}, eta>.
//
// Grids are uniform, theta_j = 2pi j/n; the trapezoid rule on that grid is
// spectrally accurate for smooth periodic integrands.

#include "gsqg/multiplier.hpp"

#include <cstddef>
#include <vector>

namespace gsqg {

struct SineSeries {
    int m0 = 1;
    std::vector<double> coeffs; // coeffs[i] = (w, e_{m0+i})

    int m_max() const { return m0 + static_cast<int>(coeffs.size()) - 1; }
    double at(int m) const { return coeffs.at(static_cast<size_t>(m - m0)); }
    double& at(int m) { return coeffs.at(static_cast<size_t>(m - m0)); }
};

struct GridFunction {
    int n = 0;
    std::vector<double> values; // values[j] = f(2pi j / n)

    double theta(int j) const;
};

// Pointwise synthesis of the series on an n-point grid. Requires
// n >= 2 m_max + 2 so the series is resolved.
GridFunction to_grid(const SineSeries& w, int n);

struct AnalysisResult {
    SineSeries series;       // modes m0 .. m_max
    double discarded_energy; // sum of a_m^2 over 1 <= m < m0
    double symmetry_error;   // max_j |v_j + v_{n-j}| / max_j |v_j|
};

// Projection of grid values onto e_m, m = m0 .. m_max. Requires
// n >= 2 m_max + 2 (the projection is then exact for band-limited input).
// Throws DomainError if the odd-symmetry defect exceeds 1e-8 relative.
AnalysisResult from_grid(const GridFunction& f, int m0, int m_max);

// || w ||_{H^l} = sqrt( sum <m>^{2l} a_m^2 ), <m>^2 = m^2 + 1.
double sobolev_norm(const SineSeries& w, double l);

// Dual norm || r ||_{H^{-s}} = sqrt( sum <m>^{-2s} r_m^2 ).
double dual_norm(const SineSeries& r, double s);

// B(w, v) over the table's modes; both series must live inside the table
// range [table.m0, table.m_max()].
double bilinear_B(const SineSeries& w, const SineSeries& v,
                  const MultiplierTable& table);

// Pointwise nonlinearity nu = w (w^2 + eps^2)^{p/2} (equal to w |w|^p at
// eps = 0, with the principal value 0 at w = 0).
void nonlinearity(const double* w, int n, double p, double eps, double* out);

// I[w] at parameters (table.s, table.beta). Throws DomainError when
// beta + s = 0 (the functional is not defined there). When the integrand
// exponent 2 + 2s/beta vanishes the nonlinear term is the constant
// -(c beta/(2(beta+s))) * 2pi.
double functional_I(const SineSeries& w, const MultiplierTable& table,
                    double c, int n_grid);

// Coefficients of I'[w] on e_m, m = table.m0 .. table.m_max():
// r_m = mu_m a_m - c (w |w|^{2s/beta}, e_m). eps_smooth > 0 replaces the
// nonlinearity by its smoothed version (used by descent in regimes where the
// exact nonlinearity is singular at zeros of w).
SineSeries gradient_I(const SineSeries& w, const MultiplierTable& table,
                      double c, int n_grid, double eps_smooth = 0.0);

} // namespace gsqg
