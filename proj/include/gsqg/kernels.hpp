#pragma once

// Hot inner loops shared by the spectral transforms, Jacobian assembly and
// field fills: sine synthesis/analysis on the uniform grid theta_j = 2pi j/n
// and cosine-moment accumulation. A scalar reference implementation and an
// AVX2 variant are provided; the backend is selected once at startup
// (overridable with GSQG_KERNELS=scalar|avx2) and the two are equivalence-
// tested against each other. All loops use the stable three-term recurrence
// sin((m+1)t) = 2 cos(t) sin(mt) - sin((m-1)t) in the mode index, so results
// are deterministic for a fixed backend and grid size.

#include <string>

namespace gsqg::kernels {

enum class Backend { scalar, avx2 };

// Active backend (resolved on first use).
Backend active_backend();

// Force a backend; throws gsqg::DomainError if unsupported on this CPU.
void set_backend(Backend b);
const char* backend_name(Backend b);

// values[j] = sum_{i=0}^{n_modes-1} coeffs[i] * sin((m0+i) * theta_j),
// theta_j = 2pi j / n_grid.
void sine_synthesis(const double* coeffs, int m0, int n_modes, double* values,
                    int n_grid);

// out[i] = sum_{j=0}^{n_grid-1} values[j] * sin((m0+i) * theta_j)
// (raw sums; the caller applies quadrature/normalization factors).
void sine_analysis(const double* values, int n_grid, int m0, int n_modes,
                   double* out);

// out[q] = sum_{j=0}^{n_grid-1} phi[j] * cos(q * theta_j), q = 0..q_max.
void cosine_moments(const double* phi, int n_grid, int q_max, double* out);

} // namespace gsqg::kernels
