#pragma once

// Gamma-family special functions used by the spectral core.
//
// All routines work in double precision on positive real arguments.
// Negative arguments are rejected; callers that need reflected values
// (e.g. Gamma(1-2s) for s > 1/2) apply the reflection formula themselves.

#include <stdexcept>

namespace gsqg {

// log Gamma(x) for x > 0.
// Lanczos approximation (g = 7, 9 coefficients); relative accuracy ~1e-14
// on [1e-3, 1e6]. Throws std::domain_error for x <= 0.
double ln_gamma(double x);

// Gamma(num) / Gamma(den) for num, den > 0, computed on the log scale so the
// ratio neither overflows nor underflows for arguments up to 1e6.
// For large, nearby arguments the difference of the two Stirling series is
// formed term by term, which avoids the cancellation that a plain
// exp(ln_gamma(num) - ln_gamma(den)) would suffer; relative accuracy ~1e-13.
double gamma_ratio(double num, double den);

// Digamma psi(x) for x > 0: Bernoulli asymptotic series for x >= 10,
// recurrence psi(x) = psi(x+1) - 1/x below. Absolute accuracy ~1e-13.
double digamma(double x);

} // namespace gsqg
