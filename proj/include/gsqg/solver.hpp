#pragma once

// Regime classification and numerical construction of odd-symmetric
// homogeneous steady states under the ansatz g = c w |w|^{2s/beta}:
//
//   -L(s, beta) w = c w |w|^{2s/beta}   on  X = H^s_{m0,odd}(T),
//
// across the three variational regimes:
//   * minimizing      -m0 < beta < -2s          (I bounded below, ground state)
//   * mountain pass    0 < beta < m0            (Nehari constraint; for
//                      s < 1/2 additionally beta > 1/2 - s)
//   * saddle          -m0 - 2s < beta <= -m0    (finite-index linearization,
//                      beta < -2s effectively; Newton from a structured seed)

#include "gsqg/multiplier.hpp"
#include "gsqg/spectral.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gsqg {

enum class Regime {
    out_of_range,
    nonexistence_interior,
    nonexistence_endpoint,
    irrotational_only,
    exist_minimizing,
    exist_mountain_pass,
    exist_saddle,
    open_gap,
};

const char* regime_name(Regime r);

// Decision table (checked in order; comparisons are exact):
//   beta <= -m0-2s or beta >= m0            -> out_of_range
//   -2s <= beta <= 0:
//       m0 == 1, beta == -1, s >= 1/2       -> irrotational_only
//       beta == 0 or beta == -2s            -> nonexistence_endpoint
//       otherwise                           -> nonexistence_interior
//   0 < beta < m0:
//       s < 1/2 and beta <= 1/2 - s         -> open_gap
//       otherwise                           -> exist_mountain_pass
//   -m0 < beta < -2s                        -> exist_minimizing
//   -m0-2s < beta <= -m0                    -> exist_saddle
Regime classify_regime(double s, double beta, int m0);

struct SolveConfig {
    int m_max = 256;
    int n_grid = 0;            // 0 -> 8 * m_max
    double c = 1.0;            // ansatz normalization
    double grad_tol = 1e-10;   // H^{-s} norm of the unsmoothed gradient
    int max_newton = 80;
    int max_descent = 50000;
    double khat_tol = 1e-12;
    double eps_smooth_rel = 1e-12; // Jacobian smoothing, relative to max|w|
    std::uint64_t rng_seed = 20240817;

    int grid(int m_max_) const { return n_grid > 0 ? n_grid : 8 * m_max_; }
};

struct SolveResult {
    double s = 0.0;
    double beta = 0.0;
    int m0 = 1;
    Regime regime = Regime::out_of_range;
    double c = 1.0;
    SineSeries w;
    SineSeries g;          // projection of c w |w|^{2s/beta}
    double grad_norm = 0.0; // H^{-s} norm of I'[w] at the returned iterate
    double I_value = 0.0;
    double decay_slope = 0.0; // log|a_m| vs log m fit over the resolved tail
    int iterations = 0;
    std::uint64_t rng_seed = 0;
};

// Constructs a steady state. Throws DomainError unless classify_regime()
// returns one of the three existence regimes; throws NumericError if the
// iteration fails to reach config.grad_tol.
SolveResult solve(double s, double beta, int m0, const SolveConfig& config = {});

struct VerifyReport {
    double weak_residual = 0.0;   // H^{-s} gradient norm on a doubled grid
    double refit_delta = 0.0;     // relative l2 coefficient change at 2x resolution
    double decay_slope = 0.0;
    double decay_required = 0.0;  // (2s + 1 + 2s/beta) - 0.75
    bool decay_ok = false;        // soft criterion
};

VerifyReport verify_solution(const SolveResult& sol, const SolveConfig& config = {});

struct BranchResult {
    std::vector<SolveResult> points;
    std::vector<double> failed_betas;
};

// Natural continuation in beta: each solution seeds the next Newton solve,
// with step bisection (depth 4) on failure.
BranchResult solution_branch(double s, int m0, double beta_from, double beta_to,
                             int n_steps, const SolveConfig& config = {});

struct DescentOutcome {
    double final_norm = 0.0; // ||w||_{H^s} at termination
    bool collapsed = false;  // final_norm < 1e-6
    int iterations = 0;
    SineSeries w;            // terminal iterate (for irrotational-line checks)
};

// Diagnostic gradient flow from a random seed, used to probe nonexistence
// regimes. In the strip -2s <= beta <= 0 the theorem forces g = 0, and the
// ansatz coefficient c beta/(2(beta+s)) is sign-indefinite (it diverges at
// beta = -s), so the flow descends the quadratic part Q(w) = B(w,w)/2 alone.
// Since mu_m > 0 for every m >= m0 in the strip (except mu_1 = 0 at beta = -1),
// the flow collapses to zero -- or, for m0 = 1, beta = -1, terminates on the
// irrotational line spanned by sin(theta).
DescentOutcome nonexistence_descent(double s, double beta, int m0,
                                    std::uint64_t seed,
                                    const SolveConfig& config = {});

} // namespace gsqg
