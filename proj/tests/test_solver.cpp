#include <doctest.h>

#include "gsqg/errors.hpp"
#include "gsqg/solver.hpp"

#include <cmath>

using namespace gsqg;

TEST_CASE("classify_regime decision table") {
    CHECK(classify_regime(0.75, -1.0, 1) == Regime::irrotational_only);
    CHECK(classify_regime(0.25, 0.2, 2) == Regime::open_gap);
    CHECK(classify_regime(0.75, -2.0, 2) == Regime::exist_saddle);
    CHECK(classify_regime(0.75, -1.8, 2) == Regime::exist_minimizing);
    CHECK(classify_regime(0.75, 1.0, 2) == Regime::exist_mountain_pass);
    CHECK(classify_regime(0.75, -1.0, 2) == Regime::nonexistence_interior);
    CHECK(classify_regime(0.75, -1.5, 2) == Regime::nonexistence_endpoint);
    CHECK(classify_regime(0.75, 0.0, 2) == Regime::nonexistence_endpoint);
    CHECK(classify_regime(0.75, -3.5, 2) == Regime::out_of_range);
    CHECK(classify_regime(0.75, 2.0, 2) == Regime::out_of_range);
    CHECK(classify_regime(0.75, -3.4999, 2) == Regime::exist_saddle);
    CHECK(classify_regime(0.3, 0.3, 1) == Regime::exist_mountain_pass);
    CHECK(classify_regime(0.3, 0.2, 1) == Regime::open_gap);
    // m0 = 1, s < 1/2: beta = -1 is an ordinary nonexistence point only when
    // it lies in [-2s, 0]; for s < 1/2 it is below the strip.
    CHECK(classify_regime(0.4, -1.0, 1) == Regime::exist_saddle);
    CHECK_THROWS_AS((void)classify_regime(1.0, 0.0, 1), DomainError);
    CHECK_THROWS_AS((void)classify_regime(0.5, 0.0, 0), DomainError);
}

TEST_CASE("regime_name strings") {
    CHECK(std::string(regime_name(Regime::exist_minimizing)) ==
          "ExistMinimizing");
    CHECK(std::string(regime_name(Regime::open_gap)) == "OpenGap");
}

TEST_CASE("solve refuses non-existence regimes") {
    SolveConfig cfg;
    cfg.m_max = 16;
    CHECK_THROWS_AS((void)solve(0.75, -1.0, 2, cfg), DomainError);
    CHECK_THROWS_AS((void)solve(0.75, -3.6, 2, cfg), DomainError);
    CHECK_THROWS_AS((void)solve(0.25, 0.2, 2, cfg), DomainError);
}

TEST_CASE("minimizing solve: negative I, converged gradient") {
    SolveConfig cfg;
    cfg.m_max = 64;
    const SolveResult r = solve(0.75, -1.8, 2, cfg);
    CHECK(r.regime == Regime::exist_minimizing);
    CHECK(r.grad_norm < cfg.grad_tol);
    CHECK(r.I_value < 0.0);
    CHECK(sobolev_norm(r.w, 0.75) > 1e-3);
    CHECK(r.w.at(2) > 0.0); // sign pinning
    // g is the projected nonlinearity: mu_m a_m = g_m at convergence.
    const MultiplierTable t = build_table(0.75, -1.8, 2, cfg.m_max);
    for (int m = 2; m <= 10; ++m) {
        CHECK(t.mu_at(m) * r.w.at(m) ==
              doctest::Approx(r.g.at(m)).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("mountain pass solve: positive I") {
    SolveConfig cfg;
    cfg.m_max = 64;
    const SolveResult r = solve(0.75, 1.0, 2, cfg);
    CHECK(r.regime == Regime::exist_mountain_pass);
    CHECK(r.grad_norm < cfg.grad_tol);
    CHECK(r.I_value > 0.0);
    CHECK(sobolev_norm(r.w, 0.75) > 1e-3);
}

TEST_CASE("saddle solve at the scale-invariant point") {
    SolveConfig cfg;
    cfg.m_max = 64;
    const SolveResult r = solve(0.75, -2.0, 2, cfg);
    CHECK(r.regime == Regime::exist_saddle);
    CHECK(r.grad_norm < cfg.grad_tol);
    CHECK(sobolev_norm(r.w, 0.75) > 1e-3);
}

TEST_CASE("verify_solution on a small minimizing solve") {
    SolveConfig cfg;
    cfg.m_max = 64;
    const SolveResult r = solve(0.75, -1.8, 2, cfg);
    const VerifyReport rep = verify_solution(r, cfg);
    CHECK(rep.weak_residual < 1e-8);
    CHECK(rep.refit_delta < 1e-5); // coarse solve; acceptance uses m_max 256
    CHECK(rep.decay_required ==
          doctest::Approx(2.0 * 0.75 + 1.0 + 2.0 * 0.75 / -1.8 - 0.75));
}

TEST_CASE("nonexistence descent collapses in the strip") {
    SolveConfig cfg;
    int collapsed = 0;
    for (int k = 0; k < 5; ++k) {
        const DescentOutcome out =
            nonexistence_descent(0.75, -1.0, 2, 500 + k, cfg);
        collapsed += out.collapsed ? 1 : 0;
    }
    CHECK(collapsed == 5);
}

TEST_CASE("descent at (m0=1, beta=-1) parks on the irrotational line") {
    SolveConfig cfg;
    const DescentOutcome out = nonexistence_descent(0.75, -1.0, 1, 99, cfg);
    CHECK_FALSE(out.collapsed);
    double off_line = 0.0;
    for (int m = 2; m <= out.w.m_max(); ++m) {
        off_line += out.w.at(m) * out.w.at(m);
    }
    CHECK(std::sqrt(off_line) < 1e-6);
    CHECK(std::abs(out.w.at(1)) > 1e-3);
}

TEST_CASE("solution_branch continues through the minimizing window") {
    SolveConfig cfg;
    cfg.m_max = 48;
    const BranchResult br = solution_branch(0.75, 2, -1.9, -1.6, 3, cfg);
    CHECK(br.failed_betas.empty());
    REQUIRE(br.points.size() == 4);
    for (const auto& r : br.points) {
        CHECK(r.grad_norm < cfg.grad_tol);
        CHECK(sobolev_norm(r.w, 0.75) > 1e-3);
    }
}
