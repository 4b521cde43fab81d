#include <doctest.h>

#include "gsqg/errors.hpp"
#include "gsqg/specfun.hpp"

#include <cmath>
#include <stdexcept>

using namespace gsqg;

namespace {
constexpr double kEulerGamma = 0.57721566490153286060651209;
}

TEST_CASE("ln_gamma known values") {
    CHECK(ln_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ln_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ln_gamma(5.0) ==
          doctest::Approx(std::log(24.0)).epsilon(1e-13));
    CHECK(ln_gamma(0.5) ==
          doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-13));
    // Frozen high-precision reference (mpmath, 30 digits).
    CHECK(ln_gamma(1e6) ==
          doctest::Approx(12815504.569147611659976971785).epsilon(1e-13));
}

TEST_CASE("ln_gamma recurrence ln G(x+1) = ln G(x) + ln x") {
    for (double x = 1e-3; x < 1e6; x *= 3.7) {
        // The subtraction cancels ~|ln_gamma| * ulp, so the tolerance must
        // scale with the magnitude of ln_gamma, not with log(x).
        const double scale =
            std::max(1.0, std::abs(ln_gamma(x + 1.0)));
        CHECK(ln_gamma(x + 1.0) - ln_gamma(x) - std::log(x) ==
              doctest::Approx(0.0).scale(scale).epsilon(5e-15));
    }
}

TEST_CASE("ln_gamma reflection G(x) G(1-x) = pi / sin(pi x)") {
    for (double x : {0.05, 0.2, 0.35, 0.49, 0.3101}) {
        const double lhs = ln_gamma(x) + ln_gamma(1.0 - x);
        const double rhs = std::log(M_PI / std::sin(M_PI * x));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
}

TEST_CASE("ln_gamma domain errors") {
    CHECK_THROWS_AS(ln_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(ln_gamma(-2.5), std::domain_error);
    CHECK_THROWS_AS(ln_gamma(std::nan("")), std::domain_error);
}

TEST_CASE("gamma_ratio agrees with exp(ln_gamma difference)") {
    for (double num : {0.7, 3.2, 17.0, 140.5}) {
        for (double den : {0.4, 2.1, 25.0, 160.25}) {
            const double ref = std::exp(ln_gamma(num) - ln_gamma(den));
            CHECK(gamma_ratio(num, den) ==
                  doctest::Approx(ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("gamma_ratio recurrence G(x+1)/G(x) = x up to 1e6") {
    for (double x = 0.01; x < 1e6; x *= 2.3) {
        CHECK(gamma_ratio(x + 1.0, x) == doctest::Approx(x).epsilon(1e-13));
    }
}

TEST_CASE("gamma_ratio frozen references at large arguments") {
    // mpmath: gamma(1000.5)/gamma(1000), gamma(12345.6)/gamma(12340.1)
    CHECK(gamma_ratio(1000.5, 1000.0) ==
          doctest::Approx(31.61882400181591282).epsilon(1e-13));
    CHECK(gamma_ratio(12345.6, 12340.1) ==
          doctest::Approx(3.18191225223330825553e22).epsilon(1e-12));
}

TEST_CASE("digamma known values and recurrence") {
    CHECK(digamma(1.0) == doctest::Approx(-kEulerGamma).epsilon(1e-13));
    CHECK(digamma(2.0) == doctest::Approx(1.0 - kEulerGamma).epsilon(1e-13));
    // mpmath references
    CHECK(digamma(0.3) ==
          doctest::Approx(-3.5025242222001331249).epsilon(1e-13));
    CHECK(digamma(7.7) ==
          doctest::Approx(1.9748820949131018437).epsilon(1e-13));
    for (double x = 0.05; x < 1e4; x *= 3.1) {
        CHECK(digamma(x + 1.0) - digamma(x) ==
              doctest::Approx(1.0 / x).epsilon(1e-12));
    }
}
