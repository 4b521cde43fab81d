#include "gsqg/kernel_oracle.hpp"

#include "gsqg/errors.hpp"
#include "gsqg/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace gsqg::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

// 16-point Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton
// iteration on P_16 (deterministic; accurate to machine precision).
struct GaussLegendre16 {
    double x[16];
    double w[16];
    GaussLegendre16() {
        constexpr int n = 16;
        for (int i = 0; i < n / 2; ++i) {
            double t = std::cos(kPi * (i + 0.75) / (n + 0.5)); // Chebyshev guess
            double p0 = 0.0, p1 = 0.0;
            for (int it = 0; it < 100; ++it) {
                p0 = 1.0;
                p1 = t;
                for (int k = 2; k <= n; ++k) {
                    const double p2 =
                        ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (t * p1 - p0) / (t * t - 1.0);
                const double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-16) break;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1.0);
            x[i] = -t;
            x[n - 1 - i] = t;
            w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

const GaussLegendre16& gl16() {
    static const GaussLegendre16 g;
    return g;
}

void validate_beta(double s, double beta) {
    if (!(s > 0.0) || !(s < 1.0)) {
        throw DomainError("kernel oracle: s must lie in (0, 1)");
    }
    if (!(beta > -2.0 * s + 1e-6) || !(beta < -1e-6)) {
        throw DomainError("kernel oracle: beta = " + std::to_string(beta) +
                          " outside native window (-2s, 0) = (" +
                          std::to_string(-2.0 * s) + ", 0) with 1e-6 guard");
    }
}

// rho-integral after folding (1, inf) onto (0, 1] by rho -> 1/rho and
// substituting rho = e^u:
//   int_{-inf}^0 (e^{-beta u} + e^{(2s+beta) u}) D(u)^{-s} du,
//   D(u) = expm1(u)^2 + 4 e^u sin^2(theta/2)
// (stable form of e^{2u} + 1 - 2 e^u cos theta). Panels are graded
// dyadically toward u = 0 down to the theta length scale, unit panels cover
// [-40, -1], and the far tail is integrated analytically with D ~ 1
// (relative error of that approximation ~ e^{-40}).
double rho_integral(double theta, double s, double beta, int split) {
    const double sh = std::sin(0.5 * theta);
    const double c2 = 4.0 * sh * sh;
    const double r2 = 2.0 * s + beta; // > 0; the other decay rate is -beta > 0

    auto f = [&](double u) {
        const double em1 = std::expm1(u);
        const double d = em1 * em1 + c2 * std::exp(u);
        return (std::exp(-beta * u) + std::exp(r2 * u)) * std::pow(d, -s);
    };

    const auto& g = gl16();
    auto panel = [&](double lo, double hi) {
        double acc = 0.0;
        const double step = (hi - lo) / split;
        for (int p = 0; p < split; ++p) {
            const double mid = lo + (p + 0.5) * step;
            const double half = 0.5 * step;
            double sum = 0.0;
            for (int i = 0; i < 16; ++i) {
                sum += g.w[i] * f(mid + half * g.x[i]);
            }
            acc += sum * half;
        }
        return acc;
    };

    const double theta_scale = std::max(2.0 * std::abs(sh), 1e-300);
    const int depth = std::clamp(
        static_cast<int>(std::ceil(std::log2(1.0 / theta_scale))) + 4, 4, 64);

    double total = 0.0;
    double hi = 1.0;
    for (int d = 0; d < depth; ++d) {
        total += panel(-hi, -0.5 * hi);
        hi *= 0.5;
    }
    total += panel(-hi, 0.0);
    for (int k = 1; k < 40; ++k) {
        total += panel(-(k + 1.0), -static_cast<double>(k));
    }
    const double U = -40.0;
    total += std::exp(-beta * U) / (-beta) + std::exp(r2 * U) / r2;
    return total;
}

} // namespace

double kernel_constant(double s) {
    if (!(s > 0.0) || !(s < 1.0)) {
        throw DomainError("kernel_constant: s must lie in (0, 1)");
    }
    return std::exp(ln_gamma(s) - ln_gamma(1.0 - s)) /
           (std::pow(4.0, 1.0 - s) * kPi);
}

double kernel_value(double theta, double s, double beta, double rel_tol) {
    validate_beta(s, beta);
    if (!(theta > 1e-8) || !(theta < 2.0 * kPi - 1e-8)) {
        throw DomainError("kernel_value: theta must lie in (1e-8, 2pi - 1e-8)");
    }
    const double c = kernel_constant(s);
    double prev = rho_integral(theta, s, beta, 1);
    for (int split = 2; split <= 8; split *= 2) {
        const double cur = rho_integral(theta, s, beta, split);
        if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) {
            return c * cur;
        }
        prev = cur;
    }
    throw NumericError("kernel_value: rho-quadrature failed to converge");
}

std::vector<double> kernel_fourier_coeffs(int m_max, double s, double beta,
                                          double rel_tol) {
    validate_beta(s, beta);
    if (m_max < 0) {
        throw DomainError("kernel_fourier_coeffs: m_max must be >= 0");
    }
    const double c = kernel_constant(s);
    // Panel depth: the neglected (0, theta_min) mass, where K ~ theta^{2s-1}
    // for s < 1/2 (milder otherwise), must stay below rel_tol * Khat_0.
    const double expo = std::min(2.0 * s, 1.0);
    const double theta_c =
        std::clamp(std::pow(0.02 * rel_tol, 1.0 / expo), 1e-15, 0.1);
    const int depth = std::clamp(
        static_cast<int>(std::ceil(std::log2(kPi / theta_c))), 8, 64);

    const auto& g = gl16();
    // One sweep over (theta_min, pi]: the kernel is evaluated once per node
    // and projected onto every cos(m theta) by the Chebyshev recurrence.
    // The (pi, 2pi) half contributes identically by the K(2pi-theta) = K(theta)
    // symmetry, so Khat_m = (1/pi) int_0^pi K cos(m theta).
    auto project = [&](int split, int rho_split) {
        std::vector<double> coeffs(static_cast<size_t>(m_max) + 1, 0.0);
        double hi = kPi;
        for (int d = 0; d <= depth; ++d) {
            const double lo = hi * 0.5;
            const double step = (hi - lo) / split;
            for (int p = 0; p < split; ++p) {
                const double mid = lo + (p + 0.5) * step;
                const double half = 0.5 * step;
                for (int i = 0; i < 16; ++i) {
                    const double theta = mid + half * g.x[i];
                    const double wk =
                        g.w[i] * half * rho_integral(theta, s, beta, rho_split);
                    const double ct2 = 2.0 * std::cos(theta);
                    double cprev = 1.0;      // cos(0)
                    double ccur = 0.5 * ct2; // cos(theta)
                    coeffs[0] += wk;
                    for (int m = 1; m <= m_max; ++m) {
                        coeffs[static_cast<size_t>(m)] += wk * ccur;
                        const double cnext = ct2 * ccur - cprev;
                        cprev = ccur;
                        ccur = cnext;
                    }
                }
            }
            hi = lo;
        }
        for (auto& v : coeffs) {
            v *= c / kPi;
        }
        return coeffs;
    };

    const std::vector<double> base = project(1, 1);
    const std::vector<double> fine = project(2, 2);
    const double scale = std::abs(fine[0]);
    for (int m = 0; m <= m_max; ++m) {
        if (std::abs(fine[static_cast<size_t>(m)] -
                     base[static_cast<size_t>(m)]) > rel_tol * scale) {
            throw NumericError(
                "kernel_fourier_coeffs: theta-quadrature failed to converge "
                "at m = " + std::to_string(m));
        }
    }
    return fine;
}

double kernel_fourier_coeff(int m, double s, double beta, double rel_tol) {
    return kernel_fourier_coeffs(m, s, beta, rel_tol)
        .at(static_cast<size_t>(m));
}

} // namespace gsqg::oracle
