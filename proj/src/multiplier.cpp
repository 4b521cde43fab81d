#include "gsqg/multiplier.hpp"

#include "gsqg/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace gsqg {

namespace {

constexpr double kPi = std::numbers::pi;

// Hard cap on any internal series; every series below converges geometrically
// with ratio <= 1/2 after an O(|m| u0) = O(1) growth phase, so this is never
// reached in practice.
constexpr int kMaxTerms = 200000;

struct Window {
    double lo, hi;
};

Window window_of(double s, int m) {
    const double M = std::abs(m);
    return {-M - 2.0 * s, M};
}

void validate(double s, double beta, int m, double tol) {
    if (!(s > 0.0) || !(s < 1.0)) {
        throw std::domain_error("khat: s must lie in (0, 1)");
    }
    if (!(tol >= 1e-15) || !(tol <= 1e-6)) {
        throw std::domain_error("khat: tol must lie in [1e-15, 1e-6]");
    }
    const Window w = window_of(s, m);
    if (!(beta > w.lo + kBoundaryGuard) || !(beta < w.hi - kBoundaryGuard)) {
        throw std::domain_error(
            "khat: beta = " + std::to_string(beta) +
            " outside validity window (" + std::to_string(w.lo) + ", " +
            std::to_string(w.hi) + ") for m = " + std::to_string(m) +
            " (guard band 1e-6)");
    }
}

// Power-series coefficients R_k of G(y) = sum_k R_k y^k,
// R_k = Gamma(k+s) Gamma(M+k+s) / (Gamma(M+k+1) k!), via the term recurrence.
struct GSeries {
    double s;
    double M;
    double r0;
    double ratio(int k) const {
        return (k + s) * (M + k + s) / ((M + k + 1.0) * (k + 1.0));
    }
};

GSeries make_gseries(double s, double M) {
    return {s, M, std::exp(ln_gamma(s)) * gamma_ratio(M + s, M + 1.0)};
}

// P(c) = int_0^{y0} y^{c-1} G(y) dy = sum_k R_k y0^{k+c} / (k+c),
// with a certified geometric tail bound (term ratio -> y0 < 1).
double power_part(const GSeries& g, double c, double y0, double eps) {
    double rk = g.r0 * std::pow(y0, c);
    double sum = 0.0;
    for (int k = 0; k < kMaxTerms; ++k) {
        const double term = rk / (k + c);
        sum += term;
        const double rho = g.ratio(k) * y0;
        if (rho < 1.0 && term * rho / (1.0 - rho) < eps * std::abs(sum)) {
            break;
        }
        rk *= rho;
    }
    return sum;
}

// Coefficients f_j of (1-u)^{c-1} = sum_j f_j u^j, prescaled by u0^j.
std::vector<double> binom_coeffs(double c, double u0, double eps, int n_cap) {
    std::vector<double> f;
    f.reserve(64);
    double fj = 1.0;
    double peak = 1.0;
    for (int j = 0; j < n_cap; ++j) {
        f.push_back(fj);
        const double rho = (j + 1.0 - c) / (j + 1.0) * u0;
        fj *= rho;
        peak = std::max(peak, std::abs(fj));
        if (std::abs(rho) < 1.0 && std::abs(fj) < eps * peak) {
            f.push_back(fj);
            break;
        }
    }
    return f;
}

// Coefficients of 2F1(p, q; r; u), prescaled by u0^n.
std::vector<double> hyp_coeffs(double p, double q, double r, double u0,
                               double eps, int n_cap) {
    std::vector<double> h;
    h.reserve(64);
    double hn = 1.0;
    double peak = 1.0;
    for (int n = 0; n < n_cap; ++n) {
        h.push_back(hn);
        const double rho = (p + n) * (q + n) / ((r + n) * (n + 1.0)) * u0;
        hn *= rho;
        peak = std::max(peak, std::abs(hn));
        if (std::abs(rho) < 1.0 && std::abs(hn) < eps * peak) {
            h.push_back(hn);
            break;
        }
    }
    return h;
}

// Generic-s connection part: int_0^{u0} (1-u)^{c-1} G(1-u) du with
//   G(1-u) = A * 2F1(s, M+s; 2s; u) + Gamma(2s-1) u^{1-2s} 2F1(M+1-s, 1-s; 2-2s; u).
struct ConnectionData {
    double A;
    double B;
    std::vector<double> f1; // coefficients of 2F1(s, M+s; 2s; u), scaled by u0^n
    std::vector<double> f2; // coefficients of 2F1(M+1-s, 1-s; 2-2s; u)
    double u0;
    double s;
};

ConnectionData make_connection(double s, double M, double u0, double eps) {
    ConnectionData cd;
    cd.u0 = u0;
    cd.s = s;
    // Gamma(1-2s) and Gamma(2s-1) via the recurrence Gamma(z) = Gamma(z+1)/z,
    // valid on both sides of s = 1/2 (ln_gamma handles positive arguments).
    const double g_one_minus_2s = std::exp(ln_gamma(2.0 - 2.0 * s)) / (1.0 - 2.0 * s);
    const double g_2s_minus_1 = std::exp(ln_gamma(2.0 * s)) / (2.0 * s - 1.0);
    cd.A = std::exp(ln_gamma(s) - ln_gamma(1.0 - s)) * g_one_minus_2s *
           gamma_ratio(M + s, M + 1.0 - s);
    cd.B = g_2s_minus_1;
    cd.f1 = hyp_coeffs(s, M + s, 2.0 * s, u0, eps, kMaxTerms);
    cd.f2 = hyp_coeffs(M + 1.0 - s, 1.0 - s, 2.0 - 2.0 * s, u0, eps, kMaxTerms);
    return cd;
}

double connection_part(const ConnectionData& cd, double c, double eps) {
    const std::vector<double> f = binom_coeffs(c, cd.u0, eps, kMaxTerms);
    // T1 = sum_{j,n} f_j p_n u0^{j+n+1} / (j+n+1)   (u0 powers already folded in)
    // T2 = sum_{j,n} f_j q_n u0^{j+n+2-2s} / (j+n+2-2s)
    double t1 = 0.0;
    double t2 = 0.0;
    const double w = 2.0 - 2.0 * cd.s;
    const double u0w = std::pow(cd.u0, w); // u0^{2-2s}
    for (size_t j = 0; j < f.size(); ++j) {
        double s1 = 0.0;
        for (size_t n = 0; n < cd.f1.size(); ++n) {
            s1 += cd.f1[n] / (static_cast<double>(j + n) + 1.0);
        }
        double s2 = 0.0;
        for (size_t n = 0; n < cd.f2.size(); ++n) {
            s2 += cd.f2[n] / (static_cast<double>(j + n) + w);
        }
        t1 += f[j] * s1;
        t2 += f[j] * s2;
    }
    return cd.A * cd.u0 * t1 + cd.B * u0w * t2;
}

// s = 1/2 logarithmic connection:
//   G(1-u) = sum_n w_n (d_n - ln u) u^n,
//   w_n = (1/2)_n (M+1/2)_n / (n!)^2,
//   d_n = 2 psi(n+1) - psi(n+1/2) - psi(M+n+1/2).
struct LogConnectionData {
    std::vector<double> w; // scaled by u0^n
    std::vector<double> d;
    double u0;
};

LogConnectionData make_log_connection(double M, double u0, double eps) {
    LogConnectionData cd;
    cd.u0 = u0;
    double wn = 1.0;
    double dn = 2.0 * digamma(1.0) - digamma(0.5) - digamma(M + 0.5);
    double peak = 1.0;
    for (int n = 0; n < kMaxTerms; ++n) {
        cd.w.push_back(wn);
        cd.d.push_back(dn);
        const double rho = (n + 0.5) * (M + n + 0.5) / ((n + 1.0) * (n + 1.0)) * u0;
        wn *= rho;
        dn += 2.0 / (n + 1.0) - 1.0 / (n + 0.5) - 1.0 / (M + n + 0.5);
        peak = std::max(peak, std::abs(wn));
        if (rho < 1.0 && std::abs(wn) * (std::abs(dn) + 40.0) < eps * peak) {
            break;
        }
    }
    return cd;
}

double log_connection_part(const LogConnectionData& cd, double c, double eps) {
    const std::vector<double> f = binom_coeffs(c, cd.u0, eps, kMaxTerms);
    const double lnu0 = std::log(cd.u0);
    double total = 0.0;
    for (size_t j = 0; j < f.size(); ++j) {
        double sj = 0.0;
        for (size_t n = 0; n < cd.w.size(); ++n) {
            const double p1 = static_cast<double>(j + n) + 1.0;
            // int_0^{u0} u^{j+n} (d_n - ln u) du
            //   = u0^{j+n+1} [ (d_n - ln u0)/(j+n+1) + 1/(j+n+1)^2 ]
            sj += cd.w[n] * ((cd.d[n] - lnu0) / p1 + 1.0 / (p1 * p1));
        }
        total += f[j] * sj;
    }
    return cd.u0 * total;
}

constexpr double kLogCaseBand = 1e-9;

} // namespace

double khat(double s, double beta, int m, double tol) {
    validate(s, beta, m, tol);
    const double M = std::abs(m);
    const double a = (M - beta) / 2.0;
    const double b = (M + beta + 2.0 * s) / 2.0;
    const double pref =
        std::sin(kPi * s) / (std::pow(4.0, 1.0 - s) * kPi * kPi);

    // Split point: keep the connection-formula cancellation bounded by e^4
    // regardless of m.
    const double u0 = (M <= 8.0) ? 0.5 : 4.0 / M;
    const double y0 = 1.0 - u0;
    const double eps = std::min(tol, 1e-13) * 0.1;

    const GSeries g = make_gseries(s, M);
    double ia = power_part(g, a, y0, eps);
    double ib = power_part(g, b, y0, eps);

    if (std::abs(1.0 - 2.0 * s) < kLogCaseBand) {
        const LogConnectionData cd = make_log_connection(M, u0, eps);
        ia += log_connection_part(cd, a, eps);
        ib += log_connection_part(cd, b, eps);
    } else {
        const ConnectionData cd = make_connection(s, M, u0, eps);
        ia += connection_part(cd, a, eps);
        ib += connection_part(cd, b, eps);
    }
    return pref * 0.5 * (ia + ib);
}

double khat_inverse(double s, double beta, int m, double tol) {
    return khat(1.0 - s, beta + 2.0 * s - 2.0, m, tol);
}

double mu(double s, double beta, int m, double tol) {
    const double M = std::abs(m);
    // The polynomial factor is exact, so mu vanishes identically at |beta| = m
    // even though khat itself carries rounding error.
    return 2.0 * kPi * khat(s, beta, m, tol) * (M - beta) * (M + beta);
}

double gauss_sum(double a, double b, double c) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::domain_error("gauss_sum: a and b must be positive");
    }
    if (!(c > a + b)) {
        throw std::domain_error("gauss_sum: requires c > a + b");
    }
    return std::exp(ln_gamma(a) + ln_gamma(b) + ln_gamma(c - a - b) -
                    ln_gamma(c - a) - ln_gamma(c - b));
}

MultiplierTable build_table(double s, double beta, int m0, int m_max,
                            double tol) {
    if (m0 < 1 || m_max < m0) {
        throw std::domain_error("build_table: need 1 <= m0 <= m_max");
    }
    validate(s, beta, m0, tol); // worst-case window is the lowest mode
    MultiplierTable t;
    t.s = s;
    t.beta = beta;
    t.m0 = m0;
    const int n = m_max - m0 + 1;
    t.khat.resize(static_cast<size_t>(n));
    t.mu.resize(static_cast<size_t>(n));

    int threads = 1;
    if (const char* env = std::getenv("GSQG_THREADS")) {
        threads = std::max(1, std::atoi(env));
    }
    threads = std::min<int>(threads, std::max(1, n / 8));

    auto fill = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            const int m = m0 + i;
            t.khat[static_cast<size_t>(i)] = khat(s, beta, m, tol);
            t.mu[static_cast<size_t>(i)] = 2.0 * kPi *
                                           t.khat[static_cast<size_t>(i)] *
                                           (m - beta) * (m + beta);
        }
    };
    if (threads <= 1) {
        fill(0, n);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (n + threads - 1) / threads;
        for (int k = 0; k < threads; ++k) {
            const int lo = k * chunk;
            const int hi = std::min(n, lo + chunk);
            if (lo < hi) pool.emplace_back(fill, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return t;
}

double decay_exponent(const MultiplierTable& table, int m_lo, int m_hi) {
    if (m_lo < table.m0 || m_hi > table.m_max() || m_hi <= m_lo) {
        throw std::domain_error("decay_exponent: range outside table");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (int m = m_lo; m <= m_hi; ++m) {
        const double x = std::log(static_cast<double>(m));
        const double y = std::log(table.khat_at(m));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace gsqg
