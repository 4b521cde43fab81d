#include "gsqg/spectral.hpp"

#include "gsqg/errors.hpp"
#include "gsqg/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace gsqg {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);

void require_resolved(int n, int m_max, const char* who) {
    if (n < 2 * m_max + 2) {
        throw DomainError(std::string(who) +
                          ": grid too coarse, need n >= 2*m_max + 2");
    }
}

} // namespace

double GridFunction::theta(int j) const { return 2.0 * kPi * j / n; }

GridFunction to_grid(const SineSeries& w, int n) {
    require_resolved(n, w.m_max(), "to_grid");
    GridFunction f;
    f.n = n;
    f.values.resize(static_cast<size_t>(n));
    kernels::sine_synthesis(w.coeffs.data(), w.m0,
                            static_cast<int>(w.coeffs.size()),
                            f.values.data(), n);
    for (auto& v : f.values) {
        v /= kSqrtPi;
    }
    return f;
}

AnalysisResult from_grid(const GridFunction& f, int m0, int m_max) {
    if (m0 < 1 || m_max < m0) {
        throw DomainError("from_grid: need 1 <= m0 <= m_max");
    }
    require_resolved(f.n, m_max, "from_grid");

    double vmax = 0.0;
    double sym = 0.0;
    for (int j = 1; j < f.n; ++j) {
        vmax = std::max(vmax, std::abs(f.values[static_cast<size_t>(j)]));
        sym = std::max(sym, std::abs(f.values[static_cast<size_t>(j)] +
                                     f.values[static_cast<size_t>(f.n - j)]));
    }
    const double sym_rel = vmax > 0.0 ? sym / vmax : 0.0;
    if (sym_rel > 1e-8) {
        throw DomainError("from_grid: odd-symmetry defect " +
                          std::to_string(sym_rel) + " exceeds 1e-8");
    }

    // Project onto all modes 1 .. m_max so the sub-m0 energy can be reported.
    std::vector<double> raw(static_cast<size_t>(m_max), 0.0);
    kernels::sine_analysis(f.values.data(), f.n, 1, m_max, raw.data());
    const double scale = 2.0 * kSqrtPi / f.n;

    AnalysisResult r;
    r.symmetry_error = sym_rel;
    r.discarded_energy = 0.0;
    for (int m = 1; m < m0; ++m) {
        const double a = scale * raw[static_cast<size_t>(m - 1)];
        r.discarded_energy += a * a;
    }
    r.series.m0 = m0;
    r.series.coeffs.resize(static_cast<size_t>(m_max - m0 + 1));
    for (int m = m0; m <= m_max; ++m) {
        r.series.coeffs[static_cast<size_t>(m - m0)] =
            scale * raw[static_cast<size_t>(m - 1)];
    }
    return r;
}

double sobolev_norm(const SineSeries& w, double l) {
    double acc = 0.0;
    for (size_t i = 0; i < w.coeffs.size(); ++i) {
        const double m = static_cast<double>(w.m0) + static_cast<double>(i);
        acc += std::pow(m * m + 1.0, l) * w.coeffs[i] * w.coeffs[i];
    }
    return std::sqrt(acc);
}

double dual_norm(const SineSeries& r, double s) { return sobolev_norm(r, -s); }

double bilinear_B(const SineSeries& w, const SineSeries& v,
                  const MultiplierTable& table) {
    const int lo = std::max(w.m0, v.m0);
    const int hi = std::min(w.m_max(), v.m_max());
    if (lo < table.m0 || hi > table.m_max()) {
        throw DomainError("bilinear_B: series modes outside multiplier table");
    }
    double acc = 0.0;
    for (int m = lo; m <= hi; ++m) {
        acc += table.mu_at(m) * w.at(m) * v.at(m);
    }
    return acc;
}

void nonlinearity(const double* w, int n, double p, double eps, double* out) {
    for (int j = 0; j < n; ++j) {
        const double x = w[j];
        if (x == 0.0 && eps == 0.0) {
            out[j] = 0.0;
        } else {
            out[j] = x * std::pow(x * x + eps * eps, 0.5 * p);
        }
    }
}

namespace {

struct NonlinearParams {
    double p;         // 2s/beta
    double coeff;     // c beta / (2 (beta + s))
    bool constant;    // |2 + p| ~ 0: the integral term is constant
};

NonlinearParams nonlinear_params(const MultiplierTable& table, double c) {
    const double s = table.s;
    const double beta = table.beta;
    if (std::abs(beta + s) < 1e-14) {
        throw DomainError("functional: beta + s = 0, functional undefined");
    }
    if (std::abs(beta) < 1e-14) {
        throw DomainError("functional: beta = 0, ansatz exponent undefined");
    }
    NonlinearParams np;
    np.p = 2.0 * s / beta;
    np.coeff = c * beta / (2.0 * (beta + s));
    np.constant = std::abs(2.0 + np.p) < 1e-12;
    return np;
}

} // namespace

double functional_I(const SineSeries& w, const MultiplierTable& table,
                    double c, int n_grid) {
    const NonlinearParams np = nonlinear_params(table, c);
    const double quad = 0.5 * bilinear_B(w, w, table);
    if (np.constant) {
        return quad - np.coeff * 2.0 * kPi;
    }
    const GridFunction f = to_grid(w, n_grid);
    double q = 0.0;
    const double expo = 2.0 + np.p;
    for (int j = 0; j < n_grid; ++j) {
        const double a = std::abs(f.values[static_cast<size_t>(j)]);
        q += (a == 0.0) ? 0.0 : std::pow(a, expo);
    }
    q *= 2.0 * kPi / n_grid;
    return quad - np.coeff * q;
}

SineSeries gradient_I(const SineSeries& w, const MultiplierTable& table,
                      double c, int n_grid, double eps_smooth) {
    const NonlinearParams np = nonlinear_params(table, c);
    if (w.m0 < table.m0 || w.m_max() > table.m_max()) {
        throw DomainError("gradient_I: series modes outside multiplier table");
    }
    SineSeries r;
    r.m0 = table.m0;
    r.coeffs.assign(table.khat.size(), 0.0);
    for (int m = w.m0; m <= w.m_max(); ++m) {
        r.at(m) = table.mu_at(m) * w.at(m);
    }
    if (np.constant) {
        return r;
    }
    const GridFunction f = to_grid(w, n_grid);
    std::vector<double> nu(static_cast<size_t>(n_grid));
    nonlinearity(f.values.data(), n_grid, np.p, eps_smooth, nu.data());
    // g_m = (nu, e_m) = (2pi/n) sum_j nu_j sin(m theta_j) / sqrt(pi).
    std::vector<double> proj(table.khat.size(), 0.0);
    kernels::sine_analysis(nu.data(), n_grid, table.m0,
                           static_cast<int>(proj.size()), proj.data());
    const double scale = 2.0 * kPi / n_grid / kSqrtPi;
    for (size_t i = 0; i < proj.size(); ++i) {
        r.coeffs[i] -= c * scale * proj[i];
    }
    return r;
}

} // namespace gsqg
