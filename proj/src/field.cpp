#include "gsqg/field.hpp"

#include "gsqg/errors.hpp"
#include "gsqg/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace gsqg {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_spec(const GridSpec& spec) {
    if (!(spec.r_min > 0.0)) {
        throw DomainError("field: r_min must be positive (origin excluded)");
    }
    if (!(spec.r_max > spec.r_min)) {
        throw DomainError("field: r_max must exceed r_min");
    }
    if (spec.n_r < 2 || spec.n_theta < 2) {
        throw DomainError("field: grid sizes must be >= 2");
    }
}

std::vector<double> sample_profile(const SineSeries& f, int n_theta) {
    std::vector<double> vals(static_cast<size_t>(n_theta), 0.0);
    if (!f.coeffs.empty()) {
        kernels::sine_synthesis(f.coeffs.data(), f.m0,
                                static_cast<int>(f.coeffs.size()), vals.data(),
                                n_theta);
        const double inv_sqrt_pi = 1.0 / std::sqrt(kPi);
        for (auto& v : vals) v *= inv_sqrt_pi;
    }
    return vals;
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt_coord(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", x);
    return buf;
}

} // namespace

FieldGrid build_field(const SineSeries& w, const SineSeries& g, double s,
                      double beta, const GridSpec& spec) {
    validate_spec(spec);
    if (!g.coeffs.empty() && !w.coeffs.empty() && g.m0 != w.m0) {
        throw DomainError("field: w and g must share m0");
    }
    FieldGrid grid;
    grid.spec = spec;
    grid.s = s;
    grid.beta = beta;
    const std::vector<double> wv = sample_profile(w, spec.n_theta);
    const std::vector<double> gv = sample_profile(g, spec.n_theta);
    grid.psi.resize(static_cast<size_t>(spec.n_r) * spec.n_theta);
    grid.omega.resize(grid.psi.size());
    for (int i = 0; i < spec.n_r; ++i) {
        const double r = grid.r(i);
        const double rpsi = std::pow(r, -beta);
        const double romega = std::pow(r, -beta - 2.0 * s);
        for (int j = 0; j < spec.n_theta; ++j) {
            const size_t idx = static_cast<size_t>(i) * spec.n_theta + j;
            grid.psi[idx] = wv[static_cast<size_t>(j)] * rpsi;
            grid.omega[idx] = gv[static_cast<size_t>(j)] * romega;
        }
    }
    return grid;
}

FieldGrid irrotational_field(double beta, const GridSpec& spec) {
    validate_spec(spec);
    const double rounded = std::round(beta);
    if (beta == 0.0 || std::abs(beta - rounded) > 1e-12) {
        throw DomainError(
            "irrotational_field: beta must be a nonzero integer");
    }
    FieldGrid grid;
    grid.spec = spec;
    grid.s = 0.0;
    grid.beta = beta;
    grid.psi.resize(static_cast<size_t>(spec.n_r) * spec.n_theta);
    grid.omega.assign(grid.psi.size(), 0.0);
    for (int i = 0; i < spec.n_r; ++i) {
        const double rpsi = std::pow(grid.r(i), -beta);
        for (int j = 0; j < spec.n_theta; ++j) {
            grid.psi[static_cast<size_t>(i) * spec.n_theta + j] =
                rpsi * std::sin(beta * grid.theta(j));
        }
    }
    return grid;
}

std::string field_csv(const FieldGrid& field) {
    std::string out = "r,theta,psi,omega\n";
    for (int i = 0; i < field.spec.n_r; ++i) {
        for (int j = 0; j < field.spec.n_theta; ++j) {
            out += fmt17(field.r(i));
            out += ',';
            out += fmt17(field.theta(j));
            out += ',';
            out += fmt17(field.psi_at(i, j));
            out += ',';
            out += fmt17(field.omega_at(i, j));
            out += '\n';
        }
    }
    return out;
}

namespace {

struct Pt {
    double x, y;
};

// Linear interpolation of the level crossing between two nodes.
Pt lerp(const Pt& a, double va, const Pt& b, double vb, double level) {
    const double t = (level - va) / (vb - va);
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

} // namespace

std::string field_svg_contours(const FieldGrid& field, int n_levels) {
    if (n_levels < 1) {
        throw DomainError("field_svg_contours: n_levels must be >= 1");
    }
    const GridSpec& spec = field.spec;
    double vmax = 0.0;
    for (double v : field.psi) vmax = std::max(vmax, std::abs(v));
    if (vmax == 0.0) vmax = 1.0;

    const double extent = spec.r_max * 1.05;
    std::string svg =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
        "height=\"640\" viewBox=\"" +
        fmt_coord(-extent) + " " + fmt_coord(-extent) + " " +
        fmt_coord(2.0 * extent) + " " + fmt_coord(2.0 * extent) + "\">\n";
    svg += "<rect x=\"" + fmt_coord(-extent) + "\" y=\"" + fmt_coord(-extent) +
           "\" width=\"" + fmt_coord(2.0 * extent) + "\" height=\"" +
           fmt_coord(2.0 * extent) + "\" fill=\"white\"/>\n";

    auto node = [&](int i, int j) -> Pt {
        const double r = field.r(i);
        const double t = field.theta(j % spec.n_theta);
        return {r * std::cos(t), -r * std::sin(t)}; // SVG y-axis points down
    };

    for (int lv = 0; lv < n_levels; ++lv) {
        // Symmetric levels in (-vmax, vmax), endpoints excluded.
        const double level = vmax * (2.0 * (lv + 1) / (n_levels + 1.0) - 1.0);
        const bool positive = level > 0.0;
        std::string path;
        for (int i = 0; i + 1 < spec.n_r; ++i) {
            for (int j = 0; j < spec.n_theta; ++j) {
                const int jn = j + 1;
                const Pt p00 = node(i, j), p01 = node(i, jn);
                const Pt p10 = node(i + 1, j), p11 = node(i + 1, jn);
                const double v00 = field.psi_at(i, j);
                const double v01 = field.psi_at(i, jn % spec.n_theta);
                const double v10 = field.psi_at(i + 1, j);
                const double v11 = field.psi_at(i + 1, jn % spec.n_theta);
                // Marching squares: collect edge crossings in a fixed order.
                Pt cross[4];
                int nc = 0;
                auto edge = [&](const Pt& a, double va, const Pt& b,
                                double vb) {
                    if ((va < level) != (vb < level)) {
                        cross[nc++] = lerp(a, va, b, vb, level);
                    }
                };
                edge(p00, v00, p01, v01);
                edge(p01, v01, p11, v11);
                edge(p11, v11, p10, v10);
                edge(p10, v10, p00, v00);
                for (int k = 0; k + 1 < nc; k += 2) {
                    path += "M" + fmt_coord(cross[k].x) + " " +
                            fmt_coord(cross[k].y) + "L" +
                            fmt_coord(cross[k + 1].x) + " " +
                            fmt_coord(cross[k + 1].y);
                }
            }
        }
        if (!path.empty()) {
            svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" +
                   (positive ? std::string("#c0392b")
                             : std::string("#2980b9")) +
                   "\" stroke-width=\"0.01\"/>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace gsqg
