#pragma once

// Reconstruction of the two-dimensional homogeneous fields
//   psi(r, theta) = w(theta) / r^beta,   omega(r, theta) = g(theta) / r^{beta+2s}
// on an annulus (the origin is excluded: the fields are singular or
// degenerate there), plus deterministic CSV / SVG-contour export.

#include "gsqg/spectral.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace gsqg {

struct GridSpec {
    double r_min = 0.2;
    double r_max = 2.0;
    int n_r = 128;
    int n_theta = 256;
};

struct FieldGrid {
    GridSpec spec;
    double s = 0.0;
    double beta = 0.0;
    // Row-major (n_r x n_theta); r varies with the row index.
    std::vector<double> psi;
    std::vector<double> omega;

    double r(int i) const {
        return spec.r_min +
               (spec.r_max - spec.r_min) * i / (spec.n_r - 1.0);
    }
    double theta(int j) const {
        return 2.0 * 3.14159265358979323846 * j / spec.n_theta;
    }
    double psi_at(int i, int j) const {
        return psi[static_cast<size_t>(i) * spec.n_theta + j];
    }
    double omega_at(int i, int j) const {
        return omega[static_cast<size_t>(i) * spec.n_theta + j];
    }
};

// Samples psi = w/r^beta and omega = g/r^{beta+2s}. Throws DomainError on
// r_min <= 0, grid sizes < 2, or mismatched m0 between w and g.
FieldGrid build_field(const SineSeries& w, const SineSeries& g, double s,
                      double beta, const GridSpec& spec = {});

// The irrotational family psi = r^{-beta} sin(beta theta), omega = 0, defined
// for nonzero integer beta. Throws DomainError otherwise.
FieldGrid irrotational_field(double beta, const GridSpec& spec = {});

// CSV with header "r,theta,psi,omega", one row per grid node, 17 significant
// digits, bit-stable across runs.
std::string field_csv(const FieldGrid& field);

// Deterministic SVG: marching-squares contours of psi on the (r,theta) ->
// (x,y) mapped annulus, n_levels symmetric levels in (-max|psi|, max|psi|).
std::string field_svg_contours(const FieldGrid& field, int n_levels = 15);

} // namespace gsqg
