#include <doctest.h>

#include "gsqg/kernels.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace gsqg::kernels;

namespace {

std::vector<double> random_vec(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(static_cast<size_t>(n));
    for (auto& x : v) x = uni(rng);
    return v;
}

// Naive O(n * modes) reference with direct std::sin calls.
std::vector<double> synthesis_naive(const std::vector<double>& a, int m0,
                                    int n_grid) {
    std::vector<double> out(static_cast<size_t>(n_grid), 0.0);
    for (int j = 0; j < n_grid; ++j) {
        const double t = 2.0 * M_PI * j / n_grid;
        double acc = 0.0;
        for (size_t i = 0; i < a.size(); ++i) {
            acc += a[i] * std::sin((m0 + static_cast<double>(i)) * t);
        }
        out[static_cast<size_t>(j)] = acc;
    }
    return out;
}

} // namespace

TEST_CASE("sine_synthesis matches the naive reference") {
    const auto a = random_vec(13, 42);
    for (int n : {32, 37, 100}) {
        std::vector<double> out(static_cast<size_t>(n));
        sine_synthesis(a.data(), 2, static_cast<int>(a.size()), out.data(), n);
        const auto ref = synthesis_naive(a, 2, n);
        for (int j = 0; j < n; ++j) {
            CHECK(out[static_cast<size_t>(j)] ==
                  doctest::Approx(ref[static_cast<size_t>(j)])
                      .epsilon(1e-12)
                      .scale(1.0));
        }
    }
}

TEST_CASE("scalar and AVX2 backends agree to 1e-12") {
    if (active_backend() != Backend::avx2) {
        MESSAGE("AVX2 not available; dispatch test skipped");
        return;
    }
    // Sizes chosen to exercise the 4-lane remainder paths.
    for (int n_grid : {64, 65, 66, 67, 257}) {
        for (int n_modes : {1, 7, 32}) {
            const auto coeffs = random_vec(n_modes, 7u * n_grid + n_modes);
            const auto values = random_vec(n_grid, 11u * n_grid + n_modes);

            std::vector<double> synth_a(static_cast<size_t>(n_grid));
            std::vector<double> synth_s(static_cast<size_t>(n_grid));
            std::vector<double> anal_a(static_cast<size_t>(n_modes));
            std::vector<double> anal_s(static_cast<size_t>(n_modes));
            std::vector<double> mom_a(static_cast<size_t>(2 * n_modes) + 1);
            std::vector<double> mom_s(mom_a.size());

            set_backend(Backend::avx2);
            sine_synthesis(coeffs.data(), 3, n_modes, synth_a.data(), n_grid);
            sine_analysis(values.data(), n_grid, 3, n_modes, anal_a.data());
            cosine_moments(values.data(), n_grid, 2 * n_modes, mom_a.data());

            set_backend(Backend::scalar);
            sine_synthesis(coeffs.data(), 3, n_modes, synth_s.data(), n_grid);
            sine_analysis(values.data(), n_grid, 3, n_modes, anal_s.data());
            cosine_moments(values.data(), n_grid, 2 * n_modes, mom_s.data());

            set_backend(Backend::avx2);

            for (int j = 0; j < n_grid; ++j) {
                CHECK(synth_a[static_cast<size_t>(j)] ==
                      doctest::Approx(synth_s[static_cast<size_t>(j)])
                          .epsilon(1e-12)
                          .scale(1.0));
            }
            for (int i = 0; i < n_modes; ++i) {
                CHECK(anal_a[static_cast<size_t>(i)] ==
                      doctest::Approx(anal_s[static_cast<size_t>(i)])
                          .epsilon(1e-12)
                          .scale(10.0));
            }
            for (size_t q = 0; q < mom_a.size(); ++q) {
                CHECK(mom_a[q] ==
                      doctest::Approx(mom_s[q]).epsilon(1e-12).scale(10.0));
            }
        }
    }
}

TEST_CASE("analysis inverts synthesis on exact sine data") {
    // values = sin(m theta) -> raw analysis sum = n/2 on mode m, 0 elsewhere.
    const int n = 128, m0 = 1, modes = 8;
    std::vector<double> values(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        values[static_cast<size_t>(j)] = std::sin(5.0 * 2.0 * M_PI * j / n);
    }
    std::vector<double> out(static_cast<size_t>(modes));
    sine_analysis(values.data(), n, m0, modes, out.data());
    for (int i = 0; i < modes; ++i) {
        const double expect = (m0 + i == 5) ? n / 2.0 : 0.0;
        CHECK(out[static_cast<size_t>(i)] ==
              doctest::Approx(expect).epsilon(1e-11).scale(64.0));
    }
}
