// Command-line front end: multiplier tables, oracle and identity checks,
// regime maps, steady-state solves, branch continuation and field export.
//
// Exit codes: 0 success, 1 domain/regime error, 2 numeric failure,
// 64 usage error. Diagnostics go to stderr; data to stdout or files.

#include "gsqg/errors.hpp"
#include "gsqg/field.hpp"
#include "gsqg/kernel_oracle.hpp"
#include "gsqg/multiplier.hpp"
#include "gsqg/solver.hpp"
#include "gsqg/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

using nlohmann::json;

namespace {

json series_json(const gsqg::SineSeries& f) {
    return json{{"m0", f.m0}, {"coeffs", f.coeffs}};
}

gsqg::SineSeries series_from_json(const json& j) {
    gsqg::SineSeries f;
    f.m0 = j.at("m0").get<int>();
    f.coeffs = j.at("coeffs").get<std::vector<double>>();
    return f;
}

json result_json(const gsqg::SolveResult& r) {
    return json{{"s", r.s},
                {"beta", r.beta},
                {"m0", r.m0},
                {"regime", gsqg::regime_name(r.regime)},
                {"c", r.c},
                {"w", series_json(r.w)},
                {"g", series_json(r.g)},
                {"grad_norm", r.grad_norm},
                {"I_value", r.I_value},
                {"decay_slope", r.decay_slope},
                {"iterations", r.iterations},
                {"rng_seed", r.rng_seed}};
}

void emit(const std::string& data, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << data;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw gsqg::NumericError("cannot open output file: " + path);
    }
    out << data;
    if (!out) {
        throw gsqg::NumericError("write failed: " + path);
    }
}

void emit_json(const json& j, const std::string& path) {
    emit(j.dump(2) + "\n", path);
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

json field_json(const gsqg::FieldGrid& f) {
    json j{{"r_min", f.spec.r_min}, {"r_max", f.spec.r_max},
           {"n_r", f.spec.n_r},     {"n_theta", f.spec.n_theta},
           {"s", f.s},              {"beta", f.beta},
           {"psi", f.psi},          {"omega", f.omega}};
    return j;
}

void export_field(const gsqg::FieldGrid& f, const std::string& format,
                  const std::string& output) {
    if (format == "csv") {
        emit(gsqg::field_csv(f), output);
    } else if (format == "svg") {
        emit(gsqg::field_svg_contours(f), output);
    } else if (format == "json") {
        emit_json(field_json(f), output);
    } else {
        throw gsqg::DomainError("unknown format: " + format);
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Spectral toolkit for homogeneous gSQG steady states"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file (key=value, mirrors flags)");

    double s = 0.5, beta = -1.0;
    int m0 = 1, m_max = 256;
    std::string output;

    // ---- multiplier ----
    auto* sc_mult = app.add_subcommand("multiplier", "Dump a multiplier table");
    double mult_tol = 1e-12;
    sc_mult->add_option("--s", s, "Fractional order in (0,1)")->required();
    sc_mult->add_option("--beta", beta, "Homogeneity exponent")->required();
    sc_mult->add_option("--m0", m0, "Lowest mode")->required();
    sc_mult->add_option("--m-max", m_max, "Highest mode");
    sc_mult->add_option("--tol", mult_tol, "Series tolerance");
    sc_mult->add_option("-o,--output", output, "Output path (default stdout)");
    sc_mult->callback([&] {
        const gsqg::MultiplierTable t =
            gsqg::build_table(s, beta, m0, m_max, mult_tol);
        emit_json(json{{"s", t.s},
                       {"beta", t.beta},
                       {"m0", t.m0},
                       {"khat", t.khat},
                       {"mu", t.mu}},
                  output);
    });

    // ---- oracle-check ----
    auto* sc_oracle =
        app.add_subcommand("oracle-check", "Series vs quadrature oracle (CSV)");
    double oracle_tol = 1e-8;
    int oracle_mmax = 8;
    sc_oracle->add_option("--s", s)->required();
    sc_oracle->add_option("--beta", beta, "Must lie in (-2s, 0)")->required();
    sc_oracle->add_option("--m-max", oracle_mmax);
    sc_oracle->add_option("--rel-tol", oracle_tol);
    sc_oracle->add_option("-o,--output", output);
    sc_oracle->callback([&] {
        const std::vector<double> orc =
            gsqg::oracle::kernel_fourier_coeffs(oracle_mmax, s, beta, oracle_tol);
        std::string csv = "m,series,quadrature,rel_diff\n";
        double worst = 0.0;
        for (int m = 0; m <= oracle_mmax; ++m) {
            const double kh = gsqg::khat(s, beta, m);
            const double oq = orc[static_cast<size_t>(m)];
            const double rel = std::abs(kh - oq) / std::abs(kh);
            worst = std::max(worst, rel);
            csv += std::to_string(m) + "," + fmt17(kh) + "," + fmt17(oq) +
                   "," + fmt17(rel) + "\n";
        }
        emit(csv, output);
        std::cerr << "max relative difference: " << fmt17(worst) << "\n";
    });

    // ---- identity-check ----
    auto* sc_id = app.add_subcommand(
        "identity-check", "Sweep the symbol identity (exact inverse relation)");
    int id_mmin = 1, id_mmax = 16, id_nbeta = 11;
    double id_tol = 1e-8;
    sc_id->add_option("--s", s)->required();
    sc_id->add_option("--m-min", id_mmin);
    sc_id->add_option("--m-max", id_mmax);
    sc_id->add_option("--n-beta", id_nbeta);
    sc_id->add_option("--tol", id_tol);
    sc_id->callback([&] {
        double worst = 0.0;
        for (int m = id_mmin; m <= id_mmax; ++m) {
            const double lo = -m + 0.05, hi = m - 0.05;
            for (int k = 0; k < id_nbeta; ++k) {
                const double b =
                    id_nbeta == 1 ? 0.5 * (lo + hi)
                                  : lo + (hi - lo) * k / (id_nbeta - 1.0);
                const double lhs = 4.0 * M_PI * M_PI *
                                   (double(m) * m - b * b) *
                                   gsqg::khat(s, b, m) *
                                   gsqg::khat_inverse(s, b, m);
                worst = std::max(worst, std::abs(lhs - 1.0));
            }
        }
        std::cout << "max deviation: " << fmt17(worst) << "\n";
        if (worst > id_tol) {
            throw gsqg::NumericError("identity deviation exceeds tolerance");
        }
    });

    // ---- regimes ----
    auto* sc_reg =
        app.add_subcommand("regimes", "Regime intervals over beta (JSON)");
    sc_reg->add_option("--s", s)->required();
    sc_reg->add_option("--m0", m0)->required();
    sc_reg->add_option("-o,--output", output);
    sc_reg->callback([&] {
        std::vector<double> ends = {-m0 - 2.0 * s, -2.0 * s, 0.0,
                                    static_cast<double>(m0)};
        if (s < 0.5) ends.push_back(0.5 - s);
        if (m0 == 1 && s >= 0.5) ends.push_back(-1.0);
        std::sort(ends.begin(), ends.end());
        ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
        // Intervals are labeled at the coarse granularity of the theorem's
        // picture (existence / nonexistence / open); the minimizing-saddle
        // split at beta = -m0 is interior to one red interval.
        auto coarse = [](gsqg::Regime r) -> const char* {
            switch (r) {
                case gsqg::Regime::exist_minimizing:
                case gsqg::Regime::exist_mountain_pass:
                case gsqg::Regime::exist_saddle: return "existence";
                case gsqg::Regime::nonexistence_interior:
                case gsqg::Regime::nonexistence_endpoint: return "nonexistence";
                case gsqg::Regime::irrotational_only: return "irrotational";
                case gsqg::Regime::open_gap: return "open";
                case gsqg::Regime::out_of_range: return "out-of-range";
            }
            return "?";
        };
        json intervals = json::array();
        for (size_t i = 0; i + 1 < ends.size(); ++i) {
            const double mid = 0.5 * (ends[i] + ends[i + 1]);
            intervals.push_back(
                {{"beta_lo", ends[i]},
                 {"beta_hi", ends[i + 1]},
                 {"class",
                  coarse(gsqg::classify_regime(s, mid, m0))}});
        }
        json points = json::array();
        for (double b : ends) {
            points.push_back(
                {{"beta", b},
                 {"regime",
                  gsqg::regime_name(gsqg::classify_regime(s, b, m0))}});
        }
        emit_json(json{{"s", s},
                       {"m0", m0},
                       {"endpoints", ends},
                       {"intervals", intervals},
                       {"endpoint_regimes", points}},
                  output);
    });

    // ---- solve ----
    auto* sc_solve = app.add_subcommand("solve", "Construct a steady state");
    gsqg::SolveConfig cfg;
    bool do_verify = false;
    sc_solve->add_option("--s", s)->required();
    sc_solve->add_option("--beta", beta)->required();
    sc_solve->add_option("--m0", m0)->required();
    sc_solve->add_option("--m-max", cfg.m_max);
    sc_solve->add_option("--n-grid", cfg.n_grid);
    sc_solve->add_option("--c", cfg.c);
    sc_solve->add_option("--grad-tol", cfg.grad_tol);
    sc_solve->add_option("--seed", cfg.rng_seed);
    sc_solve->add_flag("--verify", do_verify, "Run verify_solution checks");
    sc_solve->add_option("-o,--output", output);
    sc_solve->callback([&] {
        const gsqg::SolveResult r = gsqg::solve(s, beta, m0, cfg);
        json j = result_json(r);
        if (do_verify) {
            const gsqg::VerifyReport rep = gsqg::verify_solution(r, cfg);
            j["verify"] = {{"weak_residual", rep.weak_residual},
                           {"refit_delta", rep.refit_delta},
                           {"decay_slope", rep.decay_slope},
                           {"decay_required", rep.decay_required},
                           {"decay_ok", rep.decay_ok}};
        }
        emit_json(j, output);
    });

    // ---- branch ----
    auto* sc_branch =
        app.add_subcommand("branch", "Continuation over a beta range");
    double b_from = 0.0, b_to = 0.0;
    int n_steps = 8;
    gsqg::SolveConfig bcfg;
    sc_branch->add_option("--s", s)->required();
    sc_branch->add_option("--m0", m0)->required();
    sc_branch->add_option("--beta-from", b_from)->required();
    sc_branch->add_option("--beta-to", b_to)->required();
    sc_branch->add_option("--steps", n_steps);
    sc_branch->add_option("--m-max", bcfg.m_max);
    sc_branch->add_option("-o,--output", output);
    sc_branch->callback([&] {
        const gsqg::BranchResult br =
            gsqg::solution_branch(s, m0, b_from, b_to, n_steps, bcfg);
        json pts = json::array();
        for (const auto& r : br.points) pts.push_back(result_json(r));
        emit_json(json{{"points", pts}, {"failed_betas", br.failed_betas}},
                  output);
    });

    // ---- field ----
    auto* sc_field =
        app.add_subcommand("field", "Export psi/omega grids from a solution");
    std::string input, format = "csv";
    gsqg::GridSpec spec;
    sc_field->add_option("--input", input, "SolveResult JSON file")->required();
    sc_field->add_option("--format", format, "csv | json | svg");
    sc_field->add_option("--r-min", spec.r_min);
    sc_field->add_option("--r-max", spec.r_max);
    sc_field->add_option("--n-r", spec.n_r);
    sc_field->add_option("--n-theta", spec.n_theta);
    sc_field->add_option("-o,--output", output);
    sc_field->callback([&] {
        std::ifstream in(input);
        if (!in) throw gsqg::DomainError("cannot read input: " + input);
        json j = json::parse(in);
        const gsqg::SineSeries w = series_from_json(j.at("w"));
        const gsqg::SineSeries g = series_from_json(j.at("g"));
        const gsqg::FieldGrid f = gsqg::build_field(
            w, g, j.at("s").get<double>(), j.at("beta").get<double>(), spec);
        export_field(f, format, output);
    });

    // ---- irrotational ----
    auto* sc_irr = app.add_subcommand(
        "irrotational", "The irrotational family psi = r^-beta sin(beta theta)");
    gsqg::GridSpec ispec;
    std::string iformat = "svg";
    sc_irr->add_option("--beta", beta, "Nonzero integer")->required();
    sc_irr->add_option("--format", iformat, "csv | json | svg");
    sc_irr->add_option("--r-min", ispec.r_min);
    sc_irr->add_option("--r-max", ispec.r_max);
    sc_irr->add_option("--n-r", ispec.n_r);
    sc_irr->add_option("--n-theta", ispec.n_theta);
    sc_irr->add_option("-o,--output", output);
    sc_irr->callback([&] {
        export_field(gsqg::irrotational_field(beta, ispec), iformat, output);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 64;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const gsqg::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const gsqg::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
