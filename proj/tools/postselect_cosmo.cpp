// postselect-cosmo: weak values of quantum-field observables in the tanh
// cosmology under independent pre- and post-selection.
//
//   postselect-cosmo <subcommand> [--config PATH] [--set key=value]...
//                    [--out DIR] [--svg]
//
// Subcommands: spectrum, trajectory, stress, miracle, overlap, verify.
// Exit codes: 0 success, 1 usage, 2 numerical failure, 3 (near-)orthogonal
// post-selection.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "postselect/config.hpp"
#include "postselect/table.hpp"
#include "postselect/verify.hpp"
#include "postselect/weakfield.hpp"

namespace {

using namespace postselect;

std::string out_path(const RunConfig& cfg, const std::string& stem, const char* ext) {
    std::filesystem::create_directories(cfg.output_dir);
    return (std::filesystem::path(cfg.output_dir) / (stem + ext)).string();
}

void emit(const RunConfig& cfg, const std::string& stem, const ResultTable& table,
          std::size_t x_col, std::vector<std::size_t> series, std::string& files) {
    if (cfg.want_csv) {
        const std::string p = out_path(cfg, stem, ".csv");
        table.write_csv(p);
        files = p;
    }
    if (cfg.want_svg) {
        const std::string p = out_path(cfg, stem, ".svg");
        table.write_svg(p, x_col, series);
        files += (files.empty() ? "" : ", ") + p;
    }
}

int cmd_spectrum(const RunConfig& cfg) {
    ResultTable t;
    t.add_real_column("k");
    t.add_real_column("omega_in");
    t.add_real_column("omega_out");
    t.add_complex_column("alpha");
    t.add_complex_column("beta");
    t.add_real_column("beta_sq");
    double max_n = 0.0;
    for (double k : cfg.k_grid) {
        const Frequencies fr = frequencies(cfg.model, k);
        const BogoliubovPair bog = bogoliubov_closed_form(cfg.model, k);
        const double n_k = std::norm(bog.beta);
        max_n = std::max(max_n, n_k);
        const Complex row[] = {Complex(k, 0), Complex(fr.omega_in, 0),
                               Complex(fr.omega_out, 0), bog.alpha, bog.beta,
                               Complex(n_k, 0)};
        t.add_row(row);
    }
    std::string files;
    emit(cfg, "spectrum", t, 0, {7}, files); // beta_sq vs k
    std::printf("spectrum: %zu modes, max particle number %.6g; wrote %s\n",
                cfg.k_grid.size(), max_n, files.c_str());
    return 0;
}

int cmd_trajectory(const RunConfig& cfg) {
    const WeakTrajectory traj =
        weak_number_trajectory(cfg.model, cfg.trajectory_k, cfg.eta_grid);
    const BogoliubovPair bog = bogoliubov_closed_form(cfg.model, cfg.trajectory_k);
    (void)bog;
    ResultTable t;
    t.add_real_column("eta");
    t.add_complex_column("w_N");
    t.add_real_column("n_expect");
    double peak = 0.0, peak_eta = traj.eta_grid.front();
    for (std::size_t i = 0; i < traj.eta_grid.size(); ++i) {
        const ProjectionPair pr = mode_projections(cfg.model, cfg.trajectory_k,
                                                   traj.eta_grid[i]);
        const double n_exp = 2.0 * std::norm(pr.p_minus);
        if (traj.w_n[i].real() > peak) {
            peak = traj.w_n[i].real();
            peak_eta = traj.eta_grid[i];
        }
        const Complex row[] = {Complex(traj.eta_grid[i], 0), traj.w_n[i],
                               Complex(n_exp, 0)};
        t.add_row(row);
    }
    std::string files;
    emit(cfg, "trajectory", t, 0, {1, 2}, files); // w_N_re, w_N_im vs eta
    std::printf("trajectory: k = %g, %zu times, max Re(w_N) = %.6g at eta = %g; wrote %s\n",
                cfg.trajectory_k, traj.eta_grid.size(), peak, peak_eta, files.c_str());
    return 0;
}

int cmd_stress(const RunConfig& cfg) {
    ResultTable t;
    t.add_real_column("eta");
    t.add_complex_column("dT00");
    t.add_complex_column("dT01");
    t.add_complex_column("dT11");
    t.add_real_column("k_max");
    t.add_real_column("n_modes");
    double max00 = 0.0;
    int n_modes = 0;
    for (double eta : cfg.eta_grid) {
        const StressDifference sd = stress_difference(cfg.model, eta, cfg.k_grid);
        max00 = std::max(max00, std::abs(sd.d_t00));
        n_modes = sd.n_modes;
        const Complex row[] = {Complex(eta, 0), sd.d_t00, sd.d_t01, sd.d_t11,
                               Complex(sd.k_max, 0), Complex(double(sd.n_modes), 0)};
        t.add_row(row);
    }
    std::string files;
    emit(cfg, "stress", t, 0, {1, 2, 5, 6}, files); // dT00, dT11 (re, im)
    std::printf("stress: %d mode pairs, %zu times, max |dT00| = %.6g; wrote %s\n",
                n_modes, cfg.eta_grid.size(), max00, files.c_str());
    return 0;
}

int cmd_miracle(const RunConfig& cfg) {
    const MiracleInputs& mi = cfg.miracle;
    const Complex w = miracle_number_weak(mi.alpha, mi.beta, mi.gamma, mi.delta);
    const auto [t00, t11] =
        miracle_stress_weak(mi.alpha, mi.beta, mi.gamma, mi.delta, mi.omega, mi.k);
    const double overlap =
        std::abs(mi.alpha * std::conj(mi.gamma) + mi.beta * std::conj(mi.delta));
    const bool amplified = overlap < cfg.tolerance("amplification", 0.1);
    ResultTable t;
    t.add_complex_column("w_N");
    t.add_complex_column("T00");
    t.add_complex_column("T11");
    t.add_real_column("overlap_magnitude");
    t.add_real_column("amplified");
    const Complex row[] = {w, t00, t11, Complex(overlap, 0),
                           Complex(amplified ? 1.0 : 0.0, 0)};
    t.add_row(row);
    std::string files;
    emit(cfg, "miracle", t, 0, {1, 2, 3}, files);
    std::printf("miracle: w_N = %.12g%+.12gi, overlap %.6g%s; wrote %s\n",
                w.real(), w.imag(), overlap, amplified ? " (amplified)" : "",
                files.c_str());
    return 0;
}

int cmd_overlap(const RunConfig& cfg) {
    std::vector<double> pairs;
    for (double k : cfg.k_grid)
        if (k > 0.0) pairs.push_back(k);
    if (pairs.empty())
        throw usage_error("overlap: k_grid has no positive pair labels");
    const VacuumOverlapResult ov = vacuum_overlap(cfg.model, pairs);
    ResultTable t;
    t.add_real_column("k");
    t.add_complex_column("overlap");
    t.add_real_column("product_magnitude");
    t.add_complex_column("W");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const Complex row[] = {Complex(pairs[i], 0), ov.per_mode[i],
                               Complex(ov.product_magnitude, 0), ov.effective_action};
        t.add_row(row);
    }
    std::string files;
    emit(cfg, "overlap", t, 0, {1, 2}, files);
    std::printf("overlap: %zu pairs, |<0_out|0_in>| = %.12g, W = %.12g%+.12gi; wrote %s\n",
                pairs.size(), ov.product_magnitude, ov.effective_action.real(),
                ov.effective_action.imag(), files.c_str());
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    const std::vector<VerifyCheck> checks = run_verification(cfg);
    int passed = 0;
    for (const auto& c : checks) {
        std::printf("%s  %-22s max_error = %-12.4g tolerance = %g\n",
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.max_error, c.tolerance);
        if (c.pass) ++passed;
    }
    std::string files;
    if (cfg.want_csv) {
        const std::string p = out_path(cfg, "verify", ".csv");
        std::ofstream out(p);
        out << "check,max_error,tolerance,pass\n";
        for (const auto& c : checks)
            out << c.name << "," << detail::format_number(c.max_error) << ","
                << detail::format_number(c.tolerance) << "," << (c.pass ? 1 : 0) << "\n";
        files = p;
    }
    if (cfg.want_svg) {
        ResultTable t;
        t.add_real_column("check_index");
        t.add_real_column("max_error");
        t.add_real_column("tolerance");
        for (std::size_t i = 0; i < checks.size(); ++i) {
            const Complex row[] = {Complex(double(i), 0), Complex(checks[i].max_error, 0),
                                   Complex(checks[i].tolerance, 0)};
            t.add_row(row);
        }
        const std::string p = out_path(cfg, "verify", ".svg");
        t.write_svg(p, 0, std::vector<std::size_t>{1, 2});
        files += (files.empty() ? "" : ", ") + p;
    }
    std::printf("verify: %d/%zu checks passed%s%s\n", passed, checks.size(),
                files.empty() ? "" : "; wrote ", files.c_str());
    return passed == static_cast<int>(checks.size()) ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak values of quantum-field observables in an exactly "
                 "solvable expanding universe"};
    app.require_subcommand(1);
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir;
    bool svg = false;

    const char* names[] = {"spectrum", "trajectory", "stress", "miracle", "overlap",
                           "verify"};
    const char* blurbs[] = {
        "particle spectrum and Bogoliubov coefficients over the k grid",
        "quasiparticle-number weak-value trajectory w_N(eta) for one mode",
        "weak-minus-expectation stress difference over the eta grid",
        "finite-dimensional particle-number and stress weak values",
        "in/out vacuum overlap per mode and the effective action",
        "run the invariant verification suite"};
    for (int i = 0; i < 6; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
        sub->add_option("--config", config_path, "configuration file (key = value lines)");
        sub->add_option("--set", sets, "override a configuration key, e.g. --set model.B=0")
            ->expected(1)
            ->allow_extra_args(false)
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
        sub->add_option("--out", out_dir, "output directory");
        sub->add_flag("--svg", svg, "also write SVG plots");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        std::vector<std::pair<std::string, std::string>> overrides;
        for (const std::string& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos)
                throw postselect::usage_error("--set expects key=value, got '" + s + "'");
            overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
        }
        if (!out_dir.empty()) overrides.emplace_back("output.dir", out_dir);
        if (svg) overrides.emplace_back("output.formats", "csv,svg");
        const postselect::RunConfig cfg = postselect::parse_config(config_path, overrides);

        if (app.got_subcommand("spectrum")) return cmd_spectrum(cfg);
        if (app.got_subcommand("trajectory")) return cmd_trajectory(cfg);
        if (app.got_subcommand("stress")) return cmd_stress(cfg);
        if (app.got_subcommand("miracle")) return cmd_miracle(cfg);
        if (app.got_subcommand("overlap")) return cmd_overlap(cfg);
        return cmd_verify(cfg);
    } catch (const postselect::usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const postselect::postselection_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const postselect::numerical_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const postselect::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
