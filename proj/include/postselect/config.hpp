#pragma once

// Run configuration: line-oriented `key = value` text with dotted keys,
// `#` comments, and command-line overrides taking precedence.

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "postselect/common.hpp"
#include "postselect/model.hpp"

namespace postselect {

struct MiracleInputs {
    Complex alpha{0.8660254037844386, 0.0};  // sqrt(3)/2
    Complex beta{0.5, 0.0};
    Complex gamma{0.7559289460184544, 0.0};  // 2/sqrt(7)
    Complex delta{-0.6546536707079771, 0.0}; // -sqrt(3/7)
    double omega = 2.0;
    double k = 2.0;
};

struct RunConfig {
    ModelParams model;
    std::vector<double> k_grid;
    std::vector<double> eta_grid;
    int n_max = 40;
    double trajectory_k = 1.0;
    MiracleInputs miracle;
    std::map<std::string, double> tolerances;
    std::string output_dir = ".";
    bool want_csv = true;
    bool want_svg = false;

    double tolerance(const std::string& name, double fallback) const {
        const auto it = tolerances.find(name);
        return it == tolerances.end() ? fallback : it->second;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline double parse_number(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(x))
        throw usage_error("config: key '" + key + "' needs a finite number, got '" + v + "'");
    return x;
}

inline std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_number(key, item));
    if (out.empty())
        throw usage_error("config: key '" + key + "' needs a comma-separated list");
    return out;
}

struct GridSpec {
    double min = 0.0, max = 0.0;
    int count = 0;
    std::vector<double> list;
    bool has_range = false;

    std::vector<double> resolve(const std::string& key) const {
        if (!list.empty()) return list;
        if (!has_range)
            throw usage_error("config: grid '" + key + "' has neither range nor list");
        if (count < 1)
            throw usage_error("config: key '" + key + ".count' must be at least 1");
        if (count == 1) return {min};
        if (!(min < max))
            throw usage_error("config: key '" + key + ".min' must be below '" + key + ".max'");
        std::vector<double> g(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i)
            g[static_cast<std::size_t>(i)] =
                min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
        g.back() = max;
        return g;
    }
};

} // namespace detail

inline const std::map<std::string, double>& default_tolerances() {
    static const std::map<std::string, double> defaults = {
        {"gamma_recurrence", 1e-12},
        {"gamma_reflection", 1e-10},
        {"hyp2f1_routes", 1e-9},
        {"bogoliubov_identity", 1e-10},
        {"bogoliubov_sinh", 1e-10},
        {"wronskian", 1e-8},
        {"mode_relation", 1e-8},
        {"trajectory_endpoints", 1e-6},
        {"gaussian_vs_oracle", 1e-8},
        {"vacuum_overlap", 1e-10},
        {"miracle", 1e-12},
        {"conformal_trivial", 1e-12},
        {"expectation_reduction", 1e-12},
        {"ode", 1e-10},
        {"amplification", 0.1},
    };
    return defaults;
}

// Applies one key/value pair; throws usage_error for unknown keys or
// malformed values.
namespace detail {

struct ConfigBuilder {
    RunConfig cfg;
    GridSpec k_spec{0.25, 8.0, 32, {}, true};
    GridSpec eta_spec{-8.0, 8.0, 65, {}, true};

    ConfigBuilder() { cfg.tolerances = default_tolerances(); }

    void set(const std::string& key, const std::string& value) {
        if (key == "model.A") cfg.model.A = parse_number(key, value);
        else if (key == "model.B") cfg.model.B = parse_number(key, value);
        else if (key == "model.rho") cfg.model.rho = parse_number(key, value);
        else if (key == "model.m") cfg.model.m = parse_number(key, value);
        else if (key == "k_grid.min") { k_spec.min = parse_number(key, value); k_spec.has_range = true; }
        else if (key == "k_grid.max") { k_spec.max = parse_number(key, value); k_spec.has_range = true; }
        else if (key == "k_grid.count") { k_spec.count = static_cast<int>(parse_number(key, value)); k_spec.has_range = true; }
        else if (key == "k_grid.list") k_spec.list = parse_list(key, value);
        else if (key == "eta_grid.min") { eta_spec.min = parse_number(key, value); eta_spec.has_range = true; }
        else if (key == "eta_grid.max") { eta_spec.max = parse_number(key, value); eta_spec.has_range = true; }
        else if (key == "eta_grid.count") { eta_spec.count = static_cast<int>(parse_number(key, value)); eta_spec.has_range = true; }
        else if (key == "eta_grid.list") eta_spec.list = parse_list(key, value);
        else if (key == "n_max") cfg.n_max = static_cast<int>(parse_number(key, value));
        else if (key == "trajectory.k") cfg.trajectory_k = parse_number(key, value);
        else if (key == "miracle.alpha_re") cfg.miracle.alpha.real(parse_number(key, value));
        else if (key == "miracle.alpha_im") cfg.miracle.alpha.imag(parse_number(key, value));
        else if (key == "miracle.beta_re") cfg.miracle.beta.real(parse_number(key, value));
        else if (key == "miracle.beta_im") cfg.miracle.beta.imag(parse_number(key, value));
        else if (key == "miracle.gamma_re") cfg.miracle.gamma.real(parse_number(key, value));
        else if (key == "miracle.gamma_im") cfg.miracle.gamma.imag(parse_number(key, value));
        else if (key == "miracle.delta_re") cfg.miracle.delta.real(parse_number(key, value));
        else if (key == "miracle.delta_im") cfg.miracle.delta.imag(parse_number(key, value));
        else if (key == "miracle.omega") cfg.miracle.omega = parse_number(key, value);
        else if (key == "miracle.k") cfg.miracle.k = parse_number(key, value);
        else if (key == "output.dir") cfg.output_dir = trim(value);
        else if (key == "output.formats") parse_formats(value);
        else if (key.rfind("tolerances.", 0) == 0) {
            const std::string name = key.substr(11);
            if (default_tolerances().find(name) == default_tolerances().end())
                throw usage_error("config: unknown tolerance '" + name + "'");
            const double t = parse_number(key, value);
            if (t < 0.0)
                throw usage_error("config: key '" + key + "' must be nonnegative");
            cfg.tolerances[name] = t;
        } else
            throw usage_error("config: unknown key '" + key + "'");
    }

    void parse_formats(const std::string& value) {
        cfg.want_csv = false;
        cfg.want_svg = false;
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const std::string f = trim(item);
            if (f == "csv") cfg.want_csv = true;
            else if (f == "svg") cfg.want_svg = true;
            else throw usage_error("config: unknown output format '" + f + "'");
        }
        if (!cfg.want_csv && !cfg.want_svg)
            throw usage_error("config: output.formats must include csv or svg");
    }

    RunConfig finish() {
        cfg.k_grid = k_spec.resolve("k_grid");
        cfg.eta_grid = eta_spec.resolve("eta_grid");
        cfg.model.validate();
        if (cfg.n_max < 4)
            throw usage_error("config: n_max must be at least 4");
        for (std::size_t i = 1; i < cfg.k_grid.size(); ++i)
            if (!(cfg.k_grid[i] > cfg.k_grid[i - 1]))
                throw usage_error("config: k_grid must increase strictly");
        for (std::size_t i = 1; i < cfg.eta_grid.size(); ++i)
            if (!(cfg.eta_grid[i] > cfg.eta_grid[i - 1]))
                throw usage_error("config: eta_grid must increase strictly");
        if (cfg.output_dir.empty())
            throw usage_error("config: output.dir must not be empty");
        return cfg;
    }
};

} // namespace detail

// overrides: already-split key/value pairs (e.g. from --set key=value),
// applied after the file in the order given.
inline RunConfig parse_config(const std::string& path,
                              const std::vector<std::pair<std::string, std::string>>& overrides = {}) {
    detail::ConfigBuilder builder;
    if (!path.empty()) {
        std::ifstream file(path);
        if (!file)
            throw usage_error("config: cannot open '" + path + "'");
        std::string line;
        int lineno = 0;
        while (std::getline(file, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const std::string t = detail::trim(line);
            if (t.empty()) continue;
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                throw usage_error("config: line " + std::to_string(lineno) +
                                  " of '" + path + "' is not 'key = value'");
            builder.set(detail::trim(t.substr(0, eq)), detail::trim(t.substr(eq + 1)));
        }
    }
    for (const auto& [key, value] : overrides)
        builder.set(key, value);
    return builder.finish();
}

} // namespace postselect
