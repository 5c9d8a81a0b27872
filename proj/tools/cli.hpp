#pragma once

/** \file cli.hpp
 *
 *  \brief Subcommands of the qes tool. Each command turns a RunConfig into
 *         the text it prints; main() only parses flags and maps errors onto
 *         exit codes (0 ok, 1 usage, 2 domain or numerical failure).
 */

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qes/io.hpp"
#include "qes/qes.hpp"

namespace qes::cli {

inline constexpr int json_schema_version = 1;
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_failure = 2;

struct RunConfig
{
    std::string command;

    // either s ...
    std::optional<double> s;
    // ... or the physical block
    double m{1.0};
    double p_z{0.0};
    std::optional<double> alpha;
    std::optional<int> l;
    double g{1.0};
    double b{1.0};
    double chi{0.0};

    std::string theta{"0"};
    std::optional<double> theta_min; ///< figure: default covers every root, plus 1
    std::optional<double> theta_max;
    double theta_step{0.1};
    double refine_spacing{0.02};

    int n{1};
    int i{1};
    int n_max{10};   ///< table: largest basis size
    int k{4};
    int j_max{-1};   ///< figure: highest curve, defaults to degree_max
    int degree_max{6};
    int basis_size{20};
    int level{0};
    bool check{false};
    std::string precision{"wide"};

    std::string format;
    std::string output;
};

inline Precision precision_of(RunConfig const& cfg)
{
    return cfg.precision == "double" ? Precision::binary64 : Precision::wide;
}

inline PhysicalParameters physical_of(RunConfig const& cfg)
{
    PhysicalParameters p;
    p.m = cfg.m;
    p.p_z = cfg.p_z;
    p.alpha = cfg.alpha.value_or(0.0);
    p.l = cfg.l.value_or(0);
    p.g = cfg.g;
    p.b = cfg.b;
    p.chi = cfg.chi;
    return p;
}

/// s from --s, or from --l/--alpha when the physical block is given.
inline double exponent_of(RunConfig const& cfg)
{
    if (cfg.s) {
        return *cfg.s;
    }
    if (cfg.l) {
        return radial_exponent(physical_of(cfg));
    }
    return 0.0;
}

inline nlohmann::ordered_json num(double v) { return io::round_number(v); }

inline nlohmann::ordered_json inputs_json(RunConfig const& cfg)
{
    auto const p = physical_of(cfg);
    return {{"m", num(p.m)}, {"p_z", num(p.p_z)}, {"alpha", num(p.alpha)}, {"l", p.l},
            {"g", num(p.g)}, {"b", num(p.b)},     {"chi", num(p.chi)}};
}

inline std::string dump(nlohmann::ordered_json const& j) { return j.dump(2) + "\n"; }

inline std::string cmd_truncate(RunConfig const& cfg)
{
    double const s = exponent_of(cfg);
    auto const sol = truncate(cfg.n, s);
    std::vector<int> nodes;
    for (int i = 1; i <= sol.n + 1; ++i) {
        nodes.push_back(count_nodes(eigenfunction(sol, i)));
    }

    if (cfg.format == "json") {
        nlohmann::ordered_json roots = nlohmann::ordered_json::array();
        for (int i = 1; i <= sol.n + 1; ++i) {
            auto const idx = static_cast<std::size_t>(i - 1);
            nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
            for (double a : sol.coeff_table[idx]) {
                coeffs.push_back(num(a));
            }
            roots.push_back({{"i", i}, {"theta", num(sol.roots[idx])}, {"coefficients", coeffs},
                             {"node_count", nodes[idx]}});
        }
        return dump({{"schema_version", json_schema_version},
                     {"command", "truncate"},
                     {"n", sol.n},
                     {"s", num(sol.s)},
                     {"W", num(sol.W)},
                     {"roots", roots}});
    }

    std::vector<std::string> header{"n", "s", "W", "i", "theta_root"};
    for (int j = 0; j <= sol.n; ++j) {
        header.push_back("a_" + std::to_string(j));
    }
    header.push_back("node_count");
    std::string out = io::csv_row(header);
    for (int i = 1; i <= sol.n + 1; ++i) {
        auto const idx = static_cast<std::size_t>(i - 1);
        std::vector<std::string> row{std::to_string(sol.n), io::format_number(sol.s), io::format_number(sol.W),
                                     std::to_string(i), io::format_number(sol.roots[idx])};
        for (double a : sol.coeff_table[idx]) {
            row.push_back(io::format_number(a));
        }
        row.push_back(std::to_string(nodes[idx]));
        out += io::csv_row(row);
    }
    return out;
}

inline std::string cmd_table(RunConfig const& cfg)
{
    double const s = exponent_of(cfg);
    double const theta = io::parse_theta(cfg.theta);
    auto const table = convergence_study({s, theta}, cfg.n_max, cfg.k, 1e-9, precision_of(cfg));

    if (cfg.format == "json") {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (auto const& r : table.rows) {
            nlohmann::ordered_json w = nlohmann::ordered_json::array();
            for (double v : r.eigenvalues) {
                w.push_back(num(v));
            }
            rows.push_back({{"N", r.basis_size}, {"W", w}});
        }
        return dump({{"schema_version", json_schema_version},
                     {"command", "table"},
                     {"s", num(s)},
                     {"theta", num(theta)},
                     {"k", cfg.k},
                     {"rows", rows},
                     {"converged", table.converged}});
    }

    std::vector<std::string> header{"N"};
    for (int j = 0; j < cfg.k; ++j) {
        header.push_back("W_" + std::to_string(j));
    }
    std::string out = io::csv_row(header);
    for (auto const& r : table.rows) {
        std::vector<std::string> row{std::to_string(r.basis_size)};
        for (int j = 0; j < cfg.k; ++j) {
            auto const idx = static_cast<std::size_t>(j);
            row.push_back(idx < r.eigenvalues.size() ? io::format_number(r.eigenvalues[idx]) : "");
        }
        out += io::csv_row(row);
    }
    return out;
}

inline std::string cmd_figure(RunConfig const& cfg)
{
    double const s = exponent_of(cfg);
    int const j_max = cfg.j_max < 0 ? cfg.degree_max : cfg.j_max;
    if (j_max < cfg.degree_max) {
        throw DomainError("figure: --jmax must be >= --degree-max so every truncation point has its curve");
    }
    auto const roots = truncation_roots(s, cfg.degree_max);
    double const reach = std::ceil(*std::max_element(roots.begin(), roots.end())) + 1.0;
    double const theta_min = cfg.theta_min.value_or(-reach);
    double const theta_max = cfg.theta_max.value_or(reach);
    for (double r : roots) {
        if (r < theta_min || r > theta_max) {
            throw CoverageError("figure: truncation root theta = " + std::to_string(r) + " outside [" +
                                std::to_string(theta_min) + ", " + std::to_string(theta_max) + "]");
        }
    }
    auto const grid = refine_grid(uniform_grid(theta_min, theta_max, cfg.theta_step), roots, cfg.refine_spacing);
    auto const curves = sweep(s, j_max, grid, cfg.basis_size, precision_of(cfg));
    auto const overlay = overlay_truncation(s, cfg.degree_max, curves);

    nlohmann::ordered_json jcurves = nlohmann::ordered_json::array();
    for (auto const& c : curves) {
        nlohmann::ordered_json th = nlohmann::ordered_json::array();
        nlohmann::ordered_json w = nlohmann::ordered_json::array();
        for (auto const& p : c.samples) {
            th.push_back(num(p.theta));
            w.push_back(num(p.W));
        }
        jcurves.push_back({{"level", c.level}, {"theta", th}, {"W", w}});
    }
    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    for (auto const& e : overlay.entries) {
        points.push_back({{"n", e.n},
                          {"i", e.i},
                          {"level", e.i - 1},
                          {"theta", num(e.theta)},
                          {"W", num(e.W_truncation)},
                          {"curve_W", num(e.W_curve)},
                          {"deviation", num(e.deviation)}});
    }
    return dump({{"schema_version", json_schema_version},
                 {"command", "figure"},
                 {"s", num(s)},
                 {"basis_size", cfg.basis_size},
                 {"theta_range",
                  {{"min", num(theta_min)},
                   {"max", num(theta_max)},
                   {"step", num(cfg.theta_step)},
                   {"refine_spacing", num(cfg.refine_spacing)},
                   {"note", cfg.theta_min || cfg.theta_max
                                ? "range set by the caller; extra samples around every truncation root"
                                : "default range: widest truncation root plus 1, rounded out; extra samples around "
                                  "every truncation root"}}},
                 {"curves", jcurves},
                 {"points", points},
                 {"overlay", {{"max_deviation", num(overlay.max_deviation)}}}});
}

inline std::string cmd_physical(RunConfig const& cfg)
{
    auto const params = physical_of(cfg);
    auto const res = physical_energy(params, cfg.level, cfg.basis_size, precision_of(cfg));
    return dump({{"schema_version", json_schema_version},
                 {"command", "physical"},
                 {"inputs", inputs_json(cfg)},
                 {"level", cfg.level},
                 {"basis_size", cfg.basis_size},
                 {"tau", num(params.tau())},
                 {"s", num(res.problem.s)},
                 {"theta", num(res.problem.theta)},
                 {"W", num(res.W)},
                 {"energy", num(res.energy)},
                 {"iterations", res.iterations},
                 {"residual", num(res.residual)}});
}

inline std::string cmd_permitted(RunConfig const& cfg)
{
    auto const params = physical_of(cfg);
    auto const v = permitted_chi(params, cfg.n, cfg.i, acknowledge_truncation_artifact);
    nlohmann::ordered_json out{{"schema_version", json_schema_version},
                               {"command", "permitted"},
                               {"inputs", inputs_json(cfg)},
                               {"n", v.n},
                               {"i", v.i},
                               {"s", num(v.s)},
                               {"l", v.l},
                               {"p_z", num(v.p_z)},
                               {"theta", num(v.theta)},
                               {"W", num(v.W)},
                               {"energy", num(v.energy)},
                               {"tau", num(v.tau)},
                               {"chi", num(v.chi)},
                               {"artifact_of_truncation", v.artifact_of_truncation}};
    if (cfg.check) {
        out["roundtrip_residual"] = num(permitted_roundtrip_residual(params, v));
    }
    return dump(out);
}

inline std::string run(RunConfig const& cfg)
{
    if (cfg.command == "truncate") {
        return cmd_truncate(cfg);
    }
    if (cfg.command == "table") {
        return cmd_table(cfg);
    }
    if (cfg.command == "figure") {
        return cmd_figure(cfg);
    }
    if (cfg.command == "physical") {
        return cmd_physical(cfg);
    }
    if (cfg.command == "permitted") {
        return cmd_permitted(cfg);
    }
    throw DomainError("unknown command '" + cfg.command + "'");
}

namespace detail {

inline void add_exponent_options(CLI::App* sub, RunConfig& cfg)
{
    auto* s = sub->add_option("--s", cfg.s, "radial exponent s = |gamma|")->check(CLI::NonNegativeNumber);
    auto* l = sub->add_option("--l", cfg.l, "rotational quantum number (with --alpha, gives s)");
    auto* a = sub->add_option("--alpha", cfg.alpha, "Coulomb strength (with --l, gives s)");
    s->excludes(l)->excludes(a);
    a->needs(l);
}

inline void add_physical_options(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--m", cfg.m, "mass")->capture_default_str();
    sub->add_option("--pz", cfg.p_z, "longitudinal momentum")->capture_default_str();
    sub->add_option("--alpha", cfg.alpha, "Coulomb strength")->required();
    sub->add_option("--l", cfg.l, "rotational quantum number")->required();
    sub->add_option("--g", cfg.g, "coupling constant")->capture_default_str();
    sub->add_option("--b", cfg.b, "tensor component -(K_HB)_zz")->capture_default_str();
}

inline void add_output_options(CLI::App* sub, RunConfig& cfg, std::vector<std::string> formats,
                               std::string default_format)
{
    // cfg is shared by all subcommands, so the default lives in the help text
    // only; an empty format means the command's first listed format
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember(formats))
        ->default_str(default_format);
    sub->add_option("--output,-o", cfg.output, "output path (default: QES_OUTPUT or standard output)");
}

inline void add_precision_option(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--precision", cfg.precision, "scalar type of the eigensolver")
        ->check(CLI::IsMember({"wide", "double"}))
        ->capture_default_str();
}

} // namespace detail

/// Registers every subcommand on app, binding into cfg.
inline void configure(CLI::App& app, RunConfig& cfg)
{
    app.set_config("--config", "", "INI file of key=value lines under a [subcommand] section; flags take precedence");
    app.require_subcommand(1);

    auto* tr = app.add_subcommand("truncate", "polynomial solutions of degree n: roots theta, coefficients, nodes");
    tr->add_option("--n", cfg.n, "polynomial degree")->required()->check(CLI::NonNegativeNumber);
    detail::add_exponent_options(tr, cfg);
    detail::add_output_options(tr, cfg, {"csv", "json"}, "csv");

    auto* tb = app.add_subcommand("table", "Rayleigh-Ritz convergence table, rows N = 2..nmax");
    detail::add_exponent_options(tb, cfg);
    tb->add_option("--theta", cfg.theta, "theta (decimal or sqrt2, -sqrt2, sqrt6, -sqrt6)")->required();
    tb->add_option("--nmax", cfg.n_max, "largest basis size")->required()->check(CLI::Range(2, max_basis_size));
    tb->add_option("--k", cfg.k, "number of levels")->capture_default_str()->check(CLI::PositiveNumber);
    detail::add_precision_option(tb, cfg);
    detail::add_output_options(tb, cfg, {"csv", "json"}, "csv");

    auto* fg = app.add_subcommand("figure", "spectral curves W_j(theta) with truncation points overlaid");
    detail::add_exponent_options(fg, cfg);
    fg->add_option("--theta-min", cfg.theta_min, "lower end of the grid (default: covers all roots)");
    fg->add_option("--theta-max", cfg.theta_max, "upper end of the grid (default: covers all roots)");
    fg->add_option("--theta-step", cfg.theta_step)->capture_default_str()->check(CLI::PositiveNumber);
    fg->add_option("--refine-spacing", cfg.refine_spacing, "sample spacing around truncation roots")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    fg->add_option("--jmax", cfg.j_max, "highest curve index (default: --degree-max)");
    fg->add_option("--degree-max", cfg.degree_max, "largest truncation degree n")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    fg->add_option("--basis", cfg.basis_size, "basis size N")
        ->capture_default_str()
        ->check(CLI::Range(1, max_basis_size));
    detail::add_precision_option(fg, cfg);
    detail::add_output_options(fg, cfg, {"json"}, "json");

    auto* ph = app.add_subcommand("physical", "self-consistent energy E^2 = m^2 + p_z^2 + tau W_j(theta(E))");
    detail::add_physical_options(ph, cfg);
    ph->add_option("--chi", cfg.chi, "magnetic-field parameter")->required();
    ph->add_option("--level", cfg.level, "level index j")->capture_default_str()->check(CLI::NonNegativeNumber);
    ph->add_option("--basis", cfg.basis_size, "basis size N")
        ->capture_default_str()
        ->check(CLI::Range(1, max_basis_size));
    detail::add_precision_option(ph, cfg);
    detail::add_output_options(ph, cfg, {"json"}, "json");

    auto* pm = app.add_subcommand("permitted", "the discrete chi forced by truncation (an artifact)");
    detail::add_physical_options(pm, cfg);
    pm->add_option("--n", cfg.n, "polynomial degree")->required()->check(CLI::NonNegativeNumber);
    pm->add_option("--i", cfg.i, "root index, 1-based")->required()->check(CLI::PositiveNumber);
    pm->add_flag("--check", cfg.check, "recompute theta from the output and report the residual");
    detail::add_output_options(pm, cfg, {"json"}, "json");

    for (auto* sub : app.get_subcommands({})) {
        sub->callback([&cfg, sub] { cfg.command = sub->get_name(); });
    }
}

/// Parses argv and runs the selected command; returns the exit code.
inline int main(int argc, char const* const* argv)
{
    CLI::App app{"qes: truncation and Rayleigh-Ritz spectra of the radial Coulomb-plus-oscillator problem"};
    RunConfig cfg;
    configure(app, cfg);
    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::CallForAllHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        std::string const text = run(cfg);
        std::string path = cfg.output;
        if (path.empty()) {
            if (char const* env = std::getenv("QES_OUTPUT"); env != nullptr) {
                path = env;
            }
        }
        io::write_output(path, text);
    } catch (Error const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failure;
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_ok;
}

} // namespace qes::cli
