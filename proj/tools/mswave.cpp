// Command-line front end: reads an INI config, runs one operation, writes
// CSV/JSON atomically. Exit status: 0 success, 1 domain/solver error,
// 2 config error.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mswave/chain.hpp"
#include "mswave/config.hpp"
#include "mswave/foldy.hpp"
#include "mswave/greens.hpp"
#include "mswave/io.hpp"
#include "mswave/negref.hpp"
#include "mswave/packet.hpp"
#include "mswave/report.hpp"
#include "mswave/slab.hpp"
#include "mswave/types.hpp"

namespace {

using mswave::Complex;
using mswave::config::Dimension;
using mswave::report::Json;

struct RunSettings {
    std::string command;
    std::string output;
    std::string format;  // "csv" or "json"
    std::uint64_t seed = 0;
};

struct CliOverrides {
    std::string config_path;
    std::string output;
    std::string format;
    std::optional<std::uint64_t> seed;
};

std::vector<double> parse_number_list(const std::string& text, const std::string& key) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string item =
            comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos);
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw mswave::config::ConfigError("key '" + key + "': bad list entry '" + item + "'");
        }
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }
    if (out.empty()) {
        throw mswave::config::ConfigError("key '" + key + "': empty list");
    }
    return out;
}

std::vector<double> linear_grid(double lo, double hi, long long count, const std::string& what) {
    if (count < 1) {
        throw mswave::config::ConfigError(what + ": grid count must be >= 1");
    }
    if (count == 1) {
        return {lo};
    }
    if (!(lo < hi)) {
        throw mswave::config::ConfigError(what + ": grid needs lo < hi");
    }
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (long long i = 0; i < count; ++i) {
        grid.push_back(lo + step * static_cast<double>(i));
    }
    return grid;
}

RunSettings resolve_run(const mswave::config::Config& cfg, const CliOverrides& cli,
                        const std::string& command) {
    mswave::config::Section run(cfg, "run");
    RunSettings rs;
    rs.command = run.get_string("command", command);
    if (rs.command != command) {
        throw mswave::config::ConfigError("config is for command '" + rs.command +
                                          "', invoked as '" + command + "'");
    }
    // Read the [run] keys unconditionally so reject_unknown_keys() below sees
    // them as consumed even when a command-line flag overrides the value.
    const std::string file_output = run.get_string("output", "");
    const std::string file_format = run.get_string("format", "");
    rs.output = cli.output.empty() ? file_output : cli.output;
    if (rs.output.empty()) {
        throw mswave::config::ConfigError("no output path: set [run] output or pass --output");
    }
    std::string fmt = cli.format.empty() ? file_format : cli.format;
    if (fmt.empty()) {
        fmt = rs.output.size() >= 5 && rs.output.substr(rs.output.size() - 5) == ".json" ? "json"
                                                                                         : "csv";
    }
    if (fmt != "csv" && fmt != "json") {
        throw mswave::config::ConfigError("format must be csv or json, got '" + fmt + "'");
    }
    rs.format = fmt;
    const long long seed = run.get_integer("seed", cli.seed ? static_cast<long long>(*cli.seed) : 0);
    if (seed < 0) {
        throw mswave::config::ConfigError("seed must be nonnegative");
    }
    rs.seed = cli.seed ? *cli.seed : static_cast<std::uint64_t>(seed);
    run.reject_unknown_keys();
    return rs;
}

Json base_report(const RunSettings& rs) {
    Json doc;
    doc["schema_version"] = mswave::report::SCHEMA_VERSION;
    doc["command"] = rs.command;
    doc["seed"] = rs.seed;
    return doc;
}

// ---------------------------------------------------------------- greens-eval

int run_greens_eval(const mswave::config::Config& cfg, const RunSettings& rs) {
    mswave::config::Section params(cfg, "params");
    const auto dimension = static_cast<int>(params.get_integer("dimension", 1));
    const std::string variant_token = params.get_string("variant");
    const double k = params.get_quantity("k", Dimension::WaveNumber).value;
    const double lo = params.get_number("grid_lo");
    const double hi = params.get_number("grid_hi");
    const long long count = params.get_integer("grid_count", 101);
    const bool want_residual = params.has("residual_h");
    const double residual_h = params.get_number("residual_h", 1e-3);
    params.reject_mixed_units();
    params.reject_unknown_keys();

    const mswave::greens::GreenKind kind =
        mswave::io::parse_green_kind((dimension == 1 ? "1d:" : "3d:") + variant_token);
    const std::vector<double> grid = linear_grid(lo, hi, count, "greens-eval");

    Json rows = Json::array();
    mswave::report::CsvBuilder csv(want_residual
                                       ? std::vector<std::string>{"x", "re", "im", "residual"}
                                       : std::vector<std::string>{"x", "re", "im"});
    for (double x : grid) {
        const Complex g = kind.dimension == 1
                              ? mswave::greens::green1d(kind, k, x)
                              : mswave::greens::green3d(kind, k, {x, 0.0, 0.0});
        Json row{{"x", x}, {"value", mswave::report::complex_json(g)}};
        std::vector<std::string> cells{mswave::report::csv_cell(x),
                                       mswave::report::csv_cell(g.real()),
                                       mswave::report::csv_cell(g.imag())};
        if (want_residual) {
            const double res = mswave::greens::helmholtz_residual(kind, k, x, residual_h);
            row["residual"] = res;
            cells.push_back(mswave::report::csv_cell(res));
        }
        rows.push_back(row);
        csv.add_row(cells);
    }

    if (rs.format == "json") {
        Json doc = base_report(rs);
        doc["kind"] = mswave::io::format_green_kind(kind);
        doc["k"] = k;
        doc["rows"] = rows;
        mswave::report::write_json_atomic(rs.output, doc);
    } else {
        mswave::report::write_text_atomic(rs.output, csv.text());
    }
    return 0;
}

// ---------------------------------------------------------------- foldy-solve

int run_foldy_solve(const mswave::config::Config& cfg, const RunSettings& rs) {
    mswave::config::Section params(cfg, "params");
    const std::string ensemble_path = params.get_string("ensemble");
    const double k = params.get_quantity("k", Dimension::WaveNumber).value;
    const double kx = params.get_number("kx", k);
    const double ky = params.get_number("ky", 0.0);
    const double kz = params.get_number("kz", 0.0);
    const Complex amplitude = params.get_complex("amplitude", Complex{1.0, 0.0});
    const std::string mode = params.get_string("mode", "direct");
    const bool have_grid = params.has("grid_lo");
    const double lo = params.get_number("grid_lo", 0.0);
    const double hi = params.get_number("grid_hi", 1.0);
    const long long count = params.get_integer("grid_count", 101);
    const double literal_tol = params.get_number("literal_tol", 1e-12);
    const long long literal_max_iter = params.get_integer("literal_max_iter", 10'000);
    params.reject_mixed_units();
    params.reject_unknown_keys();

    if (mode != "direct" && mode != "literal") {
        throw mswave::config::ConfigError("mode must be direct or literal");
    }
    const std::vector<mswave::foldy::Scatterer> scatterers =
        mswave::io::load_ensemble(ensemble_path);
    const mswave::foldy::PlaneWave incident{{kx, ky, kz}, amplitude};

    mswave::foldy::ExcitingFields xi;
    Json literal_info;
    if (mode == "direct") {
        xi = mswave::foldy::solve_exciting_fields(scatterers, incident, k);
    } else {
        if (literal_max_iter < 1) {
            throw mswave::config::ConfigError("literal_max_iter must be >= 1");
        }
        const auto result = mswave::foldy::solve_exciting_fields_literal(
            scatterers, incident, k, literal_tol, static_cast<std::size_t>(literal_max_iter));
        xi = result.xi;
        literal_info = Json{{"iterations", result.iterations},
                            {"last_delta", result.last_delta},
                            {"converged", result.converged}};
    }

    Json doc = base_report(rs);
    doc["k"] = k;
    doc["mode"] = mode;
    doc["ensemble"] = ensemble_path;
    if (!literal_info.is_null()) {
        doc["literal"] = literal_info;
    }
    Json xi_rows = Json::array();
    for (const Complex& v : xi) {
        xi_rows.push_back(mswave::report::complex_json(v));
    }
    doc["xi"] = xi_rows;

    if (have_grid) {
        const std::vector<double> grid = linear_grid(lo, hi, count, "foldy-solve");
        std::vector<mswave::Vec3> points;
        points.reserve(grid.size());
        for (double x : grid) {
            points.push_back({x, 0.0, 0.0});
        }
        const std::vector<Complex> field =
            mswave::foldy::total_field_grid(points, scatterers, xi, incident, k);
        if (rs.format == "csv") {
            mswave::report::CsvBuilder csv({"x", "re", "im"});
            for (std::size_t i = 0; i < grid.size(); ++i) {
                csv.add_row({mswave::report::csv_cell(grid[i]),
                             mswave::report::csv_cell(field[i].real()),
                             mswave::report::csv_cell(field[i].imag())});
            }
            mswave::report::write_text_atomic(rs.output, csv.text());
            return 0;
        }
        Json field_rows = Json::array();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            field_rows.push_back(
                Json{{"x", grid[i]}, {"value", mswave::report::complex_json(field[i])}});
        }
        doc["field"] = field_rows;
        mswave::report::write_json_atomic(rs.output, doc);
        return 0;
    }

    if (rs.format == "csv") {
        mswave::report::CsvBuilder csv({"index", "re", "im"});
        for (std::size_t i = 0; i < xi.size(); ++i) {
            csv.add_row({mswave::report::csv_cell(static_cast<double>(i)),
                         mswave::report::csv_cell(xi[i].real()),
                         mswave::report::csv_cell(xi[i].imag())});
        }
        mswave::report::write_text_atomic(rs.output, csv.text());
        return 0;
    }
    mswave::report::write_json_atomic(rs.output, doc);
    return 0;
}

// --------------------------------------------------------------- negref-check

int run_negref_check(const mswave::config::Config& cfg, const RunSettings& rs) {
    mswave::config::Section params(cfg, "params");
    const std::string scenario = params.get_string("scenario");

    if (scenario == "example1" || scenario == "gaussian") {
        const double k = params.get_number("k");
        const Complex g = params.get_complex("g", Complex{1.0, 0.0});
        const double lo = params.get_number("grid_lo", -10.0);
        const double hi = params.get_number("grid_hi", 10.0);
        const long long count = params.get_integer("grid_count", 1000);
        std::optional<int> force_sign;
        if (params.has("force_sign")) {
            force_sign = static_cast<int>(params.get_integer("force_sign", 1));
        } else {
            params.get_integer("force_sign", 1);  // mark as known
        }

        mswave::negref::AlphaField alpha;
        Complex f;
        mswave::greens::GreenKind kind = mswave::greens::make_kind(
            1, mswave::greens::Variant::E1Anisotropic);
        if (scenario == "example1") {
            alpha = mswave::negref::PointMassAlpha{0.0, Complex{1.0, 0.0}};
            f = -2.0 * std::abs(k) * g;
        } else {
            const double sigma = params.get_number("sigma");
            alpha = mswave::negref::GaussianAlpha{sigma, k};
            f = params.get_complex("f");
            if (params.has("variant")) {
                kind = mswave::io::parse_green_kind("1d:" + params.get_string("variant"));
            } else {
                params.get_string("variant", "e1");  // mark as known
            }
        }
        params.reject_unknown_keys();

        const std::vector<double> grid = linear_grid(lo, hi, count, "negref-check");
        const mswave::negref::ResidualReport report =
            mswave::negref::negref_residual_1d(alpha, f, kind, g, k, grid, force_sign);

        Json doc = base_report(rs);
        doc["scenario"] = scenario;
        doc["grid_size"] = report.grid_size;
        doc["max_residual"] = report.max_residual;
        doc["matched_sign"] = report.matched_sign;
        if (rs.format == "csv") {
            mswave::report::CsvBuilder csv({"scenario", "grid_size", "max_residual",
                                            "matched_sign"});
            csv.add_row({scenario, std::to_string(report.grid_size),
                         mswave::report::csv_cell(report.max_residual),
                         std::to_string(report.matched_sign)});
            mswave::report::write_text_atomic(rs.output, csv.text());
        } else {
            mswave::report::write_json_atomic(rs.output, doc);
        }
        return 0;
    }

    if (scenario == "extended") {
        const double k = params.get_number("k");
        const double sigma = params.get_number("sigma");
        const Complex f = params.get_complex("f", Complex{1.0, 0.0});
        const double lo = params.get_number("grid_lo", 0.1);
        const double hi = params.get_number("grid_hi", 5.0);
        const long long count = params.get_integer("grid_count", 50);
        params.reject_unknown_keys();

        const std::vector<double> grid = linear_grid(lo, hi, count, "negref-check");
        Json rows = Json::array();
        mswave::report::CsvBuilder csv({"x_prime", "ratio_re", "ratio_im", "numeric_re",
                                        "numeric_im", "closed_re", "closed_im"});
        Complex ratio_min{0.0, 0.0};
        Complex ratio_max{0.0, 0.0};
        double variation = 0.0;
        bool first = true;
        Complex first_ratio{0.0, 0.0};
        for (double xp : grid) {
            const auto r = mswave::negref::extended_domain_integral(k, sigma, xp, f);
            if (first) {
                first_ratio = r.ratio;
                first = false;
            }
            variation = std::max(variation, std::abs(r.ratio - first_ratio));
            rows.push_back(Json{{"x_prime", xp},
                                {"ratio", mswave::report::complex_json(r.ratio)},
                                {"numeric", mswave::report::complex_json(r.numeric)},
                                {"closed_form", mswave::report::complex_json(r.closed_form)}});
            csv.add_row({mswave::report::csv_cell(xp), mswave::report::csv_cell(r.ratio.real()),
                         mswave::report::csv_cell(r.ratio.imag()),
                         mswave::report::csv_cell(r.numeric.real()),
                         mswave::report::csv_cell(r.numeric.imag()),
                         mswave::report::csv_cell(r.closed_form.real()),
                         mswave::report::csv_cell(r.closed_form.imag())});
        }
        (void)ratio_min;
        (void)ratio_max;
        if (rs.format == "csv") {
            mswave::report::write_text_atomic(rs.output, csv.text());
        } else {
            Json doc = base_report(rs);
            doc["scenario"] = scenario;
            doc["k"] = k;
            doc["sigma"] = sigma;
            doc["ratio_variation"] = variation;
            doc["rows"] = rows;
            mswave::report::write_json_atomic(rs.output, doc);
        }
        return 0;
    }

    if (scenario == "example3d") {
        const double k = params.get_number("k");
        const Complex g = params.get_complex("g", Complex{0.5, 0.0});
        const Complex f = 2.0 * g;
        const std::vector<double> x_factors =
            parse_number_list(params.get_string("x_factors", "100,1000,10000"), "x_factors");
        const std::vector<double> yz_factors =
            parse_number_list(params.get_string("yz_factors", "0,1,3"), "yz_factors");
        params.reject_unknown_keys();

        Json rows = Json::array();
        mswave::report::CsvBuilder csv({"x", "y", "z", "residual", "bound", "paraxial_valid"});
        double max_residual = 0.0;
        for (double xf : x_factors) {
            for (double yzf : yz_factors) {
                const mswave::Vec3 r{xf / std::abs(k), yzf / std::abs(k), yzf / std::abs(k)};
                const auto res = mswave::negref::example3d_field(k, f, r);
                max_residual = std::max(max_residual, res.residual);
                rows.push_back(Json{{"x", r.x},
                                    {"y", r.y},
                                    {"z", r.z},
                                    {"residual", res.residual},
                                    {"bound", res.mean_value_bound},
                                    {"paraxial_valid", res.paraxial_valid},
                                    {"exact", mswave::report::complex_json(res.exact)},
                                    {"paraxial", mswave::report::complex_json(res.paraxial)}});
                csv.add_row({mswave::report::csv_cell(r.x), mswave::report::csv_cell(r.y),
                             mswave::report::csv_cell(r.z),
                             mswave::report::csv_cell(res.residual),
                             mswave::report::csv_cell(res.mean_value_bound),
                             res.paraxial_valid ? "1" : "0"});
            }
        }
        if (rs.format == "csv") {
            mswave::report::write_text_atomic(rs.output, csv.text());
        } else {
            Json doc = base_report(rs);
            doc["scenario"] = scenario;
            doc["k"] = k;
            doc["max_residual"] = max_residual;
            doc["rows"] = rows;
            mswave::report::write_json_atomic(rs.output, doc);
        }
        return 0;
    }

    throw mswave::config::ConfigError("unknown scenario '" + scenario +
                                      "' (example1|gaussian|extended|example3d)");
}

// ---------------------------------------------------------------- chain-check

int run_chain_check(const mswave::config::Config& cfg, const RunSettings& rs) {
    mswave::config::Section params(cfg, "params");
    const std::string chain_path = params.get_string("chain");
    const auto mass = params.maybe_quantity("mass", Dimension::Mass);
    const auto velocity = params.maybe_quantity("velocity", Dimension::Velocity);
    params.reject_mixed_units();
    params.reject_unknown_keys();

    const mswave::chain::ChainSpec spec = mswave::io::load_chain(chain_path);
    const auto phi = mswave::chain::phi_between_coefficients(spec);
    const auto eff = mswave::chain::effective_incident_coefficients(spec);
    const auto residuals = mswave::chain::negref_conditions(spec);

    Json doc = base_report(rs);
    doc["chain"] = chain_path;
    doc["k"] = spec.k;
    doc["forward"] = mswave::report::complex_json(phi.forward);
    doc["backward"] = mswave::report::complex_json(phi.backward);
    doc["reflected"] = mswave::report::complex_json(eff.backward);
    doc["residual1"] = residuals.residual1;
    doc["residual2"] = residuals.residual2;
    Json deficits = Json::array();
    for (const auto& s : spec.scatterers) {
        const auto d = mswave::chain::unitarity_deficit(s);
        deficits.push_back(Json{{"left", d.left}, {"right", d.right}});
    }
    doc["unitarity_deficits"] = deficits;
    if (mass && velocity) {
        doc["de_broglie_k"] = mswave::chain::de_broglie_k(mass->value, velocity->value);
    } else if (mass || velocity) {
        throw mswave::config::ConfigError("de Broglie output needs both mass and velocity");
    }

    if (rs.format == "csv") {
        mswave::report::CsvBuilder csv({"residual1", "residual2", "forward_re", "forward_im",
                                        "backward_re", "backward_im"});
        csv.add_row({mswave::report::csv_cell(residuals.residual1),
                     mswave::report::csv_cell(residuals.residual2),
                     mswave::report::csv_cell(phi.forward.real()),
                     mswave::report::csv_cell(phi.forward.imag()),
                     mswave::report::csv_cell(phi.backward.real()),
                     mswave::report::csv_cell(phi.backward.imag())});
        mswave::report::write_text_atomic(rs.output, csv.text());
    } else {
        mswave::report::write_json_atomic(rs.output, doc);
    }
    return 0;
}

// --------------------------------------------------------------- chain-design

int run_chain_design(const mswave::config::Config& cfg, const RunSettings& rs) {
    mswave::config::Section params(cfg, "params");
    std::vector<mswave::chain::PartialRT> fixed(3);
    const char* names[3] = {"a", "b", "c"};
    for (int i = 0; i < 3; ++i) {
        const std::string p(names[i]);
        auto read = [&](const char* member) -> std::optional<Complex> {
            const std::string key = p + "_" + member;
            if (params.has(key)) {
                return params.get_complex(key);
            }
            params.get_complex(key, Complex{0.0, 0.0});  // mark as known
            return std::nullopt;
        };
        fixed[static_cast<std::size_t>(i)] = {read("rl"), read("rr"), read("tl"), read("tr")};
    }
    mswave::chain::DesignOptions opts;
    opts.tol = params.get_number("tol", 1e-10);
    const long long starts = params.get_integer("starts", 64);
    const long long max_iter = params.get_integer("max_iterations", 200);
    opts.seed = rs.seed;
    opts.bound_radius = params.get_number("bound_radius", 1.0);
    opts.strict_unitarity = params.get_flag("strict", false);
    opts.unitarity_weight = params.get_number("unitarity_weight", 1.0);
    opts.parallel = params.get_flag("parallel", true);
    params.reject_unknown_keys();
    if (starts < 1 || max_iter < 1) {
        throw mswave::config::ConfigError("starts and max_iterations must be >= 1");
    }
    opts.starts = static_cast<std::size_t>(starts);
    opts.max_iterations = static_cast<std::size_t>(max_iter);

    const mswave::chain::DesignResult result = mswave::chain::design_search(fixed, opts);

    Json doc = base_report(rs);
    doc["starts"] = opts.starts;
    doc["converged"] = result.converged;
    doc["residual1"] = result.residual1;
    doc["residual2"] = result.residual2;
    doc["worst_fixed_deficit"] = result.worst_unitarity;
    doc["best_start"] = result.best_start;
    doc["free_parameters"] = result.free_parameters;
    Json coeffs = Json::array();
    for (const auto& s : result.coefficients) {
        coeffs.push_back(Json{{"rL", mswave::report::complex_json(s.rL)},
                              {"rR", mswave::report::complex_json(s.rR)},
                              {"tL", mswave::report::complex_json(s.tL)},
                              {"tR", mswave::report::complex_json(s.tR)}});
    }
    doc["coefficients"] = coeffs;

    if (rs.format == "csv") {
        mswave::report::CsvBuilder csv({"scatterer", "rl_re", "rl_im", "rr_re", "rr_im", "tl_re",
                                        "tl_im", "tr_re", "tr_im"});
        for (std::size_t i = 0; i < result.coefficients.size(); ++i) {
            const auto& s = result.coefficients[i];
            csv.add_row({std::to_string(i), mswave::report::csv_cell(s.rL.real()),
                         mswave::report::csv_cell(s.rL.imag()),
                         mswave::report::csv_cell(s.rR.real()),
                         mswave::report::csv_cell(s.rR.imag()),
                         mswave::report::csv_cell(s.tL.real()),
                         mswave::report::csv_cell(s.tL.imag()),
                         mswave::report::csv_cell(s.tR.real()),
                         mswave::report::csv_cell(s.tR.imag())});
        }
        mswave::report::write_text_atomic(rs.output, csv.text());
    } else {
        mswave::report::write_json_atomic(rs.output, doc);
    }
    return 0;
}

// ------------------------------------------------------------------ slab-scan

int run_slab_scan(const mswave::config::Config& cfg, const RunSettings& rs) {
    mswave::config::Section params(cfg, "params");
    mswave::slab::ScanRequest req;
    req.re_lo = params.get_number("re_lo", -3.0);
    req.re_hi = params.get_number("re_hi", 3.0);
    req.step = params.get_number("step", 0.01);
    req.sigma = params.get_number("sigma");
    req.c = params.get_number("c");
    params.reject_unknown_keys();

    const std::vector<mswave::slab::ScanRow> rows = mswave::slab::scan_transmittance(req);

    Json metadata;
    metadata["schema_version"] = mswave::report::SCHEMA_VERSION;
    metadata["sigma"] = req.sigma;
    metadata["c"] = req.c;
    metadata["L_convention"] = "L = 1, k = c, Im(n) = sigma / k";
    metadata["k"] = req.c;
    metadata["grid"] = Json{{"re_lo", req.re_lo}, {"re_hi", req.re_hi}, {"step", req.step}};

    if (rs.format == "csv") {
        mswave::report::CsvBuilder csv({"re_n", "im_n", "T", "flag"});
        for (const auto& row : rows) {
            csv.add_row({mswave::report::csv_cell(row.re_n), mswave::report::csv_cell(row.im_n),
                         mswave::report::csv_cell(row.T), row.near_pole ? "1" : "0"});
        }
        mswave::report::write_text_atomic(rs.output, csv.text());
        mswave::report::write_json_atomic(rs.output + ".meta.json", metadata);
    } else {
        Json doc = base_report(rs);
        doc["metadata"] = metadata;
        Json jrows = Json::array();
        for (const auto& row : rows) {
            jrows.push_back(Json{{"re_n", row.re_n},
                                 {"im_n", row.im_n},
                                 {"T", row.T},
                                 {"flag", row.near_pole}});
        }
        doc["rows"] = jrows;
        mswave::report::write_json_atomic(rs.output, doc);
    }
    return 0;
}

// ----------------------------------------------------------- packet-synthesize

int run_packet_synthesize(const mswave::config::Config& cfg, const RunSettings& rs) {
    mswave::config::Section params(cfg, "params");
    const std::string kind = params.get_string("spectrum");
    mswave::packet::PacketSpec spec;
    if (kind == "point") {
        spec.g = mswave::packet::PointSpectrum{params.get_number("k0"),
                                               params.get_complex("weight", Complex{1.0, 0.0})};
    } else if (kind == "gaussian") {
        spec.g = mswave::packet::GaussianSpectrum{
            params.get_number("center"), params.get_number("width"),
            params.get_complex("amplitude", Complex{1.0, 0.0})};
    } else if (kind == "sampled") {
        spec.g = mswave::io::load_spectrum(params.get_string("file"));
    } else {
        throw mswave::config::ConfigError("spectrum must be point, gaussian, or sampled");
    }
    spec.mass = params.get_number("mass", 1.0);
    spec.hbar = params.get_number("hbar", 1.0);
    const std::string mode = params.get_string("mode", "packet");
    const double t = params.get_number("t", 0.0);
    const double lo = params.get_number("grid_lo");
    const double hi = params.get_number("grid_hi");
    const long long count = params.get_integer("grid_count", 201);
    params.reject_unknown_keys();

    const std::vector<double> grid = linear_grid(lo, hi, count, "packet-synthesize");

    if (mode == "packet") {
        const std::vector<Complex> field = mswave::packet::synthesize_grid(spec, grid, t);
        if (rs.format == "csv") {
            mswave::report::CsvBuilder csv({"r", "re", "im"});
            for (std::size_t i = 0; i < grid.size(); ++i) {
                csv.add_row({mswave::report::csv_cell(grid[i]),
                             mswave::report::csv_cell(field[i].real()),
                             mswave::report::csv_cell(field[i].imag())});
            }
            mswave::report::write_text_atomic(rs.output, csv.text());
        } else {
            Json doc = base_report(rs);
            doc["convention"] = "psi(r,t) = integral g(k) exp(i(-k r - omega t)) dk";
            doc["t"] = t;
            Json rows = Json::array();
            for (std::size_t i = 0; i < grid.size(); ++i) {
                rows.push_back(
                    Json{{"r", grid[i]}, {"value", mswave::report::complex_json(field[i])}});
            }
            doc["rows"] = rows;
            mswave::report::write_json_atomic(rs.output, doc);
        }
        return 0;
    }
    if (mode != "inout") {
        throw mswave::config::ConfigError("mode must be packet or inout");
    }
    if (rs.format == "csv") {
        mswave::report::CsvBuilder csv({"r", "in_re", "in_im", "out_re", "out_im"});
        for (double r : grid) {
            const auto pair = mswave::packet::inout_pair(spec, r);
            csv.add_row({mswave::report::csv_cell(r),
                         mswave::report::csv_cell(pair.psi_in.value.real()),
                         mswave::report::csv_cell(pair.psi_in.value.imag()),
                         mswave::report::csv_cell(pair.psi_out.value.real()),
                         mswave::report::csv_cell(pair.psi_out.value.imag())});
        }
        mswave::report::write_text_atomic(rs.output, csv.text());
    } else {
        Json doc = base_report(rs);
        doc["convention"] = "psi_in/out(r) = integral g(k) exp(-+ i k r) dk";
        Json rows = Json::array();
        for (double r : grid) {
            const auto pair = mswave::packet::inout_pair(spec, r);
            rows.push_back(Json{{"r", r},
                                {"in", mswave::report::complex_json(pair.psi_in.value)},
                                {"out", mswave::report::complex_json(pair.psi_out.value)}});
        }
        doc["rows"] = rows;
        mswave::report::write_json_atomic(rs.output, doc);
    }
    return 0;
}

using CommandFn = int (*)(const mswave::config::Config&, const RunSettings&);

int dispatch(const std::string& command, CommandFn fn, const CliOverrides& cli) {
    try {
        const mswave::config::Config cfg = mswave::config::parse_config_file(cli.config_path);
        const RunSettings rs = resolve_run(cfg, cli, command);
        return fn(cfg, rs);
    } catch (const mswave::config::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const mswave::io::ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const mswave::SolverError& e) {
        std::cerr << "solver error: " << e.what() << " (rcond " << e.condition_estimate()
                  << ")\n";
        return 1;
    } catch (const mswave::QuadratureError& e) {
        std::cerr << "accuracy error: " << e.what() << " (achieved " << e.achieved_estimate()
                  << ")\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiple-scattering matter-wave toolkit"};
    app.require_subcommand(1);

    struct SubSpec {
        const char* name;
        const char* description;
        CommandFn fn;
    };
    const SubSpec specs[] = {
        {"greens-eval", "Evaluate a Green's-function variant over a grid", run_greens_eval},
        {"foldy-solve", "Solve the multiple-scattering system for an ensemble", run_foldy_solve},
        {"negref-check", "Residuals of the negative-refraction constructions", run_negref_check},
        {"chain-check", "Coefficients and condition residuals of a 1D chain", run_chain_check},
        {"chain-design", "Search for coefficients satisfying the chain conditions",
         run_chain_design},
        {"slab-scan", "Transmittance versus Re(n) for a lossy slab", run_slab_scan},
        {"packet-synthesize", "Synthesize a wave packet from a spectral weight",
         run_packet_synthesize},
    };

    std::vector<std::pair<CommandFn, CliOverrides>> jobs;
    jobs.reserve(std::size(specs));
    CLI::App* chosen = nullptr;
    CommandFn chosen_fn = nullptr;
    static CliOverrides cli;
    for (const auto& spec : specs) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.description);
        sub->add_option("-c,--config", cli.config_path, "INI config file")->required();
        sub->add_option("-o,--output", cli.output, "Output path (overrides [run] output)");
        sub->add_option("-f,--format", cli.format, "csv or json (overrides [run] format)");
        sub->add_option("--seed", cli.seed, "Seed (overrides [run] seed)");
        sub->callback([&chosen, &chosen_fn, sub, fn = spec.fn]() {
            chosen = sub;
            chosen_fn = fn;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    if (chosen_fn == nullptr) {
        std::cerr << "config error: no command chosen\n";
        return 2;
    }
    return dispatch(chosen->get_name(), chosen_fn, cli);
}
