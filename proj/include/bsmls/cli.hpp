#pragma once

/// Command-line front end. `run` dispatches a RunConfig and maps failures to
/// exit codes: usage 2, data 3, numeric 4, failed verification 5.

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "bsmls/curve.hpp"
#include "bsmls/dataset.hpp"
#include "bsmls/equivalence.hpp"
#include "bsmls/error.hpp"
#include "bsmls/mls.hpp"
#include "bsmls/surface.hpp"
#include "bsmls/weight.hpp"

namespace bsmls::cli {

enum class Command { knots, basis, curve, surface, mls, interp, verify_curve, verify_surface, verify_min, dataset };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumeric = 4;
inline constexpr int kExitVerificationFailed = 5;

struct RunConfig {
    Command command = Command::dataset;
    int n = 10;
    int r = 4;
    std::string weight = "cardinal";
    double alpha = 1.0;
    double delta = 0.1;
    int degree = 0;
    int index = 0;
    std::optional<int> samples;
    std::optional<std::pair<double, double>> domain;
    std::optional<std::string> input;
    std::optional<std::string> dataset;
    std::optional<std::string> output;
    OutputFormat format = OutputFormat::csv;
    std::optional<double> tol;
};

[[nodiscard]] inline int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::unknown_dataset:
        case ErrorCode::malformed_row:
        case ErrorCode::non_uniform_nodes:
        case ErrorCode::duplicate_node:
        case ErrorCode::io_failure:
        case ErrorCode::empty_samples:
            return kExitData;
        case ErrorCode::division_by_zero_weight:
        case ErrorCode::rank_deficiency:
        case ErrorCode::singular_normal_matrix:
        case ErrorCode::grid_too_coarse:
            return kExitNumeric;
        default:
            return kExitUsage;
    }
}

[[nodiscard]] inline WeightSpec make_weight(const RunConfig& cfg) {
    if (cfg.weight == "exp") return WeightSpec::exp(cfg.alpha);
    if (cfg.weight == "shepard") return WeightSpec::shepard(cfg.alpha);
    if (cfg.weight == "mclain") return WeightSpec::mclain(cfg.alpha);
    if (cfg.weight == "levin") return WeightSpec::levin(cfg.alpha);
    if (cfg.weight == "cardinal") return cardinal_weight(cfg.r);
    throw Error(ErrorCode::invalid_argument, "unknown weight '" + cfg.weight + "'");
}

[[nodiscard]] inline std::pair<double, double> parse_domain(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::invalid_argument, "domain must be a:b");
    const auto a = detail::parse_double(std::string_view(text).substr(0, colon));
    const auto b = detail::parse_double(std::string_view(text).substr(colon + 1));
    if (!a || !b || !(*a < *b)) throw Error(ErrorCode::invalid_argument, "domain must be a:b with a < b");
    return {*a, *b};
}

namespace detail {

[[nodiscard]] inline Dataset load_dataset(const RunConfig& cfg, std::string_view fallback, int dimension) {
    Dataset d = cfg.input ? parse_points_csv(*cfg.input) : builtin_dataset(cfg.dataset.value_or(std::string(fallback)));
    if (dimension != 0 && d.dimension != dimension) {
        throw Error(ErrorCode::invalid_argument,
                    d.name + " is " + std::to_string(d.dimension) + "-D, command needs " + std::to_string(dimension) + "-D data");
    }
    return d;
}

[[nodiscard]] inline std::vector<double> grid_1d(double a, double b, int count) {
    std::vector<double> out;
    for (int k = 0; k < count; ++k) out.push_back(k == count - 1 ? b : a + (b - a) * k / (count - 1));
    return out;
}

inline void validate(const RunConfig& cfg) {
    if (cfg.samples && *cfg.samples < 2) throw Error(ErrorCode::invalid_argument, "--samples must be >= 2");
    if (cfg.r < 1) throw Error(ErrorCode::order_out_of_range, "--r must be >= 1");
    if (cfg.command == Command::interp && !(cfg.delta > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "--delta must be positive");
    }
    if (cfg.degree < 0) throw Error(ErrorCode::invalid_argument, "--degree must be >= 0");
    if (cfg.tol && !(*cfg.tol >= 0.0)) throw Error(ErrorCode::invalid_argument, "--tol must be >= 0");
}

inline void emit(const RunConfig& cfg, std::ostream& out, std::span<const Sample> samples,
                 std::span<const Sample> markers = {}) {
    if (cfg.output) {
        emit_samples(samples, cfg.format, *cfg.output, markers);
    } else {
        write_samples(out, samples, cfg.format, markers);
    }
}

inline int report(const RunConfig& cfg, std::ostream& out, const VerificationReport& rep) {
    out << "check: " << rep.check << '\n'
        << "samples: " << rep.samples.size() << '\n'
        << "shift: " << format_number(rep.shift) << '\n'
        << "tolerance: " << format_number(rep.tolerance) << '\n'
        << "max_residual: " << format_number(rep.max_residual) << '\n'
        << "passed: " << (rep.passed ? "true" : "false") << '\n';
    if (cfg.output) {
        std::vector<std::vector<double>> rows;
        for (const auto& s : rep.samples) {
            auto row = s.point;
            row.insert(row.end(), {s.lhs, s.rhs, s.residual});
            rows.push_back(std::move(row));
        }
        std::ofstream file(*cfg.output, std::ios::binary);
        if (!file) throw Error(ErrorCode::io_failure, "cannot open " + *cfg.output + " for writing");
        write_csv_rows(file, rows);
    }
    return rep.passed ? kExitOk : kExitVerificationFailed;
}

[[nodiscard]] inline int run_unchecked(const RunConfig& cfg, std::ostream& out) {
    validate(cfg);
    switch (cfg.command) {
        case Command::knots: {
            const auto kv = make_uniform_knots(cfg.n, cfg.r);
            std::vector<Sample> s;
            for (std::size_t i = 0; i < kv.size(); ++i) s.push_back({{double(i)}, kv[i]});
            emit(cfg, out, s);
            return kExitOk;
        }
        case Command::basis: {
            const auto kv = make_uniform_knots(cfg.n, cfg.r);
            const auto [a, b] = cfg.domain.value_or(std::pair{0.0, double(cfg.n + cfg.r)});
            std::vector<Sample> s;
            for (double t : grid_1d(a, b, cfg.samples.value_or(1001))) {
                s.push_back({{t}, basis_eval(kv, cfg.index, cfg.r, t)});
            }
            emit(cfg, out, s);
            return kExitOk;
        }
        case Command::curve: {
            const auto d = load_dataset(cfg, "xi0-curve", 1);
            const auto curve = make_graph_curve(d.values, cfg.r);
            const auto [a, b] =
                cfg.domain.value_or(std::pair{curve.knots().domain_begin(), curve.knots().domain_end()});
            std::vector<Sample> s;
            for (double t : grid_1d(a, b, cfg.samples.value_or(1001))) s.push_back({{t}, curve_eval(curve, t)[1]});
            emit(cfg, out, s, dataset_samples(d));
            return kExitOk;
        }
        case Command::surface: {
            const auto d = load_dataset(cfg, "xi0-surface", 2);
            const auto surface = make_height_surface(d.grid(), cfg.r);
            const auto [a, b] =
                cfg.domain.value_or(std::pair{surface.knots_u().domain_begin(), surface.knots_u().domain_end()});
            const auto axis = grid_1d(a, b, cfg.samples.value_or(51));
            std::vector<Sample> s;
            for (double u : axis) {
                for (double v : axis) s.push_back({{u, v}, surface_eval(surface, u, v)[2]});
            }
            emit(cfg, out, s, dataset_samples(d));
            return kExitOk;
        }
        case Command::mls: {
            const auto d = load_dataset(cfg, "xi0-curve", 1);
            const auto problem = bsmls::detail::integer_node_problem(d.n, cfg.degree, make_weight(cfg));
            const auto [a, b] = cfg.domain.value_or(std::pair{0.0, double(d.n)});
            std::vector<Sample> s;
            for (double x : grid_1d(a, b, cfg.samples.value_or(1001))) {
                s.push_back({{x}, mls_apply(problem, d.values, Point<1>{x})});
            }
            emit(cfg, out, s, dataset_samples(d));
            return kExitOk;
        }
        case Command::interp: {
            const auto d = load_dataset(cfg, "xi0-curve", 1);
            const auto curve = interpolation_curve(d.values, d.n, cfg.delta, cfg.samples.value_or(100 * d.n));
            std::vector<Sample> s;
            for (const auto& [x, v] : curve) s.push_back({{x}, v});
            emit(cfg, out, s, dataset_samples(d));
            return kExitOk;
        }
        case Command::verify_curve: {
            const auto d = load_dataset(cfg, "xi0-curve", 1);
            return report(cfg, out,
                          verify_curve_equivalence(d.values, d.n, cfg.r, cfg.samples.value_or(1000), cfg.tol.value_or(1e-10)));
        }
        case Command::verify_surface: {
            const auto d = load_dataset(cfg, "xi0-surface", 2);
            return report(cfg, out,
                          verify_surface_equivalence(d.grid(), d.n, cfg.r, cfg.samples.value_or(50), cfg.tol.value_or(1e-10)));
        }
        case Command::verify_min: {
            const auto d = load_dataset(cfg, "xi0-curve", 1);
            const auto problem = bsmls::detail::integer_node_problem(d.n, cfg.degree, make_weight(cfg));
            const auto [a, b] = cfg.domain.value_or(std::pair{0.0, double(d.n)});
            auto rep = VerificationReport::start("minimizer", cfg.tol.value_or(1e-7), 0.0);
            for (double x : grid_1d(a, b, cfg.samples.value_or(21))) {
                const Point<1> p{x};
                rep.add({x}, mls_apply(problem, d.values, p), brute_force_minimize(problem, d.values, p));
            }
            rep.finish();
            return report(cfg, out, rep);
        }
        case Command::dataset: {
            const auto d = load_dataset(cfg, "xi0-curve", 0);
            emit(cfg, out, dataset_samples(d));
            return kExitOk;
        }
    }
    return kExitUsage;
}

}  // namespace detail

/// Execute `cfg`, writing data or the report to `out` and diagnostics to `err`.
[[nodiscard]] inline int run(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        return detail::run_unchecked(cfg, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

/// Outcome of argument parsing: a config to run, or an exit code when
/// parsing ended early (help, usage error).
struct ParsedArgs {
    std::optional<RunConfig> config;
    int exit_code = kExitOk;
};

/// Build a RunConfig from command-line arguments (args[0] is the program name).
/// Help text and argument errors are written to `out` / `err`.
[[nodiscard]] inline ParsedArgs parse_command_line(const std::vector<std::string>& args, std::ostream& out = std::cout,
                                                   std::ostream& err = std::cerr) {
    CLI::App app{"Uniform B-spline curves and surfaces as moving least-squares minimizers", "bsmls"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string domain;
    std::string format = "csv";

    const std::vector<std::pair<std::string, Command>> commands = {
        {"knots", Command::knots},
        {"basis", Command::basis},
        {"curve", Command::curve},
        {"surface", Command::surface},
        {"mls", Command::mls},
        {"interp", Command::interp},
        {"verify-curve", Command::verify_curve},
        {"verify-surface", Command::verify_surface},
        {"verify-min", Command::verify_min},
        {"dataset", Command::dataset},
    };
    const std::vector<std::pair<std::string, std::string>> help = {
        {"knots", "print the uniform knot vector"},
        {"basis", "sample B_{index,r}"},
        {"curve", "sample the B-spline curve of a dataset"},
        {"surface", "sample the tensor-product surface of a dataset"},
        {"mls", "sample the moving least-squares approximant"},
        {"interp", "sample the interpolatory approximant on x = l/100"},
        {"verify-curve", "check curve = MLS under the cardinal weight"},
        {"verify-surface", "check surface = MLS under the separable cardinal weight"},
        {"verify-min", "check MLS against a brute-force minimizer"},
        {"dataset", "print a dataset"},
    };
    std::vector<CLI::App*> subs;
    for (std::size_t k = 0; k < commands.size(); ++k) {
        auto* sub = app.add_subcommand(commands[k].first, help[k].second);
        sub->add_option("--n", cfg.n, "index of the last control point")->capture_default_str();
        sub->add_option("--r", cfg.r, "spline order")->capture_default_str();
        sub->add_option("--weight", cfg.weight, "weight kind")
            ->check(CLI::IsMember({"exp", "shepard", "mclain", "levin", "cardinal"}))
            ->capture_default_str();
        sub->add_option("--alpha", cfg.alpha, "weight shape parameter")->capture_default_str();
        sub->add_option("--delta", cfg.delta, "interpolatory shift")->capture_default_str();
        sub->add_option("--degree", cfg.degree, "total degree of the polynomial space")->capture_default_str();
        sub->add_option("--index", cfg.index, "basis function index")->capture_default_str();
        sub->add_option("--samples", cfg.samples, "number of samples (per axis for surfaces)");
        sub->add_option("--domain", domain, "sampling interval a:b");
        sub->add_option("--input", cfg.input, "CSV dataset")->check(CLI::ExistingFile);
        sub->add_option("dataset,--dataset", cfg.dataset, "built-in dataset (xi0-curve, xi0-surface)");
        sub->add_option("--output", cfg.output, "output file (default: stdout)");
        sub->add_option("--format", format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}))->capture_default_str();
        sub->add_option("--tol", cfg.tol, "verification tolerance");
        subs.push_back(sub);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
        if (!domain.empty()) cfg.domain = parse_domain(domain);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return {std::nullopt, code == 0 ? kExitOk : kExitUsage};
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return {std::nullopt, exit_code_for(e.code())};
    }

    for (std::size_t k = 0; k < subs.size(); ++k) {
        if (subs[k]->parsed()) cfg.command = commands[k].second;
    }
    cfg.format = format == "svg" ? OutputFormat::svg : OutputFormat::csv;
    return {cfg, kExitOk};
}

/// Parse and run; argument errors exit with the usage code.
[[nodiscard]] inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                                 std::ostream& err = std::cerr) {
    const auto parsed = parse_command_line(args, out, err);
    if (!parsed.config) return parsed.exit_code;
    return run(*parsed.config, out, err);
}

}  // namespace bsmls::cli
