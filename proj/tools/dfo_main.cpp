#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dfo/bounds.hpp"
#include "dfo/csv.hpp"
#include "dfo/estimators.hpp"
#include "dfo/fbpcg.hpp"
#include "dfo/problems.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitTolerance = 2;
constexpr int kExitEvaluation = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_point(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception&) {
            throw UsageError("cannot parse coordinate '" + item + "'");
        }
        if (pos != item.size()) {
            throw UsageError("cannot parse coordinate '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty point");
    return out;
}

// --output is relative to DFO_OUTPUT_DIR when that is set.
std::filesystem::path resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("DFO_OUTPUT_DIR")) {
            return std::filesystem::path(dir) / p;
        }
    }
    return p;
}

void write_text(const std::string& output_path, const std::string& text) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    const auto resolved = resolve_output(output_path);
    std::ofstream file(resolved, std::ios::binary);
    if (!file) {
        throw std::ios_base::failure("cannot open output file: " +
                                     resolved.string());
    }
    file << text;
    if (!file) {
        throw std::ios_base::failure("write failed: " + resolved.string());
    }
}

std::string rows_to_csv(const std::vector<dfo::CsvRow>& rows) {
    std::string out = dfo::kCsvHeader;
    out += '\n';
    for (const auto& row : rows) {
        out += dfo::to_csv_line(row);
        out += '\n';
    }
    return out;
}

nlohmann::json row_to_json(const dfo::CsvRow& row) {
    nlohmann::json j;
    j["problem"] = row.problem;
    j["basis"] = row.basis;
    j["model"] = row.model;
    auto set = [&j](const char* key, const auto& opt) {
        if (opt.has_value()) j[key] = *opt;
        else j[key] = nullptr;
    };
    set("h", row.h);
    set("eta", row.eta);
    set("nf", row.nf);
    set("eps_g", row.eps_g);
    set("eps_d", row.eps_d);
    set("fmin", row.fmin);
    set("gnorm", row.gnorm);
    set("itns", row.itns);
    set("qmfs", row.qmfs);
    return j;
}

std::string rows_to_json(const std::vector<dfo::CsvRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) arr.push_back(row_to_json(row));
    return arr.dump(2) + "\n";
}

double norm2_diff(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

const std::vector<dfo::BasisKind> kAllBases = {
    dfo::BasisKind::CoordinateBasis,
    dfo::BasisKind::RegularBasis,
    dfo::BasisKind::CoordinateMinimalPositiveBasis,
    dfo::BasisKind::RegularMinimalPositiveBasis,
};

// ---------------------------------------------------------------------
// estimate

struct EstimateArgs {
    std::string problem;
    std::string point;
    std::string basis = "cb";
    double h = 1e-3;
    double eta = -1.0;
    std::string model = "quadratic";
    std::string format = "text";
    std::string output;
};

int cmd_estimate(const EstimateArgs& args) {
    const dfo::Objective& objective = dfo::lookup(args.problem);
    std::vector<double> x =
        args.point.empty() ? objective.start : parse_point(args.point);
    if (x.size() != objective.n) {
        throw UsageError("point dimension does not match problem " +
                         args.problem);
    }
    dfo::SamplingScheme scheme;
    scheme.kind = dfo::parse_basis_kind(args.basis);
    scheme.n = objective.n;
    scheme.h = args.h;
    scheme.eta = args.eta;
    scheme.model = dfo::parse_model_order(args.model);
    scheme.validate();

    dfo::CountingObjective counted(objective);
    const dfo::DerivativeEstimate est = dfo::estimate(
        [&counted](std::span<const double> p) { return counted(p); }, x,
        scheme);

    std::optional<double> eps_g, eps_d;
    if (objective.gradient) {
        eps_g = norm2_diff(est.g, objective.gradient(x));
    }
    if (est.d.has_value() && objective.diag_hessian) {
        eps_d = norm2_diff(*est.d, objective.diag_hessian(x));
    }

    dfo::CsvRow row;
    row.problem = args.problem;
    row.basis = args.basis;
    row.model = args.model;
    row.h = args.h;
    row.eta = args.eta;
    row.nf = est.evals_used;
    row.eps_g = eps_g;
    row.eps_d = eps_d;

    std::string out;
    if (args.format == "csv") {
        out = rows_to_csv({row});
    } else if (args.format == "json") {
        out = rows_to_json({row});
    } else {
        std::ostringstream text;
        text << "problem: " << args.problem << "  basis: " << args.basis
             << "  model: " << args.model
             << "  h: " << dfo::format_scientific(args.h)
             << "  eta: " << dfo::format_scientific(args.eta) << "\n";
        text << "g =";
        for (double v : est.g) text << ' ' << dfo::format_scientific(v);
        text << "\n";
        if (est.d.has_value()) {
            text << "d =";
            for (double v : *est.d) text << ' ' << dfo::format_scientific(v);
            text << "\n";
        }
        text << "evals_used = " << est.evals_used << "\n";
        if (eps_g) text << "eps_g = " << dfo::format_scientific(*eps_g) << "\n";
        if (eps_d) text << "eps_d = " << dfo::format_scientific(*eps_d) << "\n";
        out = text.str();
    }
    write_text(args.output, out);
    return kExitOk;
}

// ---------------------------------------------------------------------
// sweep

struct SweepArgs {
    std::string problem;
    std::string point;
    double h_max = 1e-2;
    double h_min = 1e-5;
    std::size_t points = 9;
    std::string model = "quadratic";
    std::string format = "csv";
    std::string output;
};

int cmd_sweep(const SweepArgs& args) {
    const dfo::Objective& objective = dfo::lookup(args.problem);
    if (!objective.gradient) {
        throw UsageError("sweep needs a problem with an analytic gradient");
    }
    if (args.points < 3 || !(args.h_min > 0.0) || !(args.h_max > args.h_min)) {
        throw UsageError("sweep needs points >= 3 and 0 < h-min < h-max");
    }
    std::vector<double> x =
        args.point.empty() ? objective.start : parse_point(args.point);
    if (x.size() != objective.n) {
        throw UsageError("point dimension does not match problem " +
                         args.problem);
    }
    const dfo::ModelOrder model = dfo::parse_model_order(args.model);
    const std::vector<double> grad_true = objective.gradient(x);
    const std::optional<std::vector<double>> diag_true =
        objective.diag_hessian
            ? std::optional<std::vector<double>>(objective.diag_hessian(x))
            : std::nullopt;

    // Logarithmic grid, strictly decreasing from h-max to h-min.
    std::vector<double> grid(args.points);
    const double ratio = args.h_min / args.h_max;
    for (std::size_t i = 0; i < args.points; ++i) {
        grid[i] = args.h_max *
                  std::pow(ratio, static_cast<double>(i) /
                                      static_cast<double>(args.points - 1));
    }

    std::vector<dfo::CsvRow> rows;
    for (const dfo::BasisKind kind : kAllBases) {
        std::vector<std::pair<double, double>> g_pairs, d_pairs;
        for (const double h : grid) {
            dfo::SamplingScheme scheme;
            scheme.kind = kind;
            scheme.n = objective.n;
            scheme.h = h;
            scheme.eta = -1.0;
            scheme.model = model;
            const dfo::DerivativeEstimate est = dfo::estimate(
                [&objective](std::span<const double> p) {
                    return objective.evaluate(p);
                },
                x, scheme);
            dfo::CsvRow row;
            row.problem = args.problem;
            row.basis = std::string(dfo::to_string(kind));
            row.model = args.model;
            row.h = h;
            row.eta = -1.0;
            row.nf = est.evals_used;
            row.eps_g = norm2_diff(est.g, grad_true);
            g_pairs.emplace_back(h, *row.eps_g);
            if (est.d.has_value() && diag_true.has_value()) {
                row.eps_d = norm2_diff(*est.d, *diag_true);
                d_pairs.emplace_back(h, *row.eps_d);
            }
            rows.push_back(row);
        }
        dfo::CsvRow slope_row;
        slope_row.problem = args.problem;
        slope_row.basis = std::string(dfo::to_string(kind));
        slope_row.model = "slope";
        slope_row.eps_g = dfo::observed_order(g_pairs).slope;
        if (d_pairs.size() >= 3) {
            slope_row.eps_d = dfo::observed_order(d_pairs).slope;
        }
        rows.push_back(slope_row);
    }

    write_text(args.output, args.format == "json" ? rows_to_json(rows)
                                                  : rows_to_csv(rows));
    return kExitOk;
}

// ---------------------------------------------------------------------
// solve

struct SolveArgs {
    std::string problem;
    std::string basis = "cb";
    std::string start;
    std::size_t budget = 1300;
    double h0 = 1.0;
    double h_min = 1e-10;
    double lambda = 4.0;
    std::size_t ls_budget = 10;
    std::string cmpb_diag = "central";
    bool trace = false;
    std::string format = "csv";
    std::string output;
};

dfo::SolverResult run_solver(const dfo::Objective& objective,
                             const SolveArgs& args) {
    dfo::SolverConfig config;
    config.kind = dfo::parse_basis_kind(args.basis);
    config.budget = args.budget;
    config.h0 = args.h0;
    config.h_min = args.h_min;
    config.lambda = args.lambda;
    config.line_search_budget = args.ls_budget;
    config.cmpb_diag_central = args.cmpb_diag != "lsq";
    if (!args.start.empty()) config.start = parse_point(args.start);

    dfo::SolverResult result = dfo::solve(objective, config);
    if (result.aborted) {
        throw std::runtime_error("objective evaluation failed: " +
                                 result.abort_reason);
    }
    return result;
}

dfo::CsvRow summary_row(const std::string& problem_name,
                        const std::string& basis,
                        const dfo::SolverResult& result) {
    dfo::CsvRow row;
    row.problem = problem_name;
    row.basis = basis;
    row.model = "quadratic";
    row.h = result.h;
    row.eta = -1.0;
    row.nf = result.nf;
    row.fmin = result.fmin;
    row.gnorm = result.gnorm;
    row.itns = result.iterations;
    row.qmfs = result.qmf_count;
    return row;
}

dfo::CsvRow solve_row(const std::string& problem_name,
                      const dfo::Objective& objective,
                      const SolveArgs& args) {
    return summary_row(problem_name, args.basis, run_solver(objective, args));
}

int cmd_solve(const SolveArgs& args) {
    const dfo::Objective& objective = dfo::lookup(args.problem);
    const dfo::SolverResult result = run_solver(objective, args);
    std::vector<dfo::CsvRow> rows;
    if (args.trace) {
        // One row per iteration: fmin tracks the incumbent, h/gnorm the
        // frame, qmfs the running quasi-minimal count.
        std::uint64_t qmfs = 0;
        for (const dfo::TraceRecord& rec : result.trace) {
            if (rec.quasi_minimal) ++qmfs;
            dfo::CsvRow row;
            row.problem = args.problem;
            row.basis = args.basis;
            row.model = "trace";
            row.h = rec.h;
            row.eta = -1.0;
            row.nf = rec.nf;
            row.fmin = rec.f_best;
            row.gnorm = rec.gnorm;
            row.itns = rec.iteration;
            row.qmfs = qmfs;
            rows.push_back(row);
        }
    }
    rows.push_back(summary_row(args.problem, args.basis, result));
    write_text(args.output, args.format == "json" ? rows_to_json(rows)
                                                  : rows_to_csv(rows));
    return kExitOk;
}

// ---------------------------------------------------------------------
// bench

struct BenchArgs {
    std::string suite;
    std::string output;
    double tolerance_g = -1.0;  // <0: suite default
    double tolerance_d = -1.0;
};

struct TableExpectation {
    double eps_g;
    double eps_d;
};

int bench_table(const BenchArgs& args, const std::vector<double>& x, double h,
                const std::map<std::string, TableExpectation>& expected,
                double default_tol_g, double default_tol_d) {
    const double tol_g = args.tolerance_g >= 0.0 ? args.tolerance_g : default_tol_g;
    const double tol_d = args.tolerance_d >= 0.0 ? args.tolerance_d : default_tol_d;
    const dfo::Objective objective = dfo::rosenbrock();
    const std::vector<double> grad_true = objective.gradient(x);
    const std::vector<double> diag_true = objective.diag_hessian(x);

    std::vector<dfo::CsvRow> rows;
    bool in_tolerance = true;
    for (const dfo::BasisKind kind : kAllBases) {
        dfo::SamplingScheme scheme;
        scheme.kind = kind;
        scheme.n = 2;
        scheme.h = h;
        scheme.eta = -1.0;
        scheme.model = dfo::ModelOrder::Quadratic;
        const dfo::DerivativeEstimate est = dfo::estimate(
            [&objective](std::span<const double> p) {
                return objective.evaluate(p);
            },
            x, scheme);
        dfo::CsvRow row;
        row.problem = "rosenbrock";
        row.basis = std::string(dfo::to_string(kind));
        row.model = "quadratic";
        row.h = h;
        row.eta = -1.0;
        row.nf = est.evals_used;
        row.eps_g = norm2_diff(est.g, grad_true);
        row.eps_d = norm2_diff(*est.d, diag_true);
        rows.push_back(row);

        const TableExpectation& exp = expected.at(row.basis);
        if (std::abs(*row.eps_g - exp.eps_g) > tol_g * exp.eps_g) {
            in_tolerance = false;
        }
        if (std::abs(*row.eps_d - exp.eps_d) > tol_d * exp.eps_d) {
            in_tolerance = false;
        }
    }
    write_text(args.output, rows_to_csv(rows));
    return in_tolerance ? kExitOk : kExitTolerance;
}

int cmd_bench(const BenchArgs& args) {
    if (args.suite == "table3") {
        return bench_table(args, {1.1, 1.1 * 1.1 + 1e-5}, 1e-3,
                           {{"cb", {4.39e-4, 1.99e-4}},
                            {"rb", {5.02e-4, 3.11e2}},
                            {"cmpb", {3.79e-4, 4.15e2}},
                            {"rmpb", {3.33e-4, 1.77e-4}}},
                           0.02, 0.02);
    }
    if (args.suite == "table4") {
        return bench_table(args, {0.9, 0.81}, 1e-6,
                           {{"cb", {3.54e-10, 1.91e-6}},
                            {"rb", {4.09e-10, 2.55e2}},
                            {"cmpb", {2.95e-10, 3.39e2}},
                            {"rmpb", {2.67e-10, 1.69e-6}}},
                           0.10, 0.02);
    }
    if (args.suite == "mgh") {
        std::vector<dfo::CsvRow> rows;
        for (const auto& [name, objective] : dfo::registry()) {
            for (const dfo::BasisKind kind : kAllBases) {
                SolveArgs solve_args;
                solve_args.problem = name;
                solve_args.basis = std::string(dfo::to_string(kind));
                rows.push_back(solve_row(name, objective, solve_args));
            }
        }
        write_text(args.output, rows_to_csv(rows));
        return kExitOk;
    }
    throw UsageError("unknown bench suite: " + args.suite);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Derivative estimates from interpolation models, their "
                 "dense-oracle validation, and a frame-based PCG solver"};
    app.require_subcommand(1);
    // --h is a real option below, so help stays on --help only.
    app.set_help_flag("--help", "print help");

    EstimateArgs est_args;
    CLI::App* est = app.add_subcommand(
        "estimate", "Gradient/diagonal-Hessian estimate at a point");
    est->set_help_flag("--help", "print help");
    est->add_option("--problem", est_args.problem, "problem name")->required();
    est->add_option("--x", est_args.point, "comma-separated point (default: standard start)");
    est->add_option("--basis", est_args.basis, "cb|rb|cmpb|rmpb");
    est->add_option("--h", est_args.h, "sampling radius");
    est->add_option("--eta", est_args.eta, "second-radius ratio");
    est->add_option("--model", est_args.model, "linear|quadratic");
    est->add_option("--format", est_args.format, "text|csv|json");
    est->add_option("--output,-o", est_args.output, "output file (default stdout)");

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "h-sweep with fitted convergence orders");
    sweep->set_help_flag("--help", "print help");
    sweep->add_option("--problem", sweep_args.problem)->required();
    sweep->add_option("--x", sweep_args.point);
    sweep->add_option("--h-max", sweep_args.h_max);
    sweep->add_option("--h-min", sweep_args.h_min);
    sweep->add_option("--points", sweep_args.points);
    sweep->add_option("--model", sweep_args.model, "linear|quadratic");
    sweep->add_option("--format", sweep_args.format, "csv|json");
    sweep->add_option("--output,-o", sweep_args.output);

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "One FB-PCG run");
    solve->set_help_flag("--help", "print help");
    solve->add_option("--problem", solve_args.problem)->required();
    solve->add_option("--basis", solve_args.basis, "cb|rb|cmpb|rmpb");
    solve->add_option("--start", solve_args.start, "comma-separated start point");
    solve->add_option("--budget", solve_args.budget);
    solve->add_option("--h0", solve_args.h0);
    solve->add_option("--h-min", solve_args.h_min);
    solve->add_option("--lambda", solve_args.lambda);
    solve->add_option("--ls-budget", solve_args.ls_budget);
    solve->add_option("--cmpb-diag", solve_args.cmpb_diag, "central|lsq");
    solve->add_flag("--trace", solve_args.trace,
                    "emit one row per iteration before the summary row");
    solve->add_option("--format", solve_args.format, "csv|json");
    solve->add_option("--output,-o", solve_args.output);

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "Benchmark suites");
    bench->set_help_flag("--help", "print help");
    bench->add_option("--suite", bench_args.suite, "table3|table4|mgh")
        ->required();
    bench->add_option("--tolerance", bench_args.tolerance_g,
                      "override both eps tolerances");
    bench->add_option("--tolerance-d", bench_args.tolerance_d);
    bench->add_option("--output,-o", bench_args.output);

    // Reserved: randomized features key their generators off this.
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "RNG seed for randomized modes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (est->parsed()) return cmd_estimate(est_args);
        if (sweep->parsed()) return cmd_sweep(sweep_args);
        if (solve->parsed()) return cmd_solve(solve_args);
        if (bench->parsed()) {
            if (bench_args.tolerance_d < 0.0 && bench_args.tolerance_g >= 0.0) {
                bench_args.tolerance_d = bench_args.tolerance_g;
            }
            return cmd_bench(bench_args);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEvaluation;
    }
    return kExitUsage;
}
