#include "fracspec/cli.hpp"

#include "fracspec/convergence.hpp"
#include "fracspec/error.hpp"
#include "fracspec/grid.hpp"
#include "fracspec/io.hpp"
#include "fracspec/oracle.hpp"
#include "fracspec/solver.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

namespace fracspec::cli {
namespace {

constexpr double kPi = std::numbers::pi;

const char* command_name(Command c) {
    switch (c) {
        case Command::Eigs: return "eigs";
        case Command::Solve: return "solve";
        case Command::Table1: return "table1";
        case Command::Fig3: return "fig3";
        case Command::GapCheck: return "gapcheck";
        case Command::OracleCompare: return "oracle-compare";
    }
    return "?";
}

std::string join(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += (i ? "," : "") + format_double(values[i]);
    }
    return out;
}

std::vector<double> sample_times(const RunConfig& config) {
    return config.ts.empty() ? linspace(0.0, config.horizon, 5) : config.ts;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string render_eigs(const RunConfig& config) {
    const std::vector<EigenPair> pairs = eigenpairs(config.boundary, config.count);
    if (config.format == Format::Json) {
        nlohmann::json rows = nlohmann::json::array();
        for (const EigenPair& p : pairs) {
            rows.push_back({{"k", p.index}, {"lambda", p.lambda}, {"amplitude", p.amplitude}});
        }
        return dump({{"command", "eigs"}, {"boundary", to_json(config.boundary)}, {"pairs", rows}});
    }
    CsvTable table;
    table.config = {{"command", "eigs"}, {"boundary", config.boundary.describe()}, {"n", std::to_string(config.count)}};
    table.columns = {"k", "lambda", "amplitude"};
    for (const EigenPair& p : pairs) {
        table.rows.push_back({static_cast<double>(p.index), p.lambda, p.amplitude});
    }
    return to_csv(table);
}

std::string render_solve(const RunConfig& config) {
    const Integrand u0 = make_u0(config.u0);
    const SpectralSolution sol = solve_spectral(config.alpha, config.boundary, u0, config.truncation, config.horizon);
    const std::vector<double> xs = linspace(0.0, 1.0, static_cast<std::size_t>(config.points));
    const std::vector<double> ts = sample_times(config);
    const Matrix values = evaluate_grid(sol, xs, ts);

    if (!config.solution_output.empty()) {
        write_file_atomic(config.solution_output, dump(to_json(sol)));
    }
    if (config.format == Format::Json) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < values.rows(); ++i) {
            rows.push_back(values.row(i));
        }
        return dump({{"command", "solve"},
                     {"u0", config.u0},
                     {"solution", to_json(sol)},
                     {"xs", xs},
                     {"ts", ts},
                     {"values", rows}});
    }
    CsvTable table;
    table.config = {{"command", "solve"},
                    {"alpha", format_double(config.alpha)},
                    {"boundary", config.boundary.describe()},
                    {"u0", config.u0},
                    {"N", std::to_string(config.truncation)},
                    {"T", format_double(config.horizon)},
                    {"u0_norm", format_double(sol.u0_norm)}};
    table.columns.push_back("x");
    for (double t : ts) {
        table.columns.push_back("t=" + format_double(t));
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::vector<double> row{xs[i]};
        const std::vector<double> r = values.row(i);
        row.insert(row.end(), r.begin(), r.end());
        table.rows.push_back(std::move(row));
    }
    return to_csv(table);
}

std::string render_table1(const RunConfig& config) {
    const ConvergenceReport report = eigen_gap_table(config.betas, config.kmax);
    const std::size_t nb = config.betas.size();
    // rows are sorted by (k, beta); recover the beta order of the request
    std::vector<double> sorted_betas = config.betas;
    std::sort(sorted_betas.begin(), sorted_betas.end());

    if (config.format == Format::Json) {
        nlohmann::json rows = nlohmann::json::array();
        for (int k = 1; k <= config.kmax; ++k) {
            std::vector<double> lambdas;
            for (std::size_t b = 0; b < nb; ++b) {
                lambdas.push_back(report.eigen_rows[static_cast<std::size_t>(k - 1) * nb + b].lambda);
            }
            rows.push_back({{"k", k},
                            {"lambdas", lambdas},
                            {"dirichlet", report.eigen_rows[static_cast<std::size_t>(k - 1) * nb].lambda_dirichlet}});
        }
        return dump({{"command", "table1"}, {"betas", sorted_betas}, {"rows", rows}});
    }
    CsvTable table;
    table.config = {{"command", "table1"}, {"betas", join(sorted_betas)}, {"kmax", std::to_string(config.kmax)}};
    table.columns.push_back("k");
    for (double beta : sorted_betas) {
        table.columns.push_back("beta=" + format_double(beta));
    }
    table.columns.push_back("k2pi2");
    for (int k = 1; k <= config.kmax; ++k) {
        std::vector<double> row{static_cast<double>(k)};
        for (std::size_t b = 0; b < nb; ++b) {
            row.push_back(report.eigen_rows[static_cast<std::size_t>(k - 1) * nb + b].lambda);
        }
        row.push_back(dirichlet_eigs(k).back().lambda);
        table.rows.push_back(std::move(row));
    }
    return to_csv(table);
}

std::string render_fig3(const RunConfig& config) {
    const Integrand u0 = make_u0(config.u0);
    const std::vector<double> xs = linspace(0.0, 1.0, static_cast<std::size_t>(config.points));
    const std::vector<double> ts{config.t};
    std::vector<double> betas = config.betas;
    std::sort(betas.begin(), betas.end());

    std::vector<std::vector<double>> profiles;
    for (double beta : betas) {
        const SpectralSolution sol =
            solve_spectral(config.alpha, BoundarySpec::robin(beta), u0, config.truncation, config.t);
        profiles.push_back(evaluate_grid(sol, xs, ts).column(0));
    }
    const SpectralSolution dirichlet =
        solve_spectral(config.alpha, BoundarySpec::dirichlet(), u0, config.truncation, config.t);
    profiles.push_back(evaluate_grid(dirichlet, xs, ts).column(0));

    if (config.format == Format::Json) {
        nlohmann::json robin = nlohmann::json::array();
        for (std::size_t b = 0; b < betas.size(); ++b) {
            robin.push_back({{"beta", betas[b]}, {"u", profiles[b]}});
        }
        return dump({{"command", "fig3"},
                     {"alpha", config.alpha},
                     {"u0", config.u0},
                     {"t", config.t},
                     {"N", config.truncation},
                     {"x", xs},
                     {"robin", robin},
                     {"u_D", profiles.back()}});
    }
    CsvTable table;
    table.config = {{"command", "fig3"},
                    {"alpha", format_double(config.alpha)},
                    {"u0", config.u0},
                    {"t", format_double(config.t)},
                    {"N", std::to_string(config.truncation)},
                    {"betas", join(betas)}};
    table.columns.push_back("x");
    for (double beta : betas) {
        table.columns.push_back("u_beta=" + format_double(beta));
    }
    table.columns.push_back("u_D");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::vector<double> row{xs[i]};
        for (const auto& profile : profiles) {
            row.push_back(profile[i]);
        }
        table.rows.push_back(std::move(row));
    }
    return to_csv(table);
}

std::string render_gapcheck(const RunConfig& config) {
    const ConvergenceReport report = eigen_gap_table(config.betas, config.kmax);
    const GapCheck check = check_gap_bound(report);
    if (config.format == Format::Json) {
        return dump({{"command", "gapcheck"}, {"report", to_json(report)}, {"check", to_json(check)}});
    }
    CsvTable rows = eigen_rows_table(report);
    rows.config = {{"command", "gapcheck"}, {"betas", join(config.betas)}, {"kmax", std::to_string(config.kmax)}};
    CsvTable summary;
    summary.columns = {"passes", "C1_hat", "monotone_in_beta"};
    summary.rows.push_back({check.passes ? 1.0 : 0.0, check.c1_hat, check.monotone_in_beta ? 1.0 : 0.0});
    const std::vector<CsvTable> blocks{rows, summary};
    return to_csv(blocks);
}

std::string render_oracle_compare(const RunConfig& config) {
    const Integrand u0 = make_u0(config.u0);
    const SpectralSolution reference =
        solve_spectral(config.alpha, config.boundary, u0, config.truncation, config.horizon);
    const double center_reference = evaluate(reference, 0.5, config.horizon);

    std::vector<std::vector<double>> rows;
    GridSolution finest;
    double first_error = 0.0;
    for (int level = 0; level < config.levels; ++level) {
        const int nx = (config.nx + 1) * (1 << level) - 1;
        const int nt = config.nt * (1 << level);
        GridSolution grid = fd_solve(config.alpha, config.boundary, u0, nx, nt, config.horizon);
        const std::vector<double> xs = grid.xs();
        const std::vector<double> spectral = evaluate_grid(reference, xs, std::vector<double>{config.horizon}).column(0);
        const std::vector<double> fd = grid.level(nt);
        std::vector<double> diff(xs.size());
        double sup = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            diff[i] = fd[i] - spectral[i];
            sup = std::max(sup, std::abs(diff[i]));
        }
        const double center_fd = interpolate(grid, nt, 0.5);
        const double center_error = std::abs(center_fd - center_reference);
        if (level == 0) {
            first_error = center_error;
        }
        const double ratio = center_error > 0.0 ? first_error / center_error : 0.0;
        rows.push_back({static_cast<double>(nx), static_cast<double>(nt), center_reference, center_fd, center_error,
                        sup, discrete_l2(xs, diff), ratio});
        finest = std::move(grid);
    }
    if (!config.grid_output.empty()) {
        write_file_atomic(config.grid_output, to_csv(grid_solution_table(finest)));
    }

    const std::vector<std::string> columns{"nx", "nt", "spectral_center", "fd_center", "center_error",
                                           "sup_distance", "l2_distance", "error_reduction"};
    if (config.format == Format::Json) {
        nlohmann::json out_rows = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json row;
            for (std::size_t i = 0; i < columns.size(); ++i) {
                row[columns[i]] = r[i];
            }
            out_rows.push_back(row);
        }
        return dump({{"command", "oracle-compare"},
                     {"alpha", config.alpha},
                     {"boundary", to_json(config.boundary)},
                     {"u0", config.u0},
                     {"T", config.horizon},
                     {"N", config.truncation},
                     {"rows", out_rows}});
    }
    CsvTable table;
    table.config = {{"command", "oracle-compare"},
                    {"alpha", format_double(config.alpha)},
                    {"boundary", config.boundary.describe()},
                    {"u0", config.u0},
                    {"T", format_double(config.horizon)},
                    {"N", std::to_string(config.truncation)}};
    table.columns = columns;
    table.rows = rows;
    return to_csv(table);
}

}  // namespace

void RunConfig::validate() const {
    using detail::require;
    const bool needs_alpha = command == Command::Solve || command == Command::Fig3 || command == Command::OracleCompare;
    if (needs_alpha) {
        require(alpha > 0.0 && alpha <= 1.0, "--alpha must lie in (0, 1]");
        require(truncation >= 1, "--N must be >= 1");
        make_u0(u0);
    }
    if (command == Command::OracleCompare) {
        require(alpha < 1.0, "oracle-compare needs --alpha < 1");
        require(nx >= 3, "--nx must be >= 3");
        require(nt >= 2, "--nt must be >= 2");
        require(levels >= 1 && levels <= 6, "--levels must lie in [1, 6]");
    }
    if (command == Command::Solve || command == Command::OracleCompare) {
        require(horizon > 0.0 && std::isfinite(horizon), "--T must be positive");
    }
    if (command == Command::Solve) {
        require(points >= 1, "--points must be >= 1");
        for (double t : ts) {
            require(t >= 0.0 && t <= horizon, "--ts entries must lie in [0, T]");
        }
    }
    if (command == Command::Fig3) {
        require(t > 0.0 && std::isfinite(t), "--t must be positive");
        require(points >= 2, "--points must be >= 2");
    }
    if (command == Command::Table1 || command == Command::GapCheck || command == Command::Fig3) {
        require(!betas.empty(), "--betas must list at least one value");
        for (double beta : betas) {
            require(beta > 0.0 && std::isfinite(beta), "--betas entries must be positive");
        }
    }
    if (command == Command::Table1 || command == Command::GapCheck) {
        require(kmax >= 1, "--kmax must be >= 1");
    }
    if (command == Command::Eigs) {
        require(count >= 1, "--n must be >= 1");
    }
}

Integrand make_u0(const std::string& spec) {
    if (spec == "sin-pi") {
        return {[](double x) { return std::sin(kPi * x); }, kPi};
    }
    if (spec == "sin-2pi") {
        return {[](double x) { return std::sin(2.0 * kPi * x); }, 2.0 * kPi};
    }
    if (spec == "bump") {
        return {[](double x) { return 4.0 * x * (1.0 - x); }, 1.0};
    }
    if (spec == "zero") {
        return {[](double) { return 0.0; }, 0.0};
    }
    constexpr std::string_view kPrefix = "coeffs:";
    if (spec.rfind(kPrefix, 0) == 0) {
        const std::vector<double> a = parse_list(spec.substr(kPrefix.size()));
        detail::require(!a.empty(), "coefficient list is empty");
        return {[a](double x) {
                    double sum = 0.0;
                    for (std::size_t k = 0; k < a.size(); ++k) {
                        sum += a[k] * std::sin(static_cast<double>(k + 1) * kPi * x);
                    }
                    return sum;
                },
                static_cast<double>(a.size()) * kPi};
    }
    throw InvalidArgument("unknown u0 '" + spec + "' (sin-pi, sin-2pi, bump, zero, coeffs:a1,a2,...)");
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(item, &used);
        } catch (const std::exception&) {
            throw InvalidArgument("not a number: '" + item + "'");
        }
        detail::require(used == item.size() && std::isfinite(value), "not a number: '" + item + "'");
        out.push_back(value);
    }
    return out;
}

ParseResult parse_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral solver for the Caputo time-fractional diffusion equation on [0, 1]"};
    app.require_subcommand(1);

    RunConfig config;
    std::string format = "csv";
    std::string betas;
    std::string ts;
    bool dirichlet = false;
    std::optional<double> beta;

    auto add_output = [&](CLI::App* sub) {
        sub->add_option("-o,--output", config.output, "Output file (default: stdout)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };
    auto add_boundary = [&](CLI::App* sub) {
        auto* d = sub->add_flag("--dirichlet", dirichlet, "Homogeneous Dirichlet boundary (default)");
        auto* r = sub->add_option("--beta", beta, "Robin coefficient beta > 0");
        d->excludes(r);
    };
    auto add_problem = [&](CLI::App* sub) {
        sub->add_option("--alpha", config.alpha, "Caputo order in (0, 1]");
        sub->add_option("--u0", config.u0, "sin-pi | sin-2pi | bump | zero | coeffs:a1,a2,...");
        sub->add_option("--N", config.truncation, "Number of eigenmodes");
    };

    auto* eigs = app.add_subcommand("eigs", "Eigenvalue / amplitude table");
    add_boundary(eigs);
    eigs->add_option("--n", config.count, "Number of eigenpairs");
    add_output(eigs);

    auto* solve = app.add_subcommand("solve", "Evaluate the series solution on an (x, t) grid");
    add_problem(solve);
    add_boundary(solve);
    solve->add_option("--T", config.horizon, "Time horizon");
    solve->add_option("--points", config.points, "Equispaced x samples on [0, 1]");
    solve->add_option("--ts", ts, "Comma-separated sample times (default: 5 points on [0, T])");
    solve->add_option("--solution-out", config.solution_output, "Also write the SpectralSolution as JSON");
    add_output(solve);

    auto* table1 = app.add_subcommand("table1", "Robin eigenvalues per beta next to k^2 pi^2");
    table1->add_option("--betas", betas, "Comma-separated Robin coefficients")->required();
    table1->add_option("--kmax", config.kmax, "Largest index k");
    add_output(table1);

    auto* fig3 = app.add_subcommand("fig3", "Robin and Dirichlet solution profiles at time t");
    add_problem(fig3);
    fig3->add_option("--betas", betas, "Comma-separated Robin coefficients")->required();
    fig3->add_option("--t", config.t, "Evaluation time");
    fig3->add_option("--points", config.points, "Equispaced x samples on [0, 1]");
    add_output(fig3);

    auto* gapcheck = app.add_subcommand("gapcheck", "Dirichlet-Robin eigenvalue gaps and the bound constant");
    gapcheck->add_option("--betas", betas, "Comma-separated Robin coefficients")->required();
    gapcheck->add_option("--kmax", config.kmax, "Largest index k");
    add_output(gapcheck);

    auto* oracle = app.add_subcommand("oracle-compare", "Spectral solution against the finite-difference oracle");
    add_problem(oracle);
    add_boundary(oracle);
    oracle->add_option("--T", config.horizon, "Time horizon");
    oracle->add_option("--nx", config.nx, "Interior grid points");
    oracle->add_option("--nt", config.nt, "Time steps");
    oracle->add_option("--levels", config.levels, "Number of grids, each doubling (nx + 1) and nt");
    oracle->add_option("--grid-output", config.grid_output, "Write the finest grid solution as CSV");
    add_output(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return {std::nullopt, kExitOk};
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return {std::nullopt, kExitValidation};
    }

    const std::vector<std::pair<CLI::App*, Command>> commands{
        {eigs, Command::Eigs},   {solve, Command::Solve},       {table1, Command::Table1},
        {fig3, Command::Fig3},   {gapcheck, Command::GapCheck}, {oracle, Command::OracleCompare}};
    for (const auto& [sub, command] : commands) {
        if (sub->parsed()) {
            config.command = command;
        }
    }
    try {
        config.format = format == "json" ? Format::Json : Format::Csv;
        if (beta) {
            config.boundary = BoundarySpec::robin(*beta);
        }
        if (!betas.empty()) {
            config.betas = parse_list(betas);
        }
        if (!ts.empty()) {
            config.ts = parse_list(ts);
        }
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return {std::nullopt, kExitValidation};
    }
    return {config, kExitOk};
}

std::string render(const RunConfig& config) {
    config.validate();
    switch (config.command) {
        case Command::Eigs: return render_eigs(config);
        case Command::Solve: return render_solve(config);
        case Command::Table1: return render_table1(config);
        case Command::Fig3: return render_fig3(config);
        case Command::GapCheck: return render_gapcheck(config);
        case Command::OracleCompare: return render_oracle_compare(config);
    }
    throw InvalidArgument("unknown command");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const std::string document = render(config);
        if (config.output.empty()) {
            out << document;
        } else {
            write_file_atomic(config.output, document);
        }
        return kExitOk;
    } catch (const InvalidArgument& e) {
        err << "error: " << command_name(config.command) << ": " << e.what() << '\n';
        return kExitValidation;
    } catch (const NumericalError& e) {
        err << "numerical error: " << command_name(config.command) << ": " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << command_name(config.command) << ": " << e.what() << '\n';
        return kExitIo;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    const ParseResult parsed = parse_command_line(argc, argv, out, err);
    if (!parsed.config) {
        return parsed.exit_code;
    }
    return run(*parsed.config, out, err);
}

}  // namespace fracspec::cli
