#include "fracspec/io.hpp"

#include "fracspec/error.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace fracspec {

std::string format_double(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

std::string to_csv(const CsvTable& table) {
    std::ostringstream out;
    for (const auto& [key, value] : table.config) {
        out << "# " << key << " = " << value << '\n';
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_double(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

std::string to_csv(std::span<const CsvTable> blocks) {
    std::string out;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i) {
            out += '\n';
        }
        out += to_csv(blocks[i]);
    }
    return out;
}

nlohmann::json to_json(const BoundarySpec& boundary) {
    if (boundary.is_dirichlet()) {
        return {{"kind", "dirichlet"}};
    }
    return {{"kind", "robin"}, {"beta", boundary.beta()}};
}

BoundarySpec boundary_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "dirichlet") {
        return BoundarySpec::dirichlet();
    }
    if (kind == "robin") {
        return BoundarySpec::robin(j.at("beta").get<double>());
    }
    throw InvalidArgument("unknown boundary kind '" + kind + "'");
}

nlohmann::json to_json(const SpectralSolution& sol) {
    std::vector<double> lambdas;
    std::vector<double> amplitudes;
    for (const EigenPair& pair : sol.pairs) {
        lambdas.push_back(pair.lambda);
        amplitudes.push_back(pair.amplitude);
    }
    return {{"alpha", sol.alpha},
            {"boundary", to_json(sol.boundary)},
            {"lambdas", lambdas},
            {"amplitudes", amplitudes},
            {"coeffs", sol.coeffs},
            {"u0_norm", sol.u0_norm},
            {"N", sol.size()},
            {"T", sol.horizon}};
}

SpectralSolution spectral_solution_from_json(const nlohmann::json& j) {
    try {
        SpectralSolution sol;
        sol.alpha = j.at("alpha").get<double>();
        sol.boundary = boundary_from_json(j.at("boundary"));
        sol.horizon = j.at("T").get<double>();
        sol.u0_norm = j.at("u0_norm").get<double>();
        sol.coeffs = j.at("coeffs").get<std::vector<double>>();
        const auto lambdas = j.at("lambdas").get<std::vector<double>>();
        const auto amplitudes = j.at("amplitudes").get<std::vector<double>>();
        const auto n = j.at("N").get<std::size_t>();
        detail::require(lambdas.size() == n && amplitudes.size() == n && sol.coeffs.size() == n,
                        "solution arrays disagree with N");
        for (std::size_t k = 0; k < n; ++k) {
            sol.pairs.push_back(EigenPair{static_cast<int>(k) + 1, lambdas[k], amplitudes[k], sol.boundary});
        }
        sol.validate();
        return sol;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed solution JSON: ") + e.what());
    }
}

CsvTable grid_solution_table(const GridSolution& grid) {
    CsvTable table;
    table.config = {{"alpha", format_double(grid.alpha)},
                    {"boundary", grid.boundary.describe()},
                    {"nx", std::to_string(grid.nx)},
                    {"nt", std::to_string(grid.nt)},
                    {"dx", format_double(grid.dx)},
                    {"dt", format_double(grid.dt)}};
    table.columns.push_back("t");
    for (std::size_t i = 0; i < grid.values.cols(); ++i) {
        table.columns.push_back("u" + std::to_string(i));
    }
    for (int n = 0; n <= grid.nt; ++n) {
        std::vector<double> row{grid.time(n)};
        const std::vector<double> level = grid.level(n);
        row.insert(row.end(), level.begin(), level.end());
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable eigen_rows_table(const ConvergenceReport& report) {
    CsvTable table;
    table.columns = {"k", "beta", "lambda", "lambda_dirichlet", "gap", "normalized"};
    for (const EigenGapRow& r : report.eigen_rows) {
        table.rows.push_back({static_cast<double>(r.k), r.beta, r.lambda, r.lambda_dirichlet, r.gap, r.normalized});
    }
    return table;
}

CsvTable solution_rows_table(const ConvergenceReport& report) {
    CsvTable table;
    table.config = {{"alpha", format_double(report.metadata.alpha)},
                    {"u0", report.metadata.u0},
                    {"N", std::to_string(report.metadata.truncation)},
                    {"grid", report.metadata.grid}};
    table.columns = {"beta", "t", "sup_distance", "l2_distance"};
    for (const SolutionDistanceRow& r : report.solution_rows) {
        table.rows.push_back({r.beta, r.t, r.sup_distance, r.l2_distance});
    }
    return table;
}

nlohmann::json to_json(const ConvergenceReport& report) {
    nlohmann::json eigen = nlohmann::json::array();
    for (const EigenGapRow& r : report.eigen_rows) {
        eigen.push_back({{"k", r.k},
                         {"beta", r.beta},
                         {"lambda", r.lambda},
                         {"lambda_dirichlet", r.lambda_dirichlet},
                         {"gap", r.gap},
                         {"normalized", r.normalized}});
    }
    nlohmann::json solution = nlohmann::json::array();
    for (const SolutionDistanceRow& r : report.solution_rows) {
        solution.push_back(
            {{"beta", r.beta}, {"t", r.t}, {"sup_distance", r.sup_distance}, {"l2_distance", r.l2_distance}});
    }
    return {{"eigen_rows", eigen},
            {"solution_rows", solution},
            {"metadata",
             {{"alpha", report.metadata.alpha},
              {"u0", report.metadata.u0},
              {"N", report.metadata.truncation},
              {"grid", report.metadata.grid}}}};
}

nlohmann::json to_json(const GapCheck& check) {
    return {{"passes", check.passes}, {"C1_hat", check.c1_hat}, {"monotone_in_beta", check.monotone_in_beta}};
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path temp = target;
    temp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open " + temp.string() + " for writing");
        }
        out << contents;
        out.flush();
        if (!out) {
            throw std::runtime_error("failed writing " + temp.string());
        }
    }
    std::error_code ec;
    fs::rename(temp, target, ec);
    if (ec) {
        fs::remove(temp);
        throw std::runtime_error("cannot move output into " + path + ": " + ec.message());
    }
}

}  // namespace fracspec
