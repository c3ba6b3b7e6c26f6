#pragma once

#include "fracspec/convergence.hpp"
#include "fracspec/oracle.hpp"
#include "fracspec/solver.hpp"

#include "json.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fracspec {

/// printf("%.17g").
std::string format_double(double value);

/// CSV document: '#'-prefixed config lines, one header row, numeric rows; LF endings.
struct CsvTable {
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string to_csv(const CsvTable& table);
/// Several tables separated by a blank line.
std::string to_csv(std::span<const CsvTable> blocks);

nlohmann::json to_json(const BoundarySpec& boundary);
BoundarySpec boundary_from_json(const nlohmann::json& j);

/// Fields: alpha, boundary, lambdas, amplitudes, coeffs, u0_norm, N, T.
nlohmann::json to_json(const SpectralSolution& sol);
/// Inverse of to_json; the result is validated.
SpectralSolution spectral_solution_from_json(const nlohmann::json& j);

/// One CSV row per time level: t followed by the nx + 2 node values.
CsvTable grid_solution_table(const GridSolution& grid);

CsvTable eigen_rows_table(const ConvergenceReport& report);
CsvTable solution_rows_table(const ConvergenceReport& report);
nlohmann::json to_json(const ConvergenceReport& report);
nlohmann::json to_json(const GapCheck& check);

/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace fracspec
