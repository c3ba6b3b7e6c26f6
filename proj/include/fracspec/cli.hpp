#pragma once

#include "fracspec/eigensystem.hpp"
#include "fracspec/quadrature.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fracspec::cli {

enum class Command { Eigs, Solve, Table1, Fig3, GapCheck, OracleCompare };
enum class Format { Csv, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

struct RunConfig {
    Command command = Command::Eigs;
    double alpha = 0.8;
    BoundarySpec boundary = BoundarySpec::dirichlet();
    std::string u0 = "sin-pi";
    int truncation = 64;
    double horizon = 1.0;          ///< T for solve / oracle-compare
    double t = 1.0;                ///< evaluation time for fig3
    int nx = 127;
    int nt = 512;
    int levels = 1;                ///< oracle-compare grid doublings + 1
    std::vector<double> betas;
    int kmax = 10;
    int count = 10;                ///< eigs: number of pairs
    int points = 101;              ///< spatial samples for solve / fig3
    std::vector<double> ts;        ///< solve: sample times (default: 5 points on [0, T])
    std::string output;            ///< empty: stdout
    Format format = Format::Csv;
    std::string solution_output;   ///< solve: optional SpectralSolution JSON
    std::string grid_output;       ///< oracle-compare: optional finest GridSolution CSV

    /// Throws InvalidArgument when a field violates the preconditions of the operation it feeds.
    void validate() const;
};

/// Initial-data presets: sin-pi, sin-2pi, bump (4x(1-x)), zero, or "coeffs:a1,a2,..." for sum a_k sin(k pi x).
Integrand make_u0(const std::string& spec);

/// Comma-separated reals ("1e2,1e3").
std::vector<double> parse_list(const std::string& text);

struct ParseResult {
    std::optional<RunConfig> config;  ///< empty when parsing ended (help or error)
    int exit_code = kExitOk;
};

/// Parses argv; diagnostics and help go to `err` / `out`.
ParseResult parse_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// The document a run produces, without writing it anywhere.
std::string render(const RunConfig& config);

/// Validates, renders and writes the output (stdout when config.output is empty). Returns the exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_command_line followed by run.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fracspec::cli
