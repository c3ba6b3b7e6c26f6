// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "fracspec/cli.hpp"
#include "fracspec/convergence.hpp"
#include "fracspec/eigensystem.hpp"
#include "fracspec/grid.hpp"
#include "fracspec/mittag_leffler.hpp"
#include "fracspec/oracle.hpp"
#include "fracspec/quadrature.hpp"
#include "fracspec/solver.hpp"
#include "reference_values.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace fracspec;
using fracspec::testing::erfcx;
using fracspec::testing::kTableBetas;
using fracspec::testing::kTableDirichlet;
using fracspec::testing::kTableLambda;
using fracspec::testing::rel_err;

namespace {

constexpr double kPi = std::numbers::pi;

const Integrand kSinPi{[](double x) { return std::sin(kPi * x); }, kPi};

struct Verdict {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const char* name, double budget_seconds, const std::function<Verdict()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = budget_seconds <= 0.0 || seconds < budget_seconds;
    const bool pass = v.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("[%s] criterion %d (%s): %s; %.2fs%s\n", pass ? "PASS" : "FAIL", id, name, v.detail.c_str(), seconds,
                in_time ? "" : " over budget");
    std::fflush(stdout);
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buffer[256];
    std::snprintf(buffer, sizeof buffer, format, a, b, c);
    return buffer;
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (header) {
            header = false;
            continue;
        }
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            row.push_back(std::stod(cell));
        }
        rows.push_back(row);
    }
    return rows;
}

std::string run_cli(std::vector<const char*> args, int& code) {
    args.insert(args.begin(), "fracspec");
    std::ostringstream out;
    std::ostringstream err;
    code = cli::main_entry(static_cast<int>(args.size()), args.data(), out, err);
    return out.str();
}

// Quadrature L2 norm of u(., t).
double solution_norm(const SpectralSolution& sol, double t) {
    const auto factors = time_factors(sol, t);
    const Integrand u{[&](double x) {
                          double sum = 0.0;
                          for (std::size_t k = 0; k < sol.size(); ++k) {
                              sum += sol.coeffs[k] * factors[k] * eigenfunction_eval(sol.pairs[k], x);
                          }
                          return sum;
                      },
                      std::sqrt(sol.pairs.back().lambda)};
    return l2_norm(u);
}

// Solutions built by criteria 5 and 6, checked again by criterion 7.
std::vector<SpectralSolution> built;

Verdict table_reproduction() {
    int code = 0;
    const std::string out = run_cli({"table1", "--betas", "1e2,1e3,1e4,1e5,1e6", "--kmax", "10"}, code);
    const auto rows = csv_rows(out);
    if (code != 0 || rows.size() != 10) {
        return {false, "table1 did not produce 10 rows"};
    }
    double worst = 0.0;
    double worst_dirichlet = 0.0;
    for (std::size_t k = 0; k < 10; ++k) {
        for (std::size_t j = 0; j < kTableBetas.size(); ++j) {
            worst = std::max(worst, rel_err(rows[k][j + 1], kTableLambda[k][j]));
        }
        const double exact = std::pow((k + 1) * kPi, 2);
        worst_dirichlet = std::max({worst_dirichlet, rel_err(rows[k][6], exact), rel_err(rows[k][6], kTableDirichlet[k])});
    }
    const bool pass = worst <= 1e-10 && worst_dirichlet <= 4.0 * std::numeric_limits<double>::epsilon();
    return {pass, fmt("max rel err %.2e over 50 values, k^2 pi^2 column rel err %.2e", worst, worst_dirichlet)};
}

Verdict gap_properties() {
    int code = 0;
    const std::string out = run_cli({"gapcheck", "--betas", "1e2,1e3,1e4,1e5,1e6", "--kmax", "10"}, code);
    const auto report = eigen_gap_table(kTableBetas, 10);
    const auto check = check_gap_bound(report);
    double min_gap = INFINITY;
    for (const auto& row : report.eigen_rows) {
        min_gap = std::min(min_gap, row.gap);
    }
    const bool pass = code == 0 && check.passes && check.monotone_in_beta && std::isfinite(check.c1_hat) &&
                      min_gap >= -1e-9 && out.find("C1_hat") != std::string::npos;
    return {pass, fmt("min gap %.3e, C1_hat = %.6g, ", min_gap, check.c1_hat) +
                      (check.monotone_in_beta ? "gaps strictly decrease in beta" : "gaps not monotone in beta")};
}

Verdict mittag_leffler_accuracy() {
    double exp_err = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double x = 30.0 * i / 199.0;
        exp_err = std::max(exp_err, rel_err(mittag_leffler(1.0, x), std::exp(-x)));
    }
    double erfc_err = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double x = 10.0 * i / 199.0;
        erfc_err = std::max(erfc_err, rel_err(mittag_leffler(0.5, x), erfcx(x)));
    }
    double dual_err = 0.0;
    for (double alpha : {0.3, 0.5, 0.8}) {
        for (int i = 0; i <= 18; ++i) {
            const double x = 1.0 + 0.5 * i;
            dual_err = std::max(dual_err, rel_err(ml_integral({alpha, x}), ml_series({alpha, x}, 50000)));
        }
    }
    double bound = 0.0;
    for (double alpha : {0.3, 0.5, 0.8, 0.95}) {
        for (int i = 0; i < 50; ++i) {
            const double x = std::pow(10.0, -3.0 + 9.0 * i / 49.0);
            bound = std::max(bound, mittag_leffler(alpha, x) * (1.0 + x / std::tgamma(1.0 + alpha)));
        }
    }
    const bool pass = exp_err <= 1e-12 && erfc_err <= 1e-10 && dual_err <= 1e-10 && bound <= 1.0 + 1e-9;
    return {pass, fmt("exp rel err %.2e, erfcx rel err %.2e, ", exp_err, erfc_err) +
                      fmt("series/integral rel err %.2e, max E(1+x/G) = %.12f", dual_err, bound)};
}

Verdict orthonormality() {
    double gram = 0.0;
    double energy = 0.0;
    for (double beta : {0.0, 1e2, 1e4, 1e6}) {
        const auto pairs = beta == 0.0 ? dirichlet_eigs(10) : robin_eigs(beta, 10);
        for (const auto& a : pairs) {
            for (const auto& b : pairs) {
                const double delta = a.index == b.index ? 1.0 : 0.0;
                gram = std::max(gram, std::abs(inner_product(as_integrand(a), as_integrand(b)) - delta));
                const double e = bilinear_a_beta(as_differentiable(a), as_differentiable(b), beta);
                energy = std::max(energy, std::abs(e - a.lambda * delta) / a.lambda);
            }
        }
    }
    return {gram <= 1e-8 && energy <= 1e-6, fmt("Gram defect %.2e, energy defect / lambda_k %.2e", gram, energy)};
}

Verdict profile_convergence() {
    const std::vector<double> betas{1e1, 1e2, 1e3, 1e4, 1e5};
    const auto xs = linspace(0.0, 1.0, 101);
    const auto report = solution_convergence(0.8, kSinPi, 1.0, betas, xs, kDefaultTruncation, "sin-pi");
    bool decreasing = true;
    std::string column;
    for (std::size_t i = 0; i < report.solution_rows.size(); ++i) {
        column += fmt(i ? ", %.3e" : "%.3e", report.solution_rows[i].l2_distance);
        if (i > 0 && !(report.solution_rows[i].l2_distance < report.solution_rows[i - 1].l2_distance)) {
            decreasing = false;
        }
    }
    const double sup = report.solution_rows.back().sup_distance;

    int code = 0;
    const auto rows = csv_rows(run_cli({"fig3", "--alpha", "0.8", "--u0", "sin-pi", "--betas", "1e1,1e2,1e3,1e4,1e5",
                                        "--t", "1"},
                                       code));
    double cli_sup = 0.0;
    for (const auto& row : rows) {
        cli_sup = std::max(cli_sup, std::abs(row[5] - row[6]));
    }
    for (double beta : betas) {
        built.push_back(solve_spectral(0.8, BoundarySpec::robin(beta), kSinPi, kDefaultTruncation, 1.0));
    }
    built.push_back(solve_spectral(0.8, BoundarySpec::dirichlet(), kSinPi, kDefaultTruncation, 1.0));
    const bool pass = decreasing && sup <= 1e-3 && code == 0 && cli_sup <= 1e-3;
    return {pass, "L2 distances [" + column + "], " + fmt("sup at beta=1e5 %.3e (fig3 output %.3e)", sup, cli_sup)};
}

Verdict oracle_cross_check() {
    std::string detail;
    bool pass = true;
    for (const auto& boundary : {BoundarySpec::dirichlet(), BoundarySpec::robin(1e2)}) {
        const auto sol = solve_spectral(0.8, boundary, kSinPi, kDefaultTruncation, 1.0);
        built.push_back(sol);
        std::vector<double> errors;
        double sup0 = 0.0;
        for (int level = 0; level < 3; ++level) {
            const int nx = 128 * (1 << level) - 1;
            const int nt = 512 * (1 << level);
            const auto grid = fd_solve(0.8, boundary, kSinPi, nx, nt, 1.0);
            const auto exact = evaluate_grid(sol, grid.xs(), std::vector<double>{1.0}).column(0);
            const auto fd = grid.level(nt);
            double sup = 0.0;
            for (std::size_t i = 0; i < fd.size(); ++i) {
                sup = std::max(sup, std::abs(fd[i] - exact[i]));
            }
            if (level == 0) {
                sup0 = sup;
            }
            errors.push_back(std::abs(interpolate(grid, nt, 0.5) - evaluate(sol, 0.5, 1.0)));
        }
        const double ratio = errors[0] / errors[2];
        pass = pass && sup0 <= 5e-3 && ratio >= 3.0;
        detail += (detail.empty() ? "" : "; ") + boundary.describe() +
                  fmt(": sup distance %.3e, centre error %.3e -> %.3e", sup0, errors[0], errors[2]) +
                  fmt(" (ratio %.2f)", ratio);
    }
    return {pass, detail};
}

Verdict stability() {
    double worst = -INFINITY;
    for (const auto& sol : built) {
        for (double t : {0.0, 0.01, 0.1, 1.0}) {
            const double slack = t > 0.0 ? truncation_bound(sol, t) : 0.0;
            worst = std::max(worst, solution_norm(sol, t) - sol.u0_norm - slack);
        }
    }
    const bool pass = !built.empty() && worst <= 1e-6;
    return {pass, fmt("%.0f solutions; max of |u(t)| - |u0| - tail bound = %.3e", static_cast<double>(built.size()),
                      worst)};
}

Verdict caputo_identity() {
    const double alpha = 0.5;
    const double lambda = 1.0;
    std::vector<double> log_dt;
    std::vector<double> log_err;
    std::string column;
    for (double dt : {1e-2, 5e-3, 2.5e-3}) {
        const int steps = static_cast<int>(std::lround(1.0 / dt));
        std::vector<double> f(static_cast<std::size_t>(steps) + 1);
        for (int n = 0; n <= steps; ++n) {
            f[static_cast<std::size_t>(n)] = mittag_leffler(alpha, lambda * std::pow(n * dt, alpha));
        }
        const auto d = caputo_l1(f, alpha, dt);
        const double err = std::abs(d.back() + lambda * f.back());
        log_dt.push_back(std::log(dt));
        log_err.push_back(std::log(err));
        column += fmt(column.empty() ? "%.3e" : ", %.3e", err);
    }
    const double mx = (log_dt[0] + log_dt[1] + log_dt[2]) / 3.0;
    const double my = (log_err[0] + log_err[1] + log_err[2]) / 3.0;
    double sxy = 0.0;
    double sxx = 0.0;
    for (int i = 0; i < 3; ++i) {
        sxy += (log_dt[i] - mx) * (log_err[i] - my);
        sxx += (log_dt[i] - mx) * (log_dt[i] - mx);
    }
    const double order = sxy / sxx;
    const bool pass = std::abs(order - (2.0 - alpha)) <= 0.3 && log_err[2] < log_err[1] && log_err[1] < log_err[0];
    return {pass, "errors at t=1 [" + column + "], " + fmt("fitted order %.3f (expected %.1f)", order, 2.0 - alpha)};
}

}  // namespace

int main() {
    report(1, "Robin eigenvalue table", 1.0, table_reproduction);
    report(2, "gap sign, decay and bound", 1.0, gap_properties);
    report(3, "Mittag-Leffler accuracy", 5.0, mittag_leffler_accuracy);
    report(4, "orthonormality and energy", 5.0, orthonormality);
    report(5, "Robin profiles approach Dirichlet", 5.0, profile_convergence);
    report(6, "finite-difference cross-check", 60.0, oracle_cross_check);
    report(7, "stability bound", 0.0, stability);
    report(8, "Caputo eigen-identity order", 5.0, caputo_identity);
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
