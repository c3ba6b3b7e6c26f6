#include "fracspec/convergence.hpp"

#include "fracspec/eigensystem.hpp"
#include "fracspec/error.hpp"
#include "fracspec/grid.hpp"
#include "fracspec/parallel.hpp"
#include "fracspec/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace fracspec {
namespace {

constexpr double kGapSlack = 1e-9;

std::vector<double> sample(const SpectralSolution& sol, std::span<const double> xs, double t) {
    const std::vector<double> ts{t};
    return evaluate_grid(sol, xs, ts).column(0);
}

}  // namespace

ConvergenceReport eigen_gap_table(std::span<const double> betas, int kmax) {
    detail::require(kmax >= 1, "kmax must be >= 1");
    for (double beta : betas) {
        detail::require(beta > 0.0, "betas must be positive");
    }
    const std::vector<EigenPair> dirichlet = dirichlet_eigs(kmax);
    std::vector<std::vector<EigenPair>> robin(betas.size());
    parallel_for(betas.size(), [&](std::size_t b) { robin[b] = robin_eigs(betas[b], kmax); });

    ConvergenceReport report;
    for (int k = 1; k <= kmax; ++k) {
        const double lambda_d = dirichlet[static_cast<std::size_t>(k - 1)].lambda;
        for (std::size_t b = 0; b < betas.size(); ++b) {
            EigenGapRow row;
            row.k = k;
            row.beta = betas[b];
            row.lambda = robin[b][static_cast<std::size_t>(k - 1)].lambda;
            row.lambda_dirichlet = lambda_d;
            row.gap = lambda_d - row.lambda;
            row.normalized = row.gap * std::sqrt(row.beta) / (lambda_d * lambda_d);
            report.eigen_rows.push_back(row);
        }
    }
    std::stable_sort(report.eigen_rows.begin(), report.eigen_rows.end(), [](const auto& a, const auto& b) {
        return a.k != b.k ? a.k < b.k : a.beta < b.beta;
    });
    report.metadata.truncation = kmax;
    return report;
}

GapCheck check_gap_bound(const ConvergenceReport& report) {
    GapCheck check;
    std::map<int, const EigenGapRow*> last_by_k;
    for (const EigenGapRow& row : report.eigen_rows) {
        if (!(row.gap >= -kGapSlack) || !std::isfinite(row.normalized)) {
            check.passes = false;
        }
        if (std::isfinite(row.normalized)) {
            check.c1_hat = std::max(check.c1_hat, row.normalized);
        }
        auto [it, inserted] = last_by_k.try_emplace(row.k, &row);
        if (!inserted) {
            if (row.beta > it->second->beta && !(row.gap < it->second->gap)) {
                check.monotone_in_beta = false;
            }
            it->second = &row;
        }
    }
    return check;
}

ConvergenceReport solution_convergence(double alpha, const Integrand& u0, double t, std::span<const double> betas,
                                       std::span<const double> xs, int n, const std::string& u0_label) {
    detail::require(t > 0.0, "solution convergence needs t > 0");
    detail::require(std::is_sorted(betas.begin(), betas.end()), "betas must be increasing");
    detail::require(xs.size() >= 2, "need at least two grid points");

    const SpectralSolution dirichlet = solve_spectral(alpha, BoundarySpec::dirichlet(), u0, n, t);
    const std::vector<double> reference = sample(dirichlet, xs, t);

    ConvergenceReport report;
    report.solution_rows.resize(betas.size());
    parallel_for(betas.size(), [&](std::size_t b) {
        const SpectralSolution robin = solve_spectral(alpha, BoundarySpec::robin(betas[b]), u0, n, t);
        const std::vector<double> values = sample(robin, xs, t);
        std::vector<double> diff(values.size());
        double sup = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            diff[i] = values[i] - reference[i];
            sup = std::max(sup, std::abs(diff[i]));
        }
        report.solution_rows[b] = SolutionDistanceRow{betas[b], t, sup, discrete_l2({xs.begin(), xs.end()}, diff)};
    });

    char grid[96];
    std::snprintf(grid, sizeof grid, "%zu points on [%.17g, %.17g]", xs.size(), xs.front(), xs.back());
    report.metadata = ReportMetadata{alpha, u0_label, n, grid};
    return report;
}

double first_extremum_sign(const std::function<double(double)>& f, std::span<const double> xs) {
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        const double left = f(xs[i - 1]);
        const double mid = f(xs[i]);
        const double right = f(xs[i + 1]);
        if ((mid - left) * (right - mid) <= 0.0 && mid != 0.0) {
            return mid > 0.0 ? 1.0 : -1.0;
        }
    }
    return 1.0;
}

std::vector<double> eigenfunction_l2_convergence(int k, std::span<const double> betas, std::span<const double> xs) {
    detail::require(k >= 1, "k must be >= 1");
    detail::require(xs.size() >= 3, "need at least three grid points to orient eigenfunctions");
    const EigenPair phi = dirichlet_eigs(k).back();
    auto phi_fn = [&](double x) { return eigenfunction_eval(phi, x); };
    const double phi_sign = first_extremum_sign(phi_fn, xs);

    std::vector<double> distances(betas.size());
    parallel_for(betas.size(), [&](std::size_t b) {
        const EigenPair psi = robin_eigs(betas[b], k).back();
        auto psi_fn = [&](double x) { return eigenfunction_eval(psi, x); };
        const double psi_sign = first_extremum_sign(psi_fn, xs);
        const double hint = std::max(std::sqrt(phi.lambda), std::sqrt(psi.lambda));
        const double squared = integrate(
            [&](double x) {
                const double d = psi_sign * psi_fn(x) - phi_sign * phi_fn(x);
                return d * d;
            },
            hint);
        distances[b] = std::sqrt(std::max(0.0, squared));
    });
    return distances;
}

}  // namespace fracspec
