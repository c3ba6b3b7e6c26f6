#pragma once

#include "fracspec/quadrature.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fracspec {

/// Gap between the k-th Dirichlet and Robin eigenvalues.
struct EigenGapRow {
    int k = 0;
    double beta = 0.0;
    double lambda = 0.0;            ///< Robin eigenvalue lambda_k(beta)
    double lambda_dirichlet = 0.0;  ///< k^2 pi^2
    double gap = 0.0;               ///< lambda_dirichlet - lambda
    double normalized = 0.0;        ///< gap sqrt(beta) / lambda_dirichlet^2
};

/// Distances between the Robin and Dirichlet solutions on a spatial grid at time t.
struct SolutionDistanceRow {
    double beta = 0.0;
    double t = 0.0;
    double sup_distance = 0.0;
    double l2_distance = 0.0;
};

struct ReportMetadata {
    double alpha = 0.0;
    std::string u0;
    int truncation = 0;
    std::string grid;
};

struct ConvergenceReport {
    std::vector<EigenGapRow> eigen_rows;  ///< sorted by (k, beta)
    std::vector<SolutionDistanceRow> solution_rows;
    ReportMetadata metadata;
};

struct GapCheck {
    bool passes = true;
    double c1_hat = 0.0;            ///< max of the normalized column
    bool monotone_in_beta = true;   ///< gaps strictly decrease with beta for every k
};

/// Rows for k = 1..kmax and every beta, sorted by (k, beta).
ConvergenceReport eigen_gap_table(std::span<const double> betas, int kmax);

/// Gap signs (>= -1e-9) and a single finite bound on the normalized column.
GapCheck check_gap_bound(const ConvergenceReport& report);

/**
 * Builds u_D and each u_beta with N modes, evaluates both on xs at time t and
 * records sup and trapezoidal L2 distances. Pass/fail is left to the caller.
 */
ConvergenceReport solution_convergence(double alpha, const Integrand& u0, double t, std::span<const double> betas,
                                       std::span<const double> xs, int n, const std::string& u0_label = "custom");

/// Sign of f at its first interior local extremum on the sampled grid (+1 if none is found).
double first_extremum_sign(const std::function<double(double)>& f, std::span<const double> xs);

/**
 * |psi_k(beta) - phi_k|_{L2} per beta, after orienting both eigenfunctions so
 * their first interior extremum on xs is positive.
 */
std::vector<double> eigenfunction_l2_convergence(int k, std::span<const double> betas, std::span<const double> xs);

}  // namespace fracspec
