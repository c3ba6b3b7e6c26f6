#pragma once

#include "fracspec/eigensystem.hpp"
#include "fracspec/grid.hpp"
#include "fracspec/quadrature.hpp"

#include <span>
#include <vector>

namespace fracspec {

inline constexpr int kDefaultTruncation = 64;

/// Margin applied over the analytic tail bound.
inline constexpr double kTruncationMargin = 1.05;

/**
 * Truncated eigenfunction expansion
 *   u(x, t) = sum_{k <= N} c_k E_alpha(-lambda_k t^alpha) psi_k(x),  c_k = (u0, psi_k).
 * Immutable once built.
 */
struct SpectralSolution {
    double alpha = 1.0;
    BoundarySpec boundary = BoundarySpec::dirichlet();
    double horizon = 1.0;
    std::vector<EigenPair> pairs;
    std::vector<double> coeffs;
    double u0_norm = 0.0;

    std::size_t size() const { return pairs.size(); }

    /// Throws InvalidArgument if sizes, ordering or the Bessel inequality are violated.
    void validate() const;
};

SpectralSolution solve_spectral(double alpha, const BoundarySpec& boundary, const Integrand& u0, int n,
                                double horizon);

/// E_alpha(-lambda_k t^alpha) for every mode; exactly 1 at t = 0.
std::vector<double> time_factors(const SpectralSolution& sol, double t);

double evaluate(const SpectralSolution& sol, double x, double t);

/// d/dx of the truncated series, term by term.
double evaluate_dx(const SpectralSolution& sol, double x, double t);

/// M(i, j) = evaluate(sol, xs[i], ts[j]); Mittag-Leffler factors are computed once per (k, t).
Matrix evaluate_grid(const SpectralSolution& sol, std::span<const double> xs, std::span<const double> ts);

/// L2 tail bound sqrt(|u0|^2 - sum c_k^2) E_alpha(-lambda_N t^alpha), times kTruncationMargin.
double truncation_bound(const SpectralSolution& sol, double t);

}  // namespace fracspec
