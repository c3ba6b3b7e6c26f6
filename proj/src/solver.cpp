#include "fracspec/solver.hpp"

#include "fracspec/error.hpp"
#include "fracspec/mittag_leffler.hpp"
#include "fracspec/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace fracspec {
namespace {

void check_point(const SpectralSolution& sol, double x, double t) {
    detail::require(x >= 0.0 && x <= 1.0, "x must lie in [0, 1]");
    detail::require(t >= 0.0 && t <= sol.horizon, "t must lie in [0, T]");
}

double coefficient_energy(const SpectralSolution& sol) {
    double sum = 0.0;
    for (double c : sol.coeffs) {
        sum += c * c;
    }
    return sum;
}

}  // namespace

void SpectralSolution::validate() const {
    detail::require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1]");
    detail::require(horizon > 0.0, "horizon T must be positive");
    detail::require(!pairs.empty(), "a spectral solution needs at least one mode");
    detail::require(pairs.size() == coeffs.size(), "mode and coefficient counts differ");
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        detail::require(pairs[k].boundary == boundary, "mode boundary differs from the solution boundary");
        detail::require(k == 0 || pairs[k].lambda > pairs[k - 1].lambda, "eigenvalues must be strictly increasing");
    }
    detail::require(coefficient_energy(*this) <= u0_norm * u0_norm + 1e-9, "coefficients violate Bessel's inequality");
}

SpectralSolution solve_spectral(double alpha, const BoundarySpec& boundary, const Integrand& u0, int n,
                                double horizon) {
    detail::require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1]");
    detail::require(n >= 1, "truncation N must be >= 1");
    detail::require(horizon > 0.0, "horizon T must be positive");

    SpectralSolution sol;
    sol.alpha = alpha;
    sol.boundary = boundary;
    sol.horizon = horizon;
    sol.pairs = eigenpairs(boundary, n);
    sol.coeffs = project(u0, sol.pairs);
    sol.u0_norm = l2_norm(u0);
    sol.validate();
    return sol;
}

std::vector<double> time_factors(const SpectralSolution& sol, double t) {
    std::vector<double> factors(sol.size(), 1.0);
    if (t == 0.0) {
        return factors;
    }
    const double t_alpha = std::pow(t, sol.alpha);
    for (std::size_t k = 0; k < sol.size(); ++k) {
        factors[k] = ml(MLQuery{sol.alpha, sol.pairs[k].lambda * t_alpha});
    }
    return factors;
}

double evaluate(const SpectralSolution& sol, double x, double t) {
    check_point(sol, x, t);
    const std::vector<double> factors = time_factors(sol, t);
    double sum = 0.0;
    for (std::size_t k = 0; k < sol.size(); ++k) {
        sum += sol.coeffs[k] * factors[k] * eigenfunction_eval(sol.pairs[k], x);
    }
    return sum;
}

double evaluate_dx(const SpectralSolution& sol, double x, double t) {
    check_point(sol, x, t);
    const std::vector<double> factors = time_factors(sol, t);
    double sum = 0.0;
    for (std::size_t k = 0; k < sol.size(); ++k) {
        sum += sol.coeffs[k] * factors[k] * eigenfunction_deriv(sol.pairs[k], x);
    }
    return sum;
}

Matrix evaluate_grid(const SpectralSolution& sol, std::span<const double> xs, std::span<const double> ts) {
    for (double x : xs) {
        detail::require(x >= 0.0 && x <= 1.0, "x must lie in [0, 1]");
    }
    for (double t : ts) {
        detail::require(t >= 0.0 && t <= sol.horizon, "t must lie in [0, T]");
    }
    Matrix modes(sol.size(), xs.size());
    for (std::size_t k = 0; k < sol.size(); ++k) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            modes(k, i) = sol.coeffs[k] * eigenfunction_eval(sol.pairs[k], xs[i]);
        }
    }
    Matrix out(xs.size(), ts.size());
    parallel_for(ts.size(), [&](std::size_t j) {
        const std::vector<double> factors = time_factors(sol, ts[j]);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double sum = 0.0;
            for (std::size_t k = 0; k < sol.size(); ++k) {
                sum += factors[k] * modes(k, i);
            }
            out(i, j) = sum;
        }
    });
    return out;
}

double truncation_bound(const SpectralSolution& sol, double t) {
    detail::require(t > 0.0, "truncation bound needs t > 0");
    const double defect = std::max(0.0, sol.u0_norm * sol.u0_norm - coefficient_energy(sol));
    const double decay = ml(MLQuery{sol.alpha, sol.pairs.back().lambda * std::pow(t, sol.alpha)});
    return std::sqrt(defect) * decay * kTruncationMargin;
}

}  // namespace fracspec
