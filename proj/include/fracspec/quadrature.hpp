#pragma once

#include "fracspec/eigensystem.hpp"

#include <functional>
#include <span>
#include <vector>

namespace fracspec {

/// A real function on [0, 1] with a hint of its oscillation (about sqrt(lambda) of its highest mode).
struct Integrand {
    std::function<double(double)> eval;
    double oscillation_hint = 0.0;
};

/// A function that also exposes its exact derivative, as the bilinear forms need.
struct DifferentiableFunction {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    double oscillation_hint = 0.0;
};

Integrand as_integrand(const EigenPair& pair);
DifferentiableFunction as_differentiable(const EigenPair& pair);

/**
 * int_0^1 f(x) dx by composite 16-point Gauss-Legendre.
 *
 * Starts from max(8, ceil(oscillation_hint)) equal panels and doubles the panel
 * count until two successive values differ by at most 1e-12 (1 + |value|).
 * Throws QuadratureFailure when the doubling budget is spent.
 */
double integrate(const std::function<double(double)>& f, double oscillation_hint);

/// (f, g) = int_0^1 f g dx.
double inner_product(const Integrand& f, const Integrand& g);

/// sqrt((f, f)).
double l2_norm(const Integrand& f);

/// a(f, g) = int_0^1 f' g' dx.
double bilinear_a(const DifferentiableFunction& f, const DifferentiableFunction& g);

/// a(f, g) + beta (f(0) g(0) + f(1) g(1)); the boundary of [0, 1] carries counting measure.
double bilinear_a_beta(const DifferentiableFunction& f, const DifferentiableFunction& g, double beta);

/// Coefficients c_k = (u0, psi_k) in basis order. All pairs must share one boundary spec.
std::vector<double> project(const Integrand& u0, std::span<const EigenPair> basis);

}  // namespace fracspec
