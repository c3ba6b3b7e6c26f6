#include "fracspec/quadrature.hpp"

#include "fracspec/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace fracspec {
namespace {

constexpr int kOrder = 16;
constexpr int kMaxDoublings = 12;
constexpr double kRefinementTolerance = 1e-12;

struct GaussLegendre {
    std::array<double, kOrder> nodes{};
    std::array<double, kOrder> weights{};
};

// Nodes and weights on [-1, 1] by Newton iteration on P_16.
GaussLegendre make_rule() {
    GaussLegendre rule;
    const int half = (kOrder + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 0; j < kOrder; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            dp = kOrder * (z * p1 - p2) / (z * z - 1.0);
            const double step = p1 / dp;
            z -= step;
            if (std::abs(step) <= 1e-16) {
                break;
            }
        }
        rule.nodes[i] = -z;
        rule.nodes[kOrder - 1 - i] = z;
        rule.weights[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.weights[kOrder - 1 - i] = rule.weights[i];
    }
    return rule;
}

const GaussLegendre& rule() {
    static const GaussLegendre instance = make_rule();
    return instance;
}

double composite(const std::function<double(double)>& f, int panels) {
    const GaussLegendre& gl = rule();
    const double width = 1.0 / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * width;
        double panel = 0.0;
        for (int i = 0; i < kOrder; ++i) {
            panel += gl.weights[i] * f(mid + 0.5 * width * gl.nodes[i]);
        }
        total += 0.5 * width * panel;
    }
    return total;
}

}  // namespace

Integrand as_integrand(const EigenPair& pair) {
    return Integrand{[pair](double x) { return eigenfunction_eval(pair, x); }, std::sqrt(pair.lambda)};
}

DifferentiableFunction as_differentiable(const EigenPair& pair) {
    return DifferentiableFunction{[pair](double x) { return eigenfunction_eval(pair, x); },
                                  [pair](double x) { return eigenfunction_deriv(pair, x); },
                                  std::sqrt(pair.lambda)};
}

double integrate(const std::function<double(double)>& f, double oscillation_hint) {
    detail::require(oscillation_hint >= 0.0 && std::isfinite(oscillation_hint),
                    "oscillation hint must be finite and >= 0");
    int panels = std::max(8, static_cast<int>(std::ceil(oscillation_hint)));
    double previous = composite(f, panels);
    for (int i = 0; i < kMaxDoublings; ++i) {
        panels *= 2;
        const double current = composite(f, panels);
        if (!std::isfinite(current)) {
            break;
        }
        if (std::abs(current - previous) <= kRefinementTolerance * (1.0 + std::abs(current))) {
            return current;
        }
        previous = current;
    }
    throw QuadratureFailure("composite Gauss-Legendre refinement did not settle");
}

double inner_product(const Integrand& f, const Integrand& g) {
    return integrate([&](double x) { return f.eval(x) * g.eval(x); },
                     std::max(f.oscillation_hint, g.oscillation_hint));
}

double l2_norm(const Integrand& f) { return std::sqrt(std::max(0.0, inner_product(f, f))); }

double bilinear_a(const DifferentiableFunction& f, const DifferentiableFunction& g) {
    return integrate([&](double x) { return f.derivative(x) * g.derivative(x); },
                     std::max(f.oscillation_hint, g.oscillation_hint));
}

double bilinear_a_beta(const DifferentiableFunction& f, const DifferentiableFunction& g, double beta) {
    detail::require(beta >= 0.0 && std::isfinite(beta), "beta must be finite and >= 0");
    const double boundary = f.value(0.0) * g.value(0.0) + f.value(1.0) * g.value(1.0);
    return bilinear_a(f, g) + beta * boundary;
}

std::vector<double> project(const Integrand& u0, std::span<const EigenPair> basis) {
    detail::require(!basis.empty(), "projection basis must be nonempty");
    const BoundarySpec& boundary = basis.front().boundary;
    for (const EigenPair& pair : basis) {
        detail::require(pair.boundary == boundary, "projection basis mixes boundary conditions");
    }
    std::vector<double> coeffs;
    coeffs.reserve(basis.size());
    for (const EigenPair& pair : basis) {
        coeffs.push_back(inner_product(u0, as_integrand(pair)));
    }
    return coeffs;
}

}  // namespace fracspec
