#include "fracspec/eigensystem.hpp"

#include "fracspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

namespace fracspec {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxIterations = 200;
constexpr int kSeedBisections = 3;

std::string beta_text(double beta) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.6g", beta);
    return buffer;
}

// h_beta as a function of s = sqrt(lambda).
double char_in_s(double beta, double s) { return 2.0 * s * std::cos(s) + (beta - s * s / beta) * std::sin(s); }

double residual_scale(double beta, double s) { return 2.0 * s + beta + s * s / beta; }

// Root of h_beta(s^2) on [a, b] where the endpoint values differ in sign.
// A few bisection steps seed Brent's bracketed secant / inverse quadratic iteration.
double solve_bracketed(double beta, double a, double b, double fa, double fb, double tol) {
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    auto f = [beta](double s) { return char_in_s(beta, s); };
    // The extra min(1, s) keeps the residual test meaningful for the tiny first root at small beta.
    auto converged_residual = [beta](double s, double fs) {
        return std::abs(fs) <= 1e-13 * residual_scale(beta, s) * std::min(1.0, s);
    };

    for (int i = 0; i < kSeedBisections; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) {
            return m;
        }
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }

    double c = b;
    double fc = fb;
    double d = b - a;
    double e = d;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        // Bracket |c - b| <= tol * s / 2 in s keeps the lambda bracket below tol * lambda.
        const double tol1 = 2.0 * kEps * std::abs(b) + 0.25 * tol * std::abs(b);
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0 || converged_residual(b, fb)) {
            return b;
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double p = 0.0;
            double q = 0.0;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) {
                q = -q;
            }
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
        fb = f(b);
    }
    throw ToleranceNotReached("Robin root iteration budget exhausted for beta = " + beta_text(beta));
}

double robin_root(double beta, int k, double tol) {
    const double left_end = (k - 1) * kPi;
    const double right_end = k * kPi;
    double nudge = 1e-9 * right_end;
    double a = left_end;
    double b = right_end;
    double fa = 0.0;
    double fb = 0.0;
    for (int attempt = 0; attempt <= 5; ++attempt) {
        a = left_end + nudge;
        b = right_end - nudge;
        fa = char_in_s(beta, a);
        fb = char_in_s(beta, b);
        if (fa == 0.0) {
            return a;
        }
        if (fb == 0.0) {
            return b;
        }
        if ((fa > 0.0) != (fb > 0.0)) {
            return solve_bracketed(beta, a, b, fa, fb, tol);
        }
        nudge /= 8.0;
    }
    // The root hugs an endpoint (beta very small or very large). At s = m pi, h = 2 m pi (-1)^m,
    // and h > 0 just above s = 0, so the exact endpoint signs close the bracket.
    const double left_value = k == 1 ? 1.0 : 2.0 * left_end * ((k - 1) % 2 == 0 ? 1.0 : -1.0);
    const double right_value = 2.0 * right_end * (k % 2 == 0 ? 1.0 : -1.0);
    if ((fb > 0.0) == (left_value > 0.0)) {
        return solve_bracketed(beta, b, right_end, fb, right_value, tol);
    }
    if ((fa > 0.0) == (right_value > 0.0)) {
        if (k == 1) {
            // lambda_1 ~ 2 beta for small beta; h changes sign between sqrt(beta) / 2 and 2 sqrt(beta).
            const double lo = 0.5 * std::sqrt(beta);
            const double hi = std::min(a, 2.0 * std::sqrt(beta));
            const double flo = char_in_s(beta, lo);
            const double fhi = char_in_s(beta, hi);
            if (flo > 0.0 && fhi < 0.0) {
                return solve_bracketed(beta, lo, hi, flo, fhi, tol);
            }
        }
        return solve_bracketed(beta, left_end, a, left_value, fa, tol);
    }
    throw BracketFailure("no sign change of the Robin characteristic function for k = " + std::to_string(k) +
                         ", beta = " + beta_text(beta));
}

double wavenumber(const EigenPair& pair) {
    return pair.boundary.is_dirichlet() ? pair.index * kPi : std::sqrt(pair.lambda);
}

}  // namespace

BoundarySpec BoundarySpec::robin(double beta) {
    detail::require(beta > 0.0 && std::isfinite(beta), "Robin coefficient beta must be positive and finite");
    return BoundarySpec(BoundaryKind::Robin, beta);
}

std::string BoundarySpec::describe() const {
    if (is_dirichlet()) {
        return "dirichlet";
    }
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "robin(beta=%.17g)", beta_);
    return buffer;
}

std::vector<EigenPair> dirichlet_eigs(int n) {
    detail::require(n >= 0, "number of eigenpairs must be >= 0");
    std::vector<EigenPair> pairs;
    pairs.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        const double s = k * kPi;
        pairs.push_back(EigenPair{k, s * s, std::numbers::sqrt2, BoundarySpec::dirichlet()});
    }
    return pairs;
}

double robin_char(double beta, double lambda) {
    detail::require(beta > 0.0, "Robin coefficient beta must be positive");
    detail::require(lambda >= 0.0, "lambda must be >= 0");
    return char_in_s(beta, std::sqrt(lambda));
}

double robin_amplitude(double beta, double lambda) {
    if (beta <= 1.0) {
        return std::numbers::sqrt2 * beta / std::sqrt(beta * beta + 2.0 * beta + lambda);
    }
    return std::numbers::sqrt2 / std::sqrt(1.0 + (2.0 + lambda / beta) / beta);
}

std::vector<EigenPair> robin_eigs(double beta, int n, double tol) {
    const BoundarySpec boundary = BoundarySpec::robin(beta);
    detail::require(n >= 1, "number of Robin eigenpairs must be >= 1");
    detail::require(tol > 0.0 && tol <= 1e-10, "Robin root tolerance must lie in (0, 1e-10]");
    std::vector<EigenPair> pairs;
    pairs.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        const double s = robin_root(beta, k, tol);
        const double lambda = s * s;
        pairs.push_back(EigenPair{k, lambda, robin_amplitude(beta, lambda), boundary});
    }
    return pairs;
}

std::vector<EigenPair> eigenpairs(const BoundarySpec& boundary, int n, double tol) {
    if (boundary.is_dirichlet()) {
        return dirichlet_eigs(n);
    }
    return robin_eigs(boundary.beta(), n, tol);
}

double eigenfunction_eval(const EigenPair& pair, double x) {
    const double s = wavenumber(pair);
    if (pair.boundary.is_dirichlet()) {
        return pair.amplitude * std::sin(s * x);
    }
    return pair.amplitude * (std::sin(s * x) + (s / pair.boundary.beta()) * std::cos(s * x));
}

double eigenfunction_deriv(const EigenPair& pair, double x) {
    const double s = wavenumber(pair);
    if (pair.boundary.is_dirichlet()) {
        return pair.amplitude * s * std::cos(s * x);
    }
    return pair.amplitude * s * (std::cos(s * x) - (s / pair.boundary.beta()) * std::sin(s * x));
}

double eigenfunction_second_deriv(const EigenPair& pair, double x) {
    const double s = wavenumber(pair);
    if (pair.boundary.is_dirichlet()) {
        return -pair.amplitude * s * s * std::sin(s * x);
    }
    return -pair.amplitude * s * s * (std::sin(s * x) + (s / pair.boundary.beta()) * std::cos(s * x));
}

}  // namespace fracspec
