#pragma once

#include <cstddef>

namespace fracspec {

/// Default relative accuracy target for Mittag-Leffler evaluations.
inline constexpr double kDefaultMlTolerance = 1e-14;

/// Default term budget of the power series.
inline constexpr std::size_t kDefaultSeriesTermCap = 2000;

/// Arguments at or below this use the power series (when its term budget allows).
inline constexpr double kSeriesSwitchThreshold = 5.0;

/// A request for E_alpha(-x).
struct MLQuery {
    double alpha = 1.0;  ///< order in (0, 1]
    double x = 0.0;      ///< nonnegative; the function is evaluated at -x
    double tol = kDefaultMlTolerance;

    /// Throws InvalidArgument unless 0 < alpha <= 1, x >= 0 and 0 < tol < 1e-6.
    void validate() const;
};

/**
 * Power series sum_{k>=0} (-x)^k / Gamma(alpha k + 1).
 *
 * The alternating series cancels catastrophically once x grows: the largest term
 * can exceed the result by hundreds of orders of magnitude. Terms are therefore
 * accumulated in MPFR arithmetic whose precision is sized from a double-precision
 * scan of the term magnitudes, so the returned double carries the requested
 * relative accuracy regardless of cancellation.
 *
 * Throws NonConvergence when more than `max_terms` terms would be needed.
 */
double ml_series(const MLQuery& q, std::size_t max_terms = kDefaultSeriesTermCap);

/**
 * Integral representation, valid for 0 < alpha < 1 and x > 0.
 *
 * Starts from the completely monotone spectral form
 *   E_a(-x) = int_0^inf exp(-r x^{1/a}) K_a(r) dr,
 *   K_a(r)  = sin(a pi) r^{a-1} / (pi (r^{2a} + 2 r^a cos(a pi) + 1)),
 * and substitutes r^a = sin(phi) / sin(a pi - phi), which maps the half line onto
 * [0, a pi] and turns the density into the constant 1 / (a pi):
 *   E_a(-x) = 1/(a pi) int_0^{a pi} exp(-(x sin(phi) / sin(a pi - phi))^{1/a}) dphi.
 * The integrand is bounded by 1 and smooth away from phi = 0. It is integrated by
 * adaptive Gauss-Kronrod on pieces split where the exponent crosses fixed levels.
 *
 * Throws QuadratureFailure when the error estimate stays above tol.
 */
double ml_integral(const MLQuery& q);

/// Number of series terms the stopping rule would need, from a double-precision scan.
std::size_t ml_series_term_estimate(const MLQuery& q);

/**
 * E_alpha(-x) for alpha in (0, 1], x >= 0.
 *
 * alpha = 1 uses exp(-x). Otherwise the series is used for x <= 5 when it fits in
 * the default term budget, and the integral representation elsewhere.
 */
double ml(const MLQuery& q);

inline double mittag_leffler(double alpha, double x, double tol = kDefaultMlTolerance) {
    return ml(MLQuery{alpha, x, tol});
}

/// 1 / (1 + x / Gamma(1 + alpha)): upper bound of E_alpha(-x).
double ml_upper_bound(double alpha, double x);

/// 1 / (1 + Gamma(1 - alpha) x): lower bound of E_alpha(-x) for alpha < 1; exp(-x) at alpha = 1.
double ml_lower_bound(double alpha, double x);

}  // namespace fracspec
