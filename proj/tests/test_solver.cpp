#include "doctest.h"

#include "fracspec/error.hpp"
#include "fracspec/grid.hpp"
#include "fracspec/mittag_leffler.hpp"
#include "fracspec/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

using namespace fracspec;

namespace {

constexpr double kPi = std::numbers::pi;

const Integrand kSinPi{[](double x) { return std::sin(kPi * x); }, kPi};

double l2_on(const std::vector<double>& xs, const SpectralSolution& sol, double t,
             const std::function<double(double)>& minus = nullptr) {
    std::vector<double> v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        v[i] = evaluate(sol, xs[i], t) - (minus ? minus(xs[i]) : 0.0);
    }
    return discrete_l2(xs, v);
}

// Quadrature L2 norm of u(., t), with the Mittag-Leffler factors computed once.
double quadrature_l2(const SpectralSolution& sol, double t) {
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

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("single Dirichlet mode") {
    const auto sol = solve_spectral(0.8, BoundarySpec::dirichlet(), kSinPi, 1, 1.0);
    REQUIRE(sol.size() == 1);
    CHECK(sol.coeffs[0] == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-12));
    CHECK(sol.pairs[0].lambda == doctest::Approx(kPi * kPi).epsilon(1e-15));
    CHECK(evaluate(sol, 0.5, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    const double v = evaluate(sol, 0.5, 1.0);
    CHECK(v == doctest::Approx(mittag_leffler(0.8, kPi * kPi)).epsilon(1e-12));
    CHECK(v > std::exp(-kPi * kPi));

    const auto heat = solve_spectral(1.0, BoundarySpec::dirichlet(), kSinPi, 4, 1.0);
    CHECK(evaluate(heat, 0.5, 1.0) == doctest::Approx(std::exp(-kPi * kPi)).epsilon(1e-10));
}

TEST_CASE("near-Dirichlet Robin projection") {
    const auto sol = solve_spectral(0.8, BoundarySpec::robin(1e5), kSinPi, 8, 1.0);
    CHECK(sol.coeffs[0] == doctest::Approx(0.7071).epsilon(1e-4));
    for (std::size_t k = 1; k < sol.size(); k += 2) {
        CHECK(std::abs(sol.coeffs[k]) < 2e-4);
    }
    for (std::size_t k = 1; k < sol.size(); ++k) {
        CHECK(std::abs(sol.coeffs[k]) < std::abs(sol.coeffs[0]));
    }
}

TEST_CASE("zero data") {
    const Integrand zero{[](double) { return 0.0; }, 0.0};
    const auto sol = solve_spectral(0.4, BoundarySpec::dirichlet(), zero, 4, 2.0);
    for (double c : sol.coeffs) {
        CHECK(c == 0.0);
    }
    const auto xs = linspace(0.0, 1.0, 11);
    const std::vector<double> ts{0.0, 1.0, 2.0};
    const Matrix m = evaluate_grid(sol, xs, ts);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            CHECK(m(i, j) == 0.0);
        }
    }
}

TEST_CASE("grid evaluation") {
    const auto sol = solve_spectral(0.8, BoundarySpec::dirichlet(), kSinPi, 16, 1.0);
    const std::vector<double> ends{0.0, 1.0};
    const std::vector<double> ts{0.0, 0.5, 1.0};
    const Matrix edge = evaluate_grid(sol, ends, ts);
    for (std::size_t j = 0; j < ts.size(); ++j) {
        CHECK(std::abs(edge(0, j)) <= 1e-15);
        CHECK(std::abs(edge(1, j)) <= 1e-13);
    }
    const std::vector<double> x1{0.3};
    const std::vector<double> t1{0.7};
    CHECK(evaluate_grid(sol, x1, t1)(0, 0) == doctest::Approx(evaluate(sol, 0.3, 0.7)).epsilon(1e-14));

    const auto xs = linspace(0.0, 1.0, 101);
    const std::vector<double> tf{1.0};
    const auto column = evaluate_grid(sol, xs, tf).column(0);
    const auto top = std::max_element(column.begin(), column.end());
    CHECK(top - column.begin() == 50);
    CHECK(*top == doctest::Approx(mittag_leffler(0.8, kPi * kPi)).epsilon(1e-10));
}

TEST_CASE("truncation bound") {
    const auto exact = solve_spectral(0.8, BoundarySpec::dirichlet(), kSinPi, 3, 1.0);
    CHECK(truncation_bound(exact, 1.0) <= 1e-6);

    const auto coarse = solve_spectral(0.8, BoundarySpec::robin(1e2), kSinPi, 8, 1.0);
    const auto fine = solve_spectral(0.8, BoundarySpec::robin(1e2), kSinPi, 16, 1.0);
    CHECK(truncation_bound(coarse, 1.0) > 0.0);
    CHECK(truncation_bound(fine, 1.0) < truncation_bound(coarse, 1.0));
    CHECK(truncation_bound(coarse, 10.0) <= truncation_bound(coarse, 1.0));
    CHECK_THROWS_AS(truncation_bound(coarse, 0.0), InvalidArgument);
}

TEST_CASE("precondition violations") {
    CHECK_THROWS_AS(solve_spectral(0.0, BoundarySpec::dirichlet(), kSinPi, 4, 1.0), InvalidArgument);
    CHECK_THROWS_AS(solve_spectral(1.2, BoundarySpec::dirichlet(), kSinPi, 4, 1.0), InvalidArgument);
    CHECK_THROWS_AS(solve_spectral(0.5, BoundarySpec::dirichlet(), kSinPi, 0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(solve_spectral(0.5, BoundarySpec::dirichlet(), kSinPi, 4, 0.0), InvalidArgument);
    const auto sol = solve_spectral(0.5, BoundarySpec::dirichlet(), kSinPi, 4, 1.0);
    CHECK_THROWS_AS(evaluate(sol, 1.5, 0.5), InvalidArgument);
    CHECK_THROWS_AS(evaluate(sol, 0.5, 1.5), InvalidArgument);
    CHECK_THROWS_AS(evaluate(sol, 0.5, -0.1), InvalidArgument);

    SpectralSolution broken = sol;
    broken.coeffs[0] = 10.0;
    CHECK_THROWS_AS(broken.validate(), InvalidArgument);
    broken = sol;
    std::swap(broken.pairs[0], broken.pairs[1]);
    CHECK_THROWS_AS(broken.validate(), InvalidArgument);
}

TEST_CASE("property: stability bound") {
    const Integrand bump{[](double x) { return 4.0 * x * (1.0 - x); }, 0.0};
    for (const auto& u0 : {kSinPi, bump}) {
        for (double alpha : {0.3, 0.8, 1.0}) {
            for (const auto& b : {BoundarySpec::dirichlet(), BoundarySpec::robin(1.0), BoundarySpec::robin(1e2)}) {
                const auto sol = solve_spectral(alpha, b, u0, 32, 1.0);
                for (double t : {0.01, 0.1, 1.0}) {
                    INFO("alpha = " << alpha << ", " << b.describe() << ", t = " << t);
                    CHECK(quadrature_l2(sol, t) <= sol.u0_norm + truncation_bound(sol, t) + 1e-6);
                }
                CHECK(quadrature_l2(sol, 0.0) <= sol.u0_norm + 1e-6);
            }
        }
    }
}

TEST_CASE("property: initial data is attained") {
    const auto xs = linspace(0.0, 1.0, 201);
    const Integrand u0{[](double x) { return std::sin(kPi * x) - 0.3 * std::sin(3.0 * kPi * x); }, 3.0 * kPi};
    for (double alpha : {0.5, 0.8, 0.95}) {
        const auto sol = solve_spectral(alpha, BoundarySpec::dirichlet(), u0, 4, 1.0);
        double prev = INFINITY;
        for (double t : {1e-2, 1e-4, 1e-6, 1e-9}) {
            const double d = l2_on(xs, sol, t, u0.eval);
            CHECK(d < prev);
            prev = d;
        }
        // The approach is like t^alpha, so small orders need smaller t.
        CHECK(l2_on(xs, sol, alpha >= 0.8 ? 1e-6 : 1e-12, u0.eval) <= 1e-3);
    }
}

TEST_CASE("property: Robin boundary residual") {
    for (double beta : {1.0, 1e2, 1e4}) {
        const int n = 24;
        const auto sol = solve_spectral(0.8, BoundarySpec::robin(beta), kSinPi, n, 1.0);
        for (double t : {0.01, 0.1, 1.0}) {
            const double left = -evaluate_dx(sol, 0.0, t) + beta * evaluate(sol, 0.0, t);
            const double right = evaluate_dx(sol, 1.0, t) + beta * evaluate(sol, 1.0, t);
            CHECK(std::abs(left) <= n * 1e-7 * beta);
            CHECK(std::abs(right) <= n * 1e-7 * beta);
        }
    }
}

TEST_CASE("property: single mode decays in time") {
    const auto sol = solve_spectral(0.6, BoundarySpec::dirichlet(), kSinPi, 8, 5.0);
    double prev = evaluate(sol, 0.5, 0.0);
    for (int i = 1; i <= 40; ++i) {
        const double v = evaluate(sol, 0.5, 5.0 * i / 40.0);
        CHECK(v < prev);
        prev = v;
    }
}

}
