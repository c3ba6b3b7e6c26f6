#include "doctest.h"

#include "fracspec/eigensystem.hpp"
#include "fracspec/error.hpp"
#include "fracspec/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace fracspec;

namespace {

constexpr double kPi = std::numbers::pi;

Integrand sine(double k, double scale = 1.0) {
    return {[k, scale](double x) { return scale * std::sin(k * kPi * x); }, k * kPi};
}

DifferentiableFunction dirichlet_mode(int k) { return as_differentiable(dirichlet_eigs(k).back()); }

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("integrate") {
    CHECK(integrate([](double x) { return x * x; }, 0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(integrate([](double x) { return std::exp(x); }, 0.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
    CHECK(std::abs(integrate([](double x) { return std::sin(200.0 * kPi * x); }, 200.0 * kPi)) <= 1e-13);
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / std::sqrt(std::abs(x - 1.0 / 3.0)); }, 0.0),
                    QuadratureFailure);
    CHECK_THROWS_AS(integrate([](double) { return std::nan(""); }, 0.0), NumericalError);
}

TEST_CASE("inner products") {
    CHECK(inner_product(sine(1), sine(1)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(inner_product(sine(1, std::numbers::sqrt2), sine(2, std::numbers::sqrt2))) <= 1e-14);
    const auto psi = robin_eigs(1e4, 1)[0];
    CHECK(std::abs(inner_product(sine(1, std::numbers::sqrt2), as_integrand(psi)) - 1.0) <= 1e-4);
    CHECK(l2_norm(sine(1)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
}

TEST_CASE("bilinear forms") {
    const auto p1 = dirichlet_mode(1);
    const auto p2 = dirichlet_mode(2);
    CHECK(bilinear_a(p1, p1) == doctest::Approx(kPi * kPi).epsilon(1e-13));
    CHECK(std::abs(bilinear_a(p1, p2)) <= 1e-12);
    CHECK(bilinear_a_beta(p1, p1, 1e3) == doctest::Approx(kPi * kPi).epsilon(1e-13));

    const auto robin = robin_eigs(1e2, 2);
    const auto f = as_differentiable(robin[0]);
    const auto g = as_differentiable(robin[1]);
    const double boundary = 1e2 * (std::pow(f.value(0.0), 2) + std::pow(f.value(1.0), 2));
    CHECK(std::abs(bilinear_a_beta(f, f, 1e2) - 9.486473204354914) <= 1e-6);
    CHECK(std::abs(bilinear_a_beta(f, g, 1e2)) <= 1e-6);
    CHECK(bilinear_a(f, f) == doctest::Approx(robin[0].lambda - boundary).epsilon(1e-10));
}

TEST_CASE("projection") {
    const auto basis = dirichlet_eigs(3);
    auto c = project(sine(1), basis);
    CHECK(c[0] == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-12));
    CHECK(std::abs(c[1]) <= 1e-12);
    CHECK(std::abs(c[2]) <= 1e-12);
    c = project(sine(2, std::numbers::sqrt2), basis);
    CHECK(std::abs(c[0]) <= 1e-12);
    CHECK(c[1] == doctest::Approx(1.0).epsilon(1e-12));

    const auto robin = robin_eigs(1e4, 1);
    c = project(sine(1), robin);
    CHECK(c[0] > 0.7070);
    CHECK(c[0] < 0.7072);
}

TEST_CASE("projection rejects a mixed basis") {
    std::vector<EigenPair> mixed = dirichlet_eigs(1);
    mixed.push_back(robin_eigs(10.0, 2)[1]);
    CHECK_THROWS_AS(project(sine(1), mixed), InvalidArgument);
}

TEST_CASE("property: orthonormality and energy orthogonality") {
    for (double beta : {0.0, 1e2, 1e4, 1e6}) {
        const auto pairs = beta == 0.0 ? dirichlet_eigs(10) : robin_eigs(beta, 10);
        for (const auto& a : pairs) {
            for (const auto& b : pairs) {
                INFO("beta = " << beta << ", k = " << a.index << ", l = " << b.index);
                const double delta = a.index == b.index ? 1.0 : 0.0;
                CHECK(std::abs(inner_product(as_integrand(a), as_integrand(b)) - delta) <= 1e-8);
                const double energy = bilinear_a_beta(as_differentiable(a), as_differentiable(b), beta);
                CHECK(std::abs(energy - a.lambda * delta) <= 1e-6 * a.lambda);
            }
        }
    }
}

TEST_CASE("property: symmetry") {
    const auto pairs = robin_eigs(37.0, 4);
    for (const auto& a : pairs) {
        for (const auto& b : pairs) {
            const auto fa = as_differentiable(a);
            const auto fb = as_differentiable(b);
            CHECK(inner_product(as_integrand(a), as_integrand(b)) ==
                  doctest::Approx(inner_product(as_integrand(b), as_integrand(a))).epsilon(1e-15));
            CHECK(bilinear_a(fa, fb) == doctest::Approx(bilinear_a(fb, fa)).epsilon(1e-15));
            CHECK(bilinear_a_beta(fa, fb, 37.0) == doctest::Approx(bilinear_a_beta(fb, fa, 37.0)).epsilon(1e-15));
        }
    }
}

TEST_CASE("property: Parseval defect for sin(pi x)") {
    for (double beta : {1e2, 1e3, 1e4, 1e6}) {
        const auto pairs = robin_eigs(beta, 50);
        const auto c = project(sine(1), pairs);
        double sum = 0.0;
        double prev = 0.0;
        for (double v : c) {
            sum += v * v;
            CHECK(sum >= prev);
            prev = sum;
        }
        INFO("beta = " << beta);
        CHECK(sum <= 0.5 + 1e-12);
        CHECK(0.5 - sum <= 1e-6);
    }
}

}
