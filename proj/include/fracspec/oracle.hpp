#pragma once

#include "fracspec/eigensystem.hpp"
#include "fracspec/grid.hpp"
#include "fracspec/quadrature.hpp"

#include <span>
#include <vector>

namespace fracspec {

/// Space-time lattice from the finite-difference solver.
struct GridSolution {
    int nx = 0;       ///< interior points
    int nt = 0;       ///< time steps
    double dt = 0.0;
    double dx = 0.0;
    double alpha = 1.0;
    BoundarySpec boundary = BoundarySpec::dirichlet();
    Matrix values;    ///< (nt + 1) x (nx + 2), boundary columns included

    std::vector<double> xs() const;
    double time(int level) const { return level * dt; }
    std::vector<double> level(int n) const { return values.row(static_cast<std::size_t>(n)); }
};

/**
 * L1 approximation of the Caputo derivative of order alpha from uniform samples:
 *   D_n = dt^{-alpha} / Gamma(2 - alpha) * sum_{j<n} w_j (f_{n-j} - f_{n-j-1}),
 *   w_j = (j + 1)^{1 - alpha} - j^{1 - alpha},
 * for n >= 1, with D_0 = 0.
 */
std::vector<double> caputo_l1(std::span<const double> samples, double alpha, double dt);

/**
 * Implicit L1 / centered-difference solver for the Caputo subdiffusion equation on
 * [0, 1] with full history. Robin conditions use second-order ghost points,
 * u_{-1} = u_1 - 2 dx beta u_0 (mirrored at x = 1); Dirichlet boundary columns stay 0.
 * Throws SingularSystem on a zero pivot.
 */
GridSolution fd_solve(double alpha, const BoundarySpec& boundary, const Integrand& u0, int nx, int nt,
                      double horizon);

/// Linear interpolation of level n at x.
double interpolate(const GridSolution& grid, int level, double x);

}  // namespace fracspec
