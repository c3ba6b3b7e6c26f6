#include "fracspec/oracle.hpp"

#include "fracspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracspec {
namespace {

std::vector<double> l1_weights(double alpha, std::size_t count) {
    std::vector<double> w(count);
    for (std::size_t j = 0; j < count; ++j) {
        const double jd = static_cast<double>(j);
        w[j] = std::pow(jd + 1.0, 1.0 - alpha) - std::pow(jd, 1.0 - alpha);
    }
    return w;
}

// Thomas algorithm; lower[0] and upper[n - 1] are ignored.
void solve_tridiagonal(const std::vector<double>& lower, const std::vector<double>& diag,
                       const std::vector<double>& upper, std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    std::vector<double> c(n);
    double pivot = diag[0];
    if (std::abs(pivot) < std::numeric_limits<double>::min()) {
        throw SingularSystem("zero pivot in tridiagonal solve");
    }
    c[0] = upper[0] / pivot;
    rhs[0] /= pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - lower[i] * c[i - 1];
        if (std::abs(pivot) < std::numeric_limits<double>::min()) {
            throw SingularSystem("zero pivot in tridiagonal solve");
        }
        c[i] = upper[i] / pivot;
        rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        rhs[i] -= c[i] * rhs[i + 1];
    }
}

}  // namespace

std::vector<double> GridSolution::xs() const {
    std::vector<double> out(static_cast<std::size_t>(nx) + 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<double>(i) * dx;
    }
    out.back() = 1.0;
    return out;
}

std::vector<double> caputo_l1(std::span<const double> samples, double alpha, double dt) {
    detail::require(samples.size() >= 2, "caputo_l1 needs at least two samples");
    detail::require(alpha > 0.0 && alpha < 1.0, "caputo_l1 needs 0 < alpha < 1");
    detail::require(dt > 0.0, "caputo_l1 needs dt > 0");
    const std::size_t n = samples.size();
    const std::vector<double> w = l1_weights(alpha, n);
    const double scale = std::pow(dt, -alpha) / std::tgamma(2.0 - alpha);
    std::vector<double> out(n, 0.0);
    for (std::size_t level = 1; level < n; ++level) {
        double sum = 0.0;
        for (std::size_t j = 0; j < level; ++j) {
            sum += w[j] * (samples[level - j] - samples[level - j - 1]);
        }
        out[level] = scale * sum;
    }
    return out;
}

GridSolution fd_solve(double alpha, const BoundarySpec& boundary, const Integrand& u0, int nx, int nt,
                      double horizon) {
    detail::require(nx >= 3, "fd_solve needs nx >= 3");
    detail::require(nt >= 2, "fd_solve needs nt >= 2");
    detail::require(alpha > 0.0 && alpha < 1.0, "fd_solve needs 0 < alpha < 1");
    detail::require(horizon > 0.0, "fd_solve needs T > 0");

    GridSolution grid;
    grid.nx = nx;
    grid.nt = nt;
    grid.dx = 1.0 / (nx + 1);
    grid.dt = horizon / nt;
    grid.alpha = alpha;
    grid.boundary = boundary;
    const std::size_t nodes = static_cast<std::size_t>(nx) + 2;
    grid.values = Matrix(static_cast<std::size_t>(nt) + 1, nodes);

    const std::vector<double> xs = grid.xs();
    for (std::size_t i = 0; i < nodes; ++i) {
        grid.values(0, i) = u0.eval(xs[i]);
    }
    if (boundary.is_dirichlet()) {
        grid.values(0, 0) = 0.0;
        grid.values(0, nodes - 1) = 0.0;
    }

    // Unknowns: interior nodes for Dirichlet, every node for Robin.
    const std::size_t first = boundary.is_dirichlet() ? 1 : 0;
    const std::size_t count = boundary.is_dirichlet() ? nodes - 2 : nodes;

    const double inv_dx2 = 1.0 / (grid.dx * grid.dx);
    const double c = std::pow(grid.dt, -alpha) / std::tgamma(2.0 - alpha);
    std::vector<double> lower(count, -inv_dx2), diag(count, c + 2.0 * inv_dx2), upper(count, -inv_dx2);
    if (boundary.is_robin()) {
        const double edge = c + (2.0 + 2.0 * grid.dx * boundary.beta()) * inv_dx2;
        diag.front() = edge;
        diag.back() = edge;
        upper.front() = -2.0 * inv_dx2;
        lower.back() = -2.0 * inv_dx2;
    }

    const std::vector<double> w = l1_weights(alpha, static_cast<std::size_t>(nt) + 1);
    // increments(m, i) = u^m_i - u^{m-1}_i
    Matrix increments(static_cast<std::size_t>(nt) + 1, nodes);
    std::vector<double> rhs(count);
    std::vector<double> history(count);
    for (int n = 1; n <= nt; ++n) {
        const auto level = static_cast<std::size_t>(n);
        std::fill(history.begin(), history.end(), 0.0);
        for (std::size_t j = 1; j < level; ++j) {
            const double wj = w[j];
            for (std::size_t r = 0; r < count; ++r) {
                history[r] += wj * increments(level - j, first + r);
            }
        }
        for (std::size_t r = 0; r < count; ++r) {
            rhs[r] = c * (grid.values(level - 1, first + r) - history[r]);
        }
        solve_tridiagonal(lower, diag, upper, rhs);
        for (std::size_t r = 0; r < count; ++r) {
            const std::size_t i = first + r;
            grid.values(level, i) = rhs[r];
            increments(level, i) = rhs[r] - grid.values(level - 1, i);
        }
    }
    return grid;
}

double interpolate(const GridSolution& grid, int level, double x) {
    detail::require(level >= 0 && level <= grid.nt, "time level out of range");
    detail::require(x >= 0.0 && x <= 1.0, "x must lie in [0, 1]");
    const double pos = x / grid.dx;
    const auto last = static_cast<std::size_t>(grid.nx) + 1;
    const auto i = std::min(static_cast<std::size_t>(pos), last - 1);
    const double frac = pos - static_cast<double>(i);
    const auto n = static_cast<std::size_t>(level);
    return (1.0 - frac) * grid.values(n, i) + frac * grid.values(n, i + 1);
}

}  // namespace fracspec
