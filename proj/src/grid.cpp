#include "fracspec/grid.hpp"

#include "fracspec/error.hpp"

#include <cmath>

namespace fracspec {

std::vector<double> linspace(double a, double b, std::size_t n) {
    detail::require(n >= 1, "linspace needs at least one point");
    if (n == 1) {
        return {a};
    }
    std::vector<double> out(n);
    const double step = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = a + step * static_cast<double>(i);
    }
    out.back() = b;
    return out;
}

double discrete_l2(const std::vector<double>& xs, const std::vector<double>& values) {
    detail::require(xs.size() == values.size(), "grid and sample counts differ");
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double h = xs[i + 1] - xs[i];
        sum += 0.5 * h * (values[i] * values[i] + values[i + 1] * values[i + 1]);
    }
    return std::sqrt(sum);
}

}  // namespace fracspec
