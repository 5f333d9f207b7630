#pragma once

#include <vector>

namespace meniscus {

/// Uniform node-centred grid on [a, b].
struct Grid {
    int n = 0;
    double a = 0.0;
    double b = 1.0;

    /// Raises GridTooSmall for n < 7 and InvalidArgument for b <= a.
    Grid(int n_nodes, double left, double right);
    Grid() = default;

    double dx() const noexcept { return (b - a) / (n - 1); }
    double node(int i) const noexcept { return i == n - 1 ? b : a + i * dx(); }
    std::vector<double> nodes() const;
    /// Trapezoid weights (dx/2 at the ends, dx inside).
    std::vector<double> trapezoid_weights() const;
};

}  // namespace meniscus
