#include "meniscus/grid.hpp"

#include "meniscus/errors.hpp"

namespace meniscus {

namespace {

void check_grid(int n, double a, double b) {
    if (n < 7) raise(ErrorKind::GridTooSmall, "grid needs at least 7 nodes for the stencils");
    if (!(b > a)) raise(ErrorKind::InvalidArgument, "grid needs b > a");
}

}  // namespace

Grid::Grid(int n_nodes, double left, double right) : n(n_nodes), a(left), b(right) { check_grid(n, a, b); }

std::vector<double> Grid::nodes() const {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = node(i);
    return x;
}

std::vector<double> Grid::trapezoid_weights() const {
    std::vector<double> w(n, dx());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

}  // namespace meniscus
