#include "meniscus/spatial_disc.hpp"

#include <algorithm>

namespace meniscus {

namespace {

void check_samples(const std::vector<double>& H, const Grid& grid) {
    if (grid.n < 7) raise(ErrorKind::GridTooSmall, "stencils need at least 7 nodes");
    if (static_cast<int>(H.size()) != grid.n) raise(ErrorKind::InvalidArgument, "sample count differs from grid");
}

}  // namespace

Ghosts<double> assemble_ghosts(const std::vector<double>& H, const Grid& grid, const GhostClosure& closure) {
    check_samples(H, grid);
    return assemble_ghosts(H, grid.dx(), closure);
}

std::vector<double> third_derivative(const std::vector<double>& H, const Grid& grid, const GhostClosure& closure) {
    check_samples(H, grid);
    const double dx = grid.dx();
    const auto ext = extend_with_ghosts(H, assemble_ghosts(H, dx, closure));
    const double inv = 1.0 / (2.0 * dx * dx * dx);
    std::vector<double> d3(H.size());
    for (int i = 0; i < grid.n; ++i) {
        const int j = i + 2;
        d3[i] = (ext[j + 2] - 2.0 * ext[j + 1] + 2.0 * ext[j - 1] - ext[j - 2]) * inv;
    }
    return d3;
}

std::vector<double> flux_divergence(const std::vector<double>& H, const Grid& grid, const GhostClosure& closure) {
    check_samples(H, grid);
    if (*std::min_element(H.begin(), H.end()) <= 0.0)
        raise(ErrorKind::DegenerateFilm, "film height must be positive for the flux");
    const double dx = grid.dx();
    const auto ext = extend_with_ghosts(H, assemble_ghosts(H, dx, closure));
    const auto F = face_fluxes(H, ext, dx);
    const int n = grid.n;
    std::vector<double> div(n);
    div[0] = (F[0] - closure.left_flux) / (0.5 * dx);
    for (int i = 1; i < n - 1; ++i) div[i] = (F[i] - F[i - 1]) / dx;
    div[n - 1] = (closure.right_flux - F[n - 2]) / (0.5 * dx);
    return div;
}

}  // namespace meniscus
