/**
 * @file spatial_disc.hpp
 * @brief Conservative finite differences for d/dx (h^3 h_xxx) on a uniform grid.
 *
 * Face fluxes F_{i+1/2} = mean(H_i^3, H_{i+1}^3) * (H_{i+2} - 3 H_{i+1} + 3 H_i - H_{i-1}) / dx^3
 * are differenced over node control volumes (half volumes at the two end
 * nodes). Two ghost nodes on each side close the stencils; they are fixed by
 * a slope condition and a third-derivative condition per side. The slope
 * condition is the central difference corrected by dx^2/6 times the imposed
 * third derivative, so the ghosts are fifth-order accurate for smooth data.
 *
 * The kernels are templated on the scalar type so the evolution solver can
 * run them on dual numbers.
 */

#pragma once

#include <algorithm>
#include <vector>

#include "meniscus/errors.hpp"
#include "meniscus/grid.hpp"

namespace meniscus {

template <class T>
struct GhostClosureT {
    T left_slope{};   ///< H_x at the left end
    T left_third{};   ///< H_xxx at the left end
    T left_flux{};    ///< value of H^3 H_xxx taken by the left boundary face
    T right_slope{};  ///< H_x at the right end (0 for the symmetry point)
    T right_third{};  ///< H_xxx at the right end
    T right_flux{};   ///< value taken by the right boundary face
};
using GhostClosure = GhostClosureT<double>;

/// Ghost values H_{-1}, H_{-2} (left) and H_n, H_{n+1} (right).
template <class T>
struct Ghosts {
    T left1{}, left2{}, right1{}, right2{};
};

template <class T>
Ghosts<T> assemble_ghosts(const std::vector<T>& H, double dx, const GhostClosureT<T>& c) {
    const int n = static_cast<int>(H.size());
    if (n < 7) raise(ErrorKind::GridTooSmall, "stencils need at least 7 nodes");
    const double dx3 = dx * dx * dx;
    Ghosts<T> g;
    g.left1 = H[1] - 2.0 * dx * c.left_slope - (dx3 / 3.0) * c.left_third;
    g.left2 = H[2] - 2.0 * H[1] + 2.0 * g.left1 - 2.0 * dx3 * c.left_third;
    g.right1 = H[n - 2] + 2.0 * dx * c.right_slope + (dx3 / 3.0) * c.right_third;
    g.right2 = 2.0 * g.right1 - 2.0 * H[n - 2] + H[n - 3] + 2.0 * dx3 * c.right_third;
    return g;
}

/// H padded with two ghosts per side; index i of H is index i + 2 here.
template <class T>
std::vector<T> extend_with_ghosts(const std::vector<T>& H, const Ghosts<T>& g) {
    std::vector<T> e;
    e.reserve(H.size() + 4);
    e.push_back(g.left2);
    e.push_back(g.left1);
    e.insert(e.end(), H.begin(), H.end());
    e.push_back(g.right1);
    e.push_back(g.right2);
    return e;
}

/// Third differences at the n - 1 interior faces.
template <class T>
std::vector<T> face_third_derivatives(const std::vector<T>& ext, double dx) {
    const int n = static_cast<int>(ext.size()) - 4;
    const double inv = 1.0 / (dx * dx * dx);
    std::vector<T> d3(n - 1);
    for (int i = 0; i < n - 1; ++i) {
        const int j = i + 2;
        d3[i] = (ext[j + 2] - 3.0 * ext[j + 1] + 3.0 * ext[j] - ext[j - 1]) * inv;
    }
    return d3;
}

/// F_{i+1/2} = mean(H^3) * third difference, i = 0 .. n-2.
template <class T>
std::vector<T> face_fluxes(const std::vector<T>& H, const std::vector<T>& ext, double dx) {
    const auto d3 = face_third_derivatives(ext, dx);
    std::vector<T> F(d3.size());
    for (std::size_t i = 0; i < d3.size(); ++i) {
        const T c0 = H[i] * H[i] * H[i];
        const T c1 = H[i + 1] * H[i + 1] * H[i + 1];
        F[i] = 0.5 * (c0 + c1) * d3[i];
    }
    return F;
}

/// Node-centred third derivative (H_{i+2} - 2 H_{i+1} + 2 H_{i-1} - H_{i-2}) / (2 dx^3).
std::vector<double> third_derivative(const std::vector<double>& H, const Grid& grid, const GhostClosure& closure);

/// Conservative divergence of H^3 H_xxx; raises DegenerateFilm when min H <= 0.
std::vector<double> flux_divergence(const std::vector<double>& H, const Grid& grid, const GhostClosure& closure);

/// Ghost values for doubles on a grid (checks the sample count).
Ghosts<double> assemble_ghosts(const std::vector<double>& H, const Grid& grid, const GhostClosure& closure);

}  // namespace meniscus
