#pragma once

#include <algorithm>
#include <vector>

#include "meniscus/grid.hpp"

namespace meniscus {

/// Film heights on the fixed reference grid [a, b] together with the contact
/// point. Reference node xi maps to x = b - (b - xi) (b - Lambda) / (b - a).
struct FilmState {
    Grid grid;
    std::vector<double> H;
    double Lambda = 0.0;
    double t = 0.0;

    /// d xi / d x = (b - a) / (b - Lambda).
    double stretch() const noexcept { return (grid.b - grid.a) / (grid.b - Lambda); }
    /// d x / d xi.
    double jacobian() const noexcept { return (grid.b - Lambda) / (grid.b - grid.a); }
    double physical_x(int i) const noexcept {
        return i == 0 ? Lambda : grid.b - (grid.b - grid.node(i)) * jacobian();
    }
    double min_h() const { return *std::min_element(H.begin(), H.end()); }
};

}  // namespace meniscus
