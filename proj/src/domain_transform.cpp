#include "meniscus/domain_transform.hpp"

#include <algorithm>
#include <cmath>

#include "meniscus/errors.hpp"

namespace meniscus {

namespace {

double phi(double r) { return r > 0.0 ? std::exp(-1.0 / r) : 0.0; }
double phi_prime(double r) { return r > 0.0 ? std::exp(-1.0 / r) / (r * r) : 0.0; }

double smoothstep(double r) {
    if (r >= 1.0) return 1.0;
    if (r <= 0.0) return 0.0;
    const double p = phi(r);
    return p / (p + phi(1.0 - r));
}

double smoothstep_prime(double r) {
    if (r >= 1.0 || r <= 0.0) return 0.0;
    const double p = phi(r);
    const double q = phi(1.0 - r);
    const double denom = p + q;
    return (phi_prime(r) * q + p * phi_prime(1.0 - r)) / (denom * denom);
}

void check_range(double x, const LinearMap& map) {
    map.validate();
    if (x < map.Lambda || x > map.L) raise(ErrorKind::OutOfDomain, "linear map evaluated outside [Lambda, L]");
}

}  // namespace

void LinearMap::validate() const {
    if (!(Lambda < L) || !(Lambda_bar < L))
        raise(ErrorKind::MapDegenerate, "linear map needs Lambda < L and Lambda_bar < L");
}

double linear_map(double x, const LinearMap& map) {
    check_range(x, map);
    if (x == map.Lambda) return map.Lambda_bar;
    return map.L - (map.L - x) * map.jacobian();
}

double linear_map_inverse(double xbar, const LinearMap& map) {
    map.validate();
    if (xbar < map.Lambda_bar || xbar > map.L)
        raise(ErrorKind::OutOfDomain, "inverse linear map evaluated outside [Lambda_bar, L]");
    if (xbar == map.Lambda_bar) return map.Lambda;
    return map.L - (map.L - xbar) / map.jacobian();
}

LinearMapRates linear_map_rates(const LinearMap& map, double Lambda_dot, double x) {
    check_range(x, map);
    const double span = map.L - map.Lambda;
    return {map.jacobian(), -Lambda_dot * (map.L - x) * (map.L - map.Lambda_bar) / (span * span)};
}

double cutoff(double s, double delta) { return smoothstep((2.0 * delta - s) / delta); }

double cutoff_derivative(double s, double delta) { return -smoothstep_prime((2.0 * delta - s) / delta) / delta; }

double cutoff_slope_constant() {
    // S' is symmetric about r = 1/2; a fine scan of (0, 1) pins the maximum.
    double best = 0.0;
    constexpr int kScan = 200000;
    for (int i = 1; i < kScan; ++i) best = std::max(best, smoothstep_prime(static_cast<double>(i) / kScan));
    return best;
}

void CutoffMap::validate() const {
    if (!(delta > 0.0)) raise(ErrorKind::InvalidArgument, "cutoff half-width must be positive");
    if (std::abs(Lambda) > delta * delta)
        raise(ErrorKind::ConstraintViolation, "|Lambda| exceeds delta^2; the cutoff map may fail to be a bijection");
}

double cutoff_map(double x, const CutoffMap& map) {
    map.validate();
    if (x < map.Lambda) raise(ErrorKind::OutOfDomain, "cutoff map evaluated left of the contact point");
    const double s = x - map.Lambda;
    const double xi = cutoff(s, map.delta);
    if (xi == 0.0) return x;
    if (xi == 1.0) return s;
    return s * xi + x * (1.0 - xi);
}

double cutoff_map_derivative(double x, const CutoffMap& map) {
    map.validate();
    return 1.0 - map.Lambda * cutoff_derivative(x - map.Lambda, map.delta);
}

BoundaryData boundary_data(const SolidProfile& profile, double Lambda, double t, double k) {
    const double g = eval_g(profile, Lambda, t);
    if (!(g > 0.0)) raise(ErrorKind::ProfileViolation, "g(Lambda, t) must be positive");
    const auto d = eval_g_derivs_onesided(profile, Lambda, t, Side::Right);
    return {g, d.gx - k, -2.0 * Lambda * d.gt / (g * g * g)};
}

std::vector<double> lift_profile(const std::vector<double>& H, const Grid& grid, const BoundaryData& data,
                                 double delta) {
    if (grid.a != 0.0) raise(ErrorKind::InvalidArgument, "lift expects a grid starting at 0");
    if (static_cast<int>(H.size()) != grid.n) raise(ErrorKind::InvalidArgument, "sample count differs from grid");
    std::vector<double> U(H.size());
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.node(i);
        const double xi = cutoff(x, delta);
        const double a = data.psi2 * x + data.psi3 * x * x * x;
        U[i] = H[i] - a * xi - (1.0 - xi);
    }
    return U;
}

std::vector<double> unlift_profile(const std::vector<double>& U, const Grid& grid, const BoundaryData& data,
                                   double delta) {
    if (grid.a != 0.0) raise(ErrorKind::InvalidArgument, "lift expects a grid starting at 0");
    if (static_cast<int>(U.size()) != grid.n) raise(ErrorKind::InvalidArgument, "sample count differs from grid");
    std::vector<double> H(U.size());
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.node(i);
        const double xi = cutoff(x, delta);
        const double a = data.psi2 * x + data.psi3 * x * x * x;
        H[i] = a * xi + U[i] + (1.0 - xi);
    }
    return H;
}

}  // namespace meniscus
