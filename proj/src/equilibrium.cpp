#include "meniscus/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "meniscus/errors.hpp"

namespace meniscus {

namespace {

constexpr int kScanPoints = 1000;

double slope_at(const SolidProfile& profile, double x, double t) {
    return eval_g_derivs_onesided(profile, x, t, Side::Right).gx;
}

}  // namespace

void InterfaceEnergies::validate() const {
    if (!(b > 0.0)) raise(ErrorKind::EnergyConstraintViolation, "liquid-gas coefficient b must be positive");
    if (a < 0.0 || c < 0.0) raise(ErrorKind::EnergyConstraintViolation, "energy coefficients must be non-negative");
    if (!((b + c - a) / b > 0.0)) raise(ErrorKind::EnergyConstraintViolation, "(b + c - a) / b must be positive");
}

double InterfaceEnergies::young_factor() const {
    validate();
    return std::sqrt((b + c - a) / b);
}

double EquilibriumSolution::film_volume() const noexcept {
    const double span = L - Lambda_bar;
    return apex * span + coeff2 * span * span * span / 3.0;
}

EquilibriumSolution steady_profile(const SolidProfile& profile, double k, double Lambda_bar, double L, double t) {
    if (!(Lambda_bar < L)) raise(ErrorKind::InvalidArgument, "steady profile needs Lambda_bar < L");
    const double g = eval_g(profile, Lambda_bar, t);
    if (!(g > 0.0)) raise(ErrorKind::ProfileViolation, "g(Lambda_bar) must be positive");
    const double mismatch = slope_at(profile, Lambda_bar, t) - k;
    EquilibriumSolution sol;
    sol.Lambda_bar = Lambda_bar;
    sol.L = L;
    sol.coeff2 = mismatch / (2.0 * (Lambda_bar - L));
    sol.apex = g - 0.5 * mismatch * (Lambda_bar - L);
    sol.min_h = std::min(g, sol.apex);
    if (!(sol.min_h > 0.0)) raise(ErrorKind::DegenerateFilm, "steady parabola touches zero");
    return sol;
}

double lagrange_multiplier(const SolidProfile& profile, double k, double Lambda_bar, double L,
                           const InterfaceEnergies& energies, double t) {
    if (!(Lambda_bar < L)) raise(ErrorKind::InvalidArgument, "Lagrange multiplier needs Lambda_bar < L");
    return 2.0 * energies.b * (slope_at(profile, Lambda_bar, t) - k) / (L - Lambda_bar);
}

double young_angle(const InterfaceEnergies& energies, double gx) { return energies.young_factor() * gx; }

double equilibrium_volume(const SolidProfile& profile, double k, double Lambda_bar, double L, double t) {
    const double solid = integrate_g(profile, 0.0, Lambda_bar, t);
    if (Lambda_bar >= L) return solid;
    const double span = L - Lambda_bar;
    const double mismatch = slope_at(profile, Lambda_bar, t) - k;
    const double coeff2 = -mismatch / (2.0 * span);
    const double apex = eval_g(profile, Lambda_bar, t) + 0.5 * mismatch * span;
    return solid + apex * span + coeff2 * span * span * span / 3.0;
}

EquilibriumRoots find_equilibrium_positions(double V0, const SolidProfile& profile, double k, double L, double t) {
    if (!(L > 0.0)) raise(ErrorKind::InvalidArgument, "L must be positive");
    auto f = [&](double x) { return equilibrium_volume(profile, k, x, L, t) - V0; };

    std::vector<double> xs(kScanPoints + 1), fs(kScanPoints + 1);
    for (int j = 0; j <= kScanPoints; ++j) {
        xs[j] = L * j / kScanPoints;
        fs[j] = f(xs[j]);
    }

    EquilibriumRoots out;
    for (int j = 0; j < kScanPoints; ++j) {
        double lo = xs[j], hi = xs[j + 1], flo = fs[j], fhi = fs[j + 1];
        if (flo == 0.0) {
            out.roots.push_back(lo);
            continue;
        }
        if (j + 1 == kScanPoints && fhi == 0.0) {
            out.roots.push_back(hi);
            continue;
        }
        if ((flo < 0.0) == (fhi < 0.0)) continue;
        for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * L; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            if ((fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
                fhi = fm;
            }
        }
        // Secant polish inside the final bracket.
        double x = std::abs(flo) < std::abs(fhi) ? lo : hi;
        double fx = f(x);
        double xprev = x == lo ? hi : lo;
        double fprev = f(xprev);
        for (int it = 0; it < 5 && fx != 0.0 && fx != fprev; ++it) {
            const double next = x - fx * (x - xprev) / (fx - fprev);
            if (!(next >= lo && next <= hi)) break;
            const double fn = f(next);
            if (std::abs(fn) >= std::abs(fx)) break;
            xprev = x;
            fprev = fx;
            x = next;
            fx = fn;
        }
        out.roots.push_back(x);
    }
    if (out.roots.empty()) raise(ErrorKind::VolumeUnattainable, "no contact point reproduces the requested volume");
    std::sort(out.roots.begin(), out.roots.end());
    out.Lambda_bar = out.roots.front();
    out.nonmonotone = out.roots.size() > 1;
    return out;
}

double solve_equilibrium_position(double V0, const SolidProfile& profile, double k, double L, double t) {
    return find_equilibrium_positions(V0, profile, k, L, t).Lambda_bar;
}

}  // namespace meniscus
