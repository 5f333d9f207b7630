/**
 * @file dual.hpp
 * @brief Forward-mode dual number used to differentiate the discrete residual.
 *
 * The residual kernels are templated on the scalar type; instantiating them
 * with Dual yields exact directional derivatives of the stencils (one seed
 * direction per evaluation), which the Newton solver combines with a column
 * colouring to assemble the banded Jacobian.
 */

#pragma once

#include <cmath>

namespace meniscus {

struct Dual {
    double v = 0.0;
    double d = 0.0;

    constexpr Dual() = default;
    constexpr Dual(double value) : v(value) {}  // NOLINT(google-explicit-constructor)
    constexpr Dual(double value, double deriv) : v(value), d(deriv) {}

    Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
    Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
    Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
    Dual& operator/=(const Dual& o) { d = (d * o.v - v * o.d) / (o.v * o.v); v /= o.v; return *this; }
};

inline Dual operator+(Dual a, const Dual& b) { return a += b; }
inline Dual operator-(Dual a, const Dual& b) { return a -= b; }
inline Dual operator*(Dual a, const Dual& b) { return a *= b; }
inline Dual operator/(Dual a, const Dual& b) { return a /= b; }
inline Dual operator-(const Dual& a) { return {-a.v, -a.d}; }

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.v; }

/// Lift a scalar function value with known derivative onto the argument's type.
inline double chain(double, double f, double) { return f; }
inline Dual chain(const Dual& x, double f, double fprime) { return {f, fprime * x.d}; }

}  // namespace meniscus
