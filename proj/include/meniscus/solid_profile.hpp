/**
 * @file solid_profile.hpp
 * @brief Closed-form profiles g(x,t) of the rigid solid's lower boundary.
 *
 * The solid moves vertically only, so every kind has a time-independent
 * slope (g_xt == 0). All derivatives are analytic; no tabulated profiles.
 */

#pragma once

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace meniscus {

struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double v) const noexcept { return v >= lo && v <= hi; }
};

/// Polynomial in time, c0 + c1 t + c2 t^2 + ...
struct TimePolynomial {
    std::vector<double> coeffs{0.0};

    double value(double t) const noexcept;
    double rate(double t) const noexcept;
};

/// g = H0 (1 - (t/t0)^n).
struct ConstantDescent {
    double H0 = 1.0;
    double t0 = 1.0;
    double n = 1.0;
};

/// g = htilde(t) + c |x|.
struct Wedge {
    TimePolynomial htilde;
    double c = 0.0;
};

/// g = sum_j coeffs[j] x^j + descent(t).
struct PolynomialInX {
    std::vector<double> coeffs;
    TimePolynomial descent;
};

/// Time-independent shape with caller-supplied analytic derivatives.
struct Stationary {
    std::function<double(double)> value;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
    /// Optional; composite Gauss-Legendre is used when empty.
    std::function<double(double)> antiderivative;
};

struct SolidDerivatives {
    double gx = 0.0;
    double gt = 0.0;
    double gxx = 0.0;
};

enum class Side { Left, Right };

class SolidProfile {
public:
    using Kind = std::variant<ConstantDescent, Wedge, PolynomialInX, Stationary>;

    explicit SolidProfile(Kind kind, Interval x_domain = {}, Interval t_horizon = {0.0, std::numeric_limits<double>::infinity()});

    static SolidProfile constant_descent(double H0, double t0, double n);
    static SolidProfile wedge(TimePolynomial htilde, double c);
    static SolidProfile polynomial(std::vector<double> coeffs, TimePolynomial descent = {});
    /// Stationary polynomial shape; convenience over the general Stationary kind.
    static SolidProfile stationary_polynomial(std::vector<double> coeffs);

    const Kind& kind() const noexcept { return kind_; }
    const Interval& x_domain() const noexcept { return x_domain_; }
    const Interval& t_horizon() const noexcept { return t_horizon_; }

    /// True when g_t vanishes identically (solid at rest).
    bool is_stationary() const noexcept;
    std::string kind_name() const;

private:
    Kind kind_;
    Interval x_domain_;
    Interval t_horizon_;
};

double eval_g(const SolidProfile& profile, double x, double t);

/// Exact derivatives. Raises NonSmooth exactly at a wedge apex.
SolidDerivatives eval_g_derivs(const SolidProfile& profile, double x, double t);

/// One-sided derivatives; differs from eval_g_derivs only at a wedge apex.
SolidDerivatives eval_g_derivs_onesided(const SolidProfile& profile, double x, double t, Side side);

/// Exact integral of g(., t) over [a, b].
double integrate_g(const SolidProfile& profile, double a, double b, double t);

/// Composite trapezoid of g(., t) over [0, upper] with `intervals` panels,
/// together with its derivative with respect to `upper`.
std::pair<double, double> trapezoid_solid_volume(const SolidProfile& profile, double upper, double t,
                                                 int intervals);

/// Composite trapezoid of g_x(., t)^2 over [a, b] (one-sided slopes at a kink).
double trapezoid_slope_squared(const SolidProfile& profile, double a, double b, double t, int intervals);

struct ValidationReport {
    double min_g = std::numeric_limits<double>::infinity();
    double argmin_x = 0.0;
    double argmin_t = 0.0;
    bool positive = true;
    bool vertical_motion_only = true;
    /// Earliest sampled time at which g <= 0 was seen (NaN when none).
    double first_violation_t = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::string> failures;

    bool ok() const noexcept { return failures.empty(); }
};

ValidationReport validate_profile(const SolidProfile& profile, Interval x_range, Interval t_range, int samples);

}  // namespace meniscus
