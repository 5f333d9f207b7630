#include "meniscus/solid_profile.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "meniscus/errors.hpp"

namespace meniscus {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double horner(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double poly_d1(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (std::size_t j = c.size(); j-- > 1;) acc = acc * x + static_cast<double>(j) * c[j];
    return acc;
}

double poly_d2(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (std::size_t j = c.size(); j-- > 2;) acc = acc * x + static_cast<double>(j * (j - 1)) * c[j];
    return acc;
}

double poly_antiderivative(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) acc = acc * x + c[j] / static_cast<double>(j + 1);
    return acc * x;
}

void check_domain(const SolidProfile& p, double x, double t) {
    if (!std::isfinite(x) || !std::isfinite(t) || !p.x_domain().contains(x) || !p.t_horizon().contains(t)) {
        std::ostringstream os;
        os << "(x, t) = (" << x << ", " << t << ") outside the profile's validity";
        raise(ErrorKind::OutOfDomain, os.str());
    }
}

double descent_rate(const ConstantDescent& d, double t) {
    if (t == 0.0) {
        if (d.n == 1.0) return -d.H0 / d.t0;
        if (d.n > 1.0) return 0.0;
        raise(ErrorKind::NonSmooth, "constant descent with n < 1 has unbounded velocity at t = 0");
    }
    return -d.H0 * d.n * std::pow(t / d.t0, d.n - 1.0) / d.t0;
}

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGaussNodes{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                            0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                              0.4786286704993665, 0.2369268850561891};

double gauss_composite(const std::function<double(double)>& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (std::size_t q = 0; q < kGaussNodes.size(); ++q) sum += kGaussWeights[q] * f(mid + 0.5 * h * kGaussNodes[q]);
    }
    return 0.5 * h * sum;
}

}  // namespace

double TimePolynomial::value(double t) const noexcept { return horner(coeffs, t); }
double TimePolynomial::rate(double t) const noexcept { return poly_d1(coeffs, t); }

SolidProfile::SolidProfile(Kind kind, Interval x_domain, Interval t_horizon)
    : kind_(std::move(kind)), x_domain_(x_domain), t_horizon_(t_horizon) {
    std::visit(overloaded{
                   [](const ConstantDescent& d) {
                       if (!(d.t0 > 0.0) || !(d.n > 0.0))
                           raise(ErrorKind::InvalidArgument, "constant descent needs t0 > 0 and n > 0");
                   },
                   [](const Wedge& w) {
                       if (w.htilde.coeffs.empty()) raise(ErrorKind::InvalidArgument, "wedge needs htilde");
                   },
                   [](const PolynomialInX& p) {
                       if (p.coeffs.empty()) raise(ErrorKind::InvalidArgument, "polynomial profile needs coefficients");
                   },
                   [](const Stationary& s) {
                       if (!s.value || !s.d1 || !s.d2)
                           raise(ErrorKind::InvalidArgument, "stationary profile needs value, d1 and d2");
                   },
               },
               kind_);
}

SolidProfile SolidProfile::constant_descent(double H0, double t0, double n) {
    return SolidProfile(ConstantDescent{H0, t0, n});
}

SolidProfile SolidProfile::wedge(TimePolynomial htilde, double c) { return SolidProfile(Wedge{std::move(htilde), c}); }

SolidProfile SolidProfile::polynomial(std::vector<double> coeffs, TimePolynomial descent) {
    return SolidProfile(PolynomialInX{std::move(coeffs), std::move(descent)});
}

SolidProfile SolidProfile::stationary_polynomial(std::vector<double> coeffs) {
    Stationary s;
    s.value = [coeffs](double x) { return horner(coeffs, x); };
    s.d1 = [coeffs](double x) { return poly_d1(coeffs, x); };
    s.d2 = [coeffs](double x) { return poly_d2(coeffs, x); };
    s.antiderivative = [coeffs](double x) { return poly_antiderivative(coeffs, x); };
    return SolidProfile(std::move(s));
}

bool SolidProfile::is_stationary() const noexcept {
    return std::visit(overloaded{
                          [](const ConstantDescent&) { return false; },
                          [](const Wedge& w) {
                              for (std::size_t j = 1; j < w.htilde.coeffs.size(); ++j)
                                  if (w.htilde.coeffs[j] != 0.0) return false;
                              return true;
                          },
                          [](const PolynomialInX& p) {
                              for (std::size_t j = 1; j < p.descent.coeffs.size(); ++j)
                                  if (p.descent.coeffs[j] != 0.0) return false;
                              return true;
                          },
                          [](const Stationary&) { return true; },
                      },
                      kind_);
}

std::string SolidProfile::kind_name() const {
    return std::visit(overloaded{
                          [](const ConstantDescent&) { return std::string("constant_descent"); },
                          [](const Wedge&) { return std::string("wedge"); },
                          [](const PolynomialInX&) { return std::string("polynomial"); },
                          [](const Stationary&) { return std::string("stationary"); },
                      },
                      kind_);
}

double eval_g(const SolidProfile& profile, double x, double t) {
    check_domain(profile, x, t);
    return std::visit(overloaded{
                          [&](const ConstantDescent& d) { return d.H0 * (1.0 - std::pow(t / d.t0, d.n)); },
                          [&](const Wedge& w) { return w.htilde.value(t) + w.c * std::abs(x); },
                          [&](const PolynomialInX& p) { return horner(p.coeffs, x) + p.descent.value(t); },
                          [&](const Stationary& s) { return s.value(x); },
                      },
                      profile.kind());
}

SolidDerivatives eval_g_derivs_onesided(const SolidProfile& profile, double x, double t, Side side) {
    check_domain(profile, x, t);
    return std::visit(overloaded{
                          [&](const ConstantDescent& d) { return SolidDerivatives{0.0, descent_rate(d, t), 0.0}; },
                          [&](const Wedge& w) {
                              const bool right = x > 0.0 || (x == 0.0 && side == Side::Right);
                              return SolidDerivatives{right ? w.c : -w.c, w.htilde.rate(t), 0.0};
                          },
                          [&](const PolynomialInX& p) {
                              return SolidDerivatives{poly_d1(p.coeffs, x), p.descent.rate(t), poly_d2(p.coeffs, x)};
                          },
                          [&](const Stationary& s) { return SolidDerivatives{s.d1(x), 0.0, s.d2(x)}; },
                      },
                      profile.kind());
}

SolidDerivatives eval_g_derivs(const SolidProfile& profile, double x, double t) {
    if (x == 0.0 && std::holds_alternative<Wedge>(profile.kind()) && std::get<Wedge>(profile.kind()).c != 0.0)
        raise(ErrorKind::NonSmooth, "derivative requested at the wedge apex; query one side");
    return eval_g_derivs_onesided(profile, x, t, Side::Right);
}

double integrate_g(const SolidProfile& profile, double a, double b, double t) {
    check_domain(profile, a, t);
    check_domain(profile, b, t);
    return std::visit(overloaded{
                          [&](const ConstantDescent& d) { return d.H0 * (1.0 - std::pow(t / d.t0, d.n)) * (b - a); },
                          [&](const Wedge& w) {
                              auto F = [](double x) { return 0.5 * x * std::abs(x); };
                              return w.htilde.value(t) * (b - a) + w.c * (F(b) - F(a));
                          },
                          [&](const PolynomialInX& p) {
                              return poly_antiderivative(p.coeffs, b) - poly_antiderivative(p.coeffs, a) +
                                     p.descent.value(t) * (b - a);
                          },
                          [&](const Stationary& s) {
                              if (s.antiderivative) return s.antiderivative(b) - s.antiderivative(a);
                              return gauss_composite(s.value, a, b, 64);
                          },
                      },
                      profile.kind());
}

std::pair<double, double> trapezoid_solid_volume(const SolidProfile& profile, double upper, double t, int intervals) {
    if (intervals < 1) raise(ErrorKind::InvalidArgument, "trapezoid needs at least one interval");
    const double h = upper / intervals;
    double sum = 0.5 * (eval_g(profile, 0.0, t) + eval_g(profile, upper, t));
    // d/d(upper) of each node value g(k upper / N) is (k/N) g_x.
    double dsum = 0.5 * eval_g_derivs_onesided(profile, upper, t, Side::Left).gx;
    for (int k = 1; k < intervals; ++k) {
        const double frac = static_cast<double>(k) / intervals;
        const double x = frac * upper;
        sum += eval_g(profile, x, t);
        dsum += frac * eval_g_derivs_onesided(profile, x, t, Side::Right).gx;
    }
    const double value = h * sum;
    const double derivative = sum / intervals + h * dsum;
    return {value, derivative};
}

double trapezoid_slope_squared(const SolidProfile& profile, double a, double b, double t, int intervals) {
    if (b <= a) return 0.0;
    const double h = (b - a) / intervals;
    auto slope2 = [&](double x, Side side) {
        const double gx = eval_g_derivs_onesided(profile, x, t, side).gx;
        return gx * gx;
    };
    double sum = 0.5 * (slope2(a, Side::Right) + slope2(b, Side::Left));
    for (int k = 1; k < intervals; ++k) sum += slope2(a + k * h, Side::Right);
    return h * sum;
}

ValidationReport validate_profile(const SolidProfile& profile, Interval x_range, Interval t_range, int samples) {
    if (samples < 2) raise(ErrorKind::InvalidArgument, "validate_profile needs at least 2 samples per axis");
    ValidationReport report;
    for (int j = 0; j < samples; ++j) {
        const double t = t_range.lo + (t_range.hi - t_range.lo) * j / (samples - 1);
        for (int i = 0; i < samples; ++i) {
            const double x = x_range.lo + (x_range.hi - x_range.lo) * i / (samples - 1);
            const double g = eval_g(profile, x, t);
            if (g < report.min_g) {
                report.min_g = g;
                report.argmin_x = x;
                report.argmin_t = t;
            }
            if (!(g > 0.0)) {
                report.positive = false;
                if (std::isnan(report.first_violation_t) || t < report.first_violation_t) report.first_violation_t = t;
            }
        }
    }
    // Every supported kind separates x and t additively or is time independent,
    // so the mixed derivative vanishes analytically.
    report.vertical_motion_only = true;
    if (!report.positive) {
        std::ostringstream os;
        os << "g <= 0 reached (min g = " << report.min_g << " at x = " << report.argmin_x
           << ", t = " << report.argmin_t << "); first violation at t = " << report.first_violation_t;
        report.failures.push_back(os.str());
    }
    return report;
}

}  // namespace meniscus
