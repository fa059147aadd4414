#pragma once

// The parametric integral
//     G(t) = int_0^inf ln(1 + t/x^2) / (pi (1 + x^2)) dx,   t in [0, 1],
// its derivative, and the integral identities around the value ln 2.

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "boole/dynamics.hpp"
#include "boole/errors.hpp"
#include "boole/measures.hpp"
#include "boole/quadrature.hpp"

namespace boole {

inline constexpr double kLn2 = std::numbers::ln2;
inline constexpr double kDefaultIdentityTol = 1e-10;

namespace detail {

/// ln(1 + t/x^2) for x > 0, t >= 0 without overflow as x -> 0.
inline double log1p_ratio(double t, double x)
{
    if (t == 0.0)
        return 0.0;
    if (x >= 1.0)
        return std::log1p(t / (x * x));
    return std::log(x * x + t) - 2.0 * std::log(x);
}

} // namespace detail

/// g(x, t), the integrand of G.
inline double G_integrand(double x, double t)
{
    return detail::log1p_ratio(t, x) / (std::numbers::pi * (1.0 + x * x));
}

/// d/dt g(x, t) = 1 / (pi (1 + x^2)(t + x^2)).
inline double G_integrand_dt(double x, double t)
{
    return 1.0 / (std::numbers::pi * (1.0 + x * x) * (t + x * x));
}

/// Integrable envelope of d/dt g on t in [eps, 1): 1 / (pi eps (1 + x^2)).
inline double G_integrand_dt_envelope(double x, double eps)
{
    return 1.0 / (std::numbers::pi * eps * (1.0 + x * x));
}

inline QuadratureResult G(double t, double tol = kDefaultIdentityTol)
{
    if (!(t >= 0.0 && t <= 1.0))
        throw DomainError("G: t must lie in [0, 1]");
    if (t == 0.0)
        return {0.0, 0.0, 0, true};
    return integrate_halfline([t](double x) { return G_integrand(x, t); }, tol);
}

/// G'(t) = 1 / (2 sqrt(t) (1 + sqrt(t))).
inline double G_prime_closed(double t)
{
    if (!(t > 0.0) || !std::isfinite(t))
        throw DomainError("G_prime_closed: singular for t <= 0");
    const double s = std::sqrt(t);
    return 1.0 / (2.0 * s * (1.0 + s));
}

/// Central difference (G(t+h) - G(t-h)) / 2h with quadrature tolerance at most 1e-12.
inline double G_prime_numeric(double t, double h = 1e-4, double tol = 1e-12)
{
    if (!(h > 0.0))
        throw DomainError("G_prime_numeric: h must be positive");
    if (!(t - h > 0.0 && t + h < 1.0))
        throw DomainError("G_prime_numeric: [t-h, t+h] must lie inside (0, 1)");
    const double q = std::min(tol, 1e-12);
    const QuadratureResult up = G(t + h, q);
    const QuadratureResult down = G(t - h, q);
    if (!up.converged || !down.converged)
        throw std::runtime_error("G_prime_numeric: quadrature did not converge");
    return (up.value - down.value) / (2.0 * h);
}

/// int_0^inf ln(1 + t/x^2) / pi dx, which equals sqrt(t).
inline QuadratureResult sqrt_t_integral(double t, double tol = kDefaultIdentityTol)
{
    if (!(t > 0.0))
        throw DomainError("sqrt_t_integral: t must be positive");
    return integrate_halfline([t](double x) { return detail::log1p_ratio(t, x) / std::numbers::pi; }, tol);
}

/// Four integral representations of ln 2, keyed "F1".."F4".
inline std::map<std::string, QuadratureResult> equivalent_forms(double tol = kDefaultIdentityTol)
{
    constexpr double pi = std::numbers::pi;
    std::map<std::string, QuadratureResult> out;

    out["F1"] = integrate_halfline([](double x) { return detail::log1p_ratio(1.0, x) / (pi * (1.0 + x * x)); }, tol);

    // Scale the raw integrals so the requested tolerance applies to the ln 2 value.
    const double k = 2.0 / pi;
    QuadratureResult f2 = integrate_interval([](double x) { return std::log(std::sin(x)); }, 0.0, pi / 2, tol / k);
    out["F2"] = {-k * f2.value, k * f2.error_estimate, f2.subdivisions, f2.converged};

    QuadratureResult f3 = integrate_interval([](double x) { return x / std::tan(x); }, 0.0, pi / 2, tol / k);
    out["F3"] = {k * f3.value, k * f3.error_estimate, f3.subdivisions, f3.converged};

    QuadratureResult f4 =
        integrate_halfline([](double x) { return std::atan(x) / (x * (1.0 + x * x)); }, tol / k);
    out["F4"] = {k * f4.value, k * f4.error_estimate, f4.subdivisions, f4.converged};
    return out;
}

struct BooleIdentity {
    QuadratureResult lhs; ///< int_R f(x) dx
    QuadratureResult rhs; ///< int_R f(x - 1/x) dx
    double gap = 0.0;
};

/// Both sides of int_R f(x) dx = int_R f(x - 1/x) dx.
///
/// The right side is split at 0 and folded onto (0, inf) as
/// f(x - 1/x) + f(1/x - x); its limits at 0 are f(-inf) and f(+inf).
template <class F>
BooleIdentity boole_identity_check(F&& f, double tol = kDefaultIdentityTol)
{
    BooleIdentity r;
    r.lhs = integrate_real_line(f, tol);
    r.rhs = integrate_halfline([&f](double x) { return f(x - 1.0 / x) + f(1.0 / x - x); }, tol);
    r.gap = std::abs(r.lhs.value - r.rhs.value);
    return r;
}

/// int_R ln|phi'_{a,b}(x)| dP_{C(a,b)}(x), split at the pole x = a.
///
/// Integrated in the original coordinate: the real line is split at the pole
/// and each half-line is split again at distance b. If the first attempt does
/// not converge the subdivision budget is raised tenfold once.
inline QuadratureResult lyapunov_integral(double a, double b, double tol = kDefaultIdentityTol)
{
    const CauchyDist dist(a, b);
    // ln phi'(x) = ln(1 + b^2/(x-a)^2) - ln 2, overflow-free as x -> a
    auto integrand = [&](double x) {
        return x == a ? 0.0 : (detail::log1p_ratio(b * b, std::abs(x - a)) - kLn2) * dist.pdf(x);
    };
    QuadratureResult r = integrate_real_line(integrand, tol, a, b);
    if (!r.converged)
        r = integrate_real_line(integrand, tol, a, b, 10 * kDefaultSubdivisionLimit);
    return r;
}

/// -ln 2 * P(xi > 0) + G(1), doubled: the split form of the Lyapunov integral.
inline QuadratureResult lyapunov_integral_decomposed(double tol = kDefaultIdentityTol)
{
    const QuadratureResult mass =
        integrate_halfline([](double x) { return 1.0 / (std::numbers::pi * (1.0 + x * x)); }, 0.25 * tol);
    const QuadratureResult g1 = G(1.0, 0.25 * tol);
    return {2.0 * (-kLn2 * mass.value + g1.value), 2.0 * (kLn2 * mass.error_estimate + g1.error_estimate),
            mass.subdivisions + g1.subdivisions, mass.converged && g1.converged};
}

} // namespace boole
