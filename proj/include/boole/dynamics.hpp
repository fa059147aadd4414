#pragma once

// Affine Boole transformation x -> b*phi((x-a)/b) + a with phi(y) = (y - 1/y)/2,
// its orbits, and its origin as the Newton iteration for (x-a)^2 + b^2.

#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "boole/errors.hpp"

namespace boole {

/// Parameters (a, b) of the affine Boole transformation. b > 0.
class BooleMap {
public:
    constexpr BooleMap() = default;

    BooleMap(double a, double b) : a_(a), b_(b)
    {
        if (!std::isfinite(a) || !std::isfinite(b))
            throw DomainError("BooleMap: parameters must be finite");
        if (!(b > 0.0))
            throw DomainError("BooleMap: scale b must be strictly positive");
    }

    /// The standard Boole transformation (a, b) = (0, 1).
    static BooleMap standard() { return {}; }

    [[nodiscard]] constexpr double a() const noexcept { return a_; }
    [[nodiscard]] constexpr double b() const noexcept { return b_; }

    /// phi_{a,b}(x) in the pole-explicit form x/2 + a/2 - (b^2/2)/(x-a); phi(a) = a.
    /// No validation: this is the hot path of orbit generation.
    [[nodiscard]] double operator()(double x) const noexcept
    {
        if (x == a_)
            return a_;
        return 0.5 * x + 0.5 * a_ - (0.5 * b_ * b_) / (x - a_);
    }

    /// Checked evaluation; rejects non-finite input.
    [[nodiscard]] double eval(double x) const
    {
        if (!std::isfinite(x))
            throw DomainError("boole_eval: x must be finite");
        return (*this)(x);
    }

    /// phi'(x) = (1 + b^2/(x-a)^2)/2, always > 1/2.
    [[nodiscard]] double derivative(double x) const
    {
        if (!std::isfinite(x))
            throw DomainError("boole_derivative: x must be finite");
        if (x == a_)
            throw PoleError("boole_derivative: map is not differentiable at the pole x = a");
        const double s = b_ / (x - a_);
        return 0.5 * (1.0 + s * s);
    }

    /// (x - a)/b, the coordinate in which the map becomes phi_{0,1}.
    [[nodiscard]] constexpr double to_standard(double x) const noexcept { return (x - a_) / b_; }
    [[nodiscard]] constexpr double from_standard(double y) const noexcept { return b_ * y + a_; }

    friend constexpr bool operator==(const BooleMap&, const BooleMap&) = default;

private:
    double a_ = 0.0;
    double b_ = 1.0;
};

/// Extension point for one-dimensional maps driven through the ergodic engine.
///
/// Generalized Boole maps x -> alpha*x - beta/x plug in here by providing the
/// same two members; only BooleMap ships with the library.
template <class M>
concept IteratedMap = requires(const M& m, double x) {
    { m(x) } -> std::convertible_to<double>;
    { m.derivative(x) } -> std::convertible_to<double>;
};

static_assert(IteratedMap<BooleMap>);

inline double boole_eval(const BooleMap& map, double x) { return map.eval(x); }
inline double boole_derivative(const BooleMap& map, double x) { return map.derivative(x); }

struct Orbit {
    BooleMap map;
    double x0 = 0.0;
    std::vector<double> points;        ///< points[k] = phi^(k)(x0)
    std::optional<std::size_t> pole_hit; ///< first k with |x_k - a| < pole_tolerance
    bool truncated = false;            ///< iteration stopped on a non-finite value
};

/// x_0..x_n of the orbit of x0. Near-pole points are flagged, never altered.
inline Orbit iterate_orbit(const BooleMap& map, double x0, std::size_t n, double pole_tolerance = 1e-12)
{
    if (n < 1)
        throw DomainError("iterate_orbit: n must be at least 1");
    if (!std::isfinite(x0))
        throw DomainError("iterate_orbit: x0 must be finite");
    if (!(pole_tolerance > 0.0))
        throw DomainError("iterate_orbit: pole_tolerance must be positive");

    Orbit orbit{map, x0, {}, std::nullopt, false};
    orbit.points.reserve(n + 1);
    double x = x0;
    for (std::size_t k = 0;; ++k) {
        orbit.points.push_back(x);
        if (!orbit.pole_hit && std::abs(x - map.a()) < pole_tolerance)
            orbit.pole_hit = k;
        if (k == n)
            break;
        x = map(x);
        if (!std::isfinite(x)) {
            orbit.truncated = true;
            break;
        }
    }
    return orbit;
}

/// One Newton step for f(x) = (x-a)^2 + b^2, written as x - f/f'.
inline double newton_step_real(const BooleMap& map, double x)
{
    if (!std::isfinite(x))
        throw DomainError("newton_step_real: x must be finite");
    if (x == map.a())
        throw PoleError("newton_step_real: f'(a) = 0");
    const double d = x - map.a();
    return x - (d * d + map.b() * map.b()) / (2.0 * d);
}

struct NewtonResult {
    std::complex<double> limit;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Complex Newton iteration for (z-a)^2 + b^2 from z0 off the real axis.
///
/// Upper half-plane starts converge to a+ib, lower ones to a-ib. Convergence
/// to the opposite root is a broken invariant and throws std::logic_error.
inline NewtonResult newton_iterate_complex(const BooleMap& map, std::complex<double> z0,
                                           std::size_t max_iter, double tol)
{
    if (!std::isfinite(z0.real()) || !std::isfinite(z0.imag()))
        throw DomainError("newton_iterate_complex: z0 must be finite");
    if (z0.imag() == 0.0)
        throw DomainError("newton_iterate_complex: real starting points do not converge");
    if (!(tol > 0.0))
        throw DomainError("newton_iterate_complex: tol must be positive");

    const std::complex<double> a{map.a(), 0.0};
    const std::complex<double> predicted{map.a(), z0.imag() > 0 ? map.b() : -map.b()};
    const std::complex<double> other = std::conj(predicted);

    NewtonResult r{z0, 0, false};
    std::complex<double> z = z0;
    while (r.iterations < max_iter) {
        const std::complex<double> d = z - a;
        z -= (d * d + map.b() * map.b()) / (2.0 * d);
        ++r.iterations;
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            break;
        if (std::abs(z - predicted) < tol) {
            r.converged = true;
            break;
        }
        if (std::abs(z - other) < tol)
            throw std::logic_error("newton_iterate_complex: converged to the root in the opposite half-plane");
    }
    r.limit = z;
    return r;
}

} // namespace boole
