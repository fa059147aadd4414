#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "boole/parametric.hpp"

using namespace boole;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

// Integrating G'(t) = 1/(2 sqrt t (1 + sqrt t)) from G(0) = 0.
double G_exact(double t) { return std::log1p(std::sqrt(t)); }

} // namespace

TEST_CASE("G examples")
{
    const QuadratureResult g0 = G(0.0);
    CHECK(g0.value == 0.0);
    CHECK(g0.converged);

    const QuadratureResult g1 = G(1.0);
    CHECK(g1.converged);
    CHECK_THAT(g1.value, WithinAbs(0.6931471805599453, 1e-9));

    const QuadratureResult small = G(1e-4);
    CHECK(small.converged);
    CHECK(small.value <= 0.01);
    CHECK(small.value > 0.0);
    CHECK_THROWS_AS(G(-0.1), DomainError);
    CHECK_THROWS_AS(G(1.5), DomainError);
}

TEST_CASE("G(1) - G(eps) and the sqrt bound")
{
    const double g1 = G(1.0).value;
    for (double eps : {0.01, 0.04, 0.25})
        CHECK_THAT(g1 - G(eps).value, WithinAbs(std::numbers::ln2 - std::log1p(std::sqrt(eps)), 1e-7));
    double prev = 1.0;
    for (double eps : {1e-2, 1e-4, 1e-6}) {
        const double g = G(eps).value;
        CHECK(g <= std::sqrt(eps));
        CHECK(g < prev);
        prev = g;
    }
}

TEST_CASE("G agrees with an independent exp-sinh quadrature")
{
    boost::math::quadrature::exp_sinh<double> es;
    for (double t : {0.01, 0.3, 0.7, 1.0}) {
        const double oracle = es.integrate([t](double x) {
            const double l = x > 1.0 ? std::log1p(t / (x * x)) : std::log(x * x + t) - 2.0 * std::log(x);
            return l / (pi * (1.0 + x * x));
        });
        CHECK_THAT(G(t).value, WithinAbs(oracle, 1e-10));
        CHECK_THAT(G(t).value, WithinAbs(G_exact(t), 1e-10));
    }
}

TEST_CASE("G is nondecreasing on a 50-point grid")
{
    double prev = -1.0;
    for (int i = 0; i < 50; ++i) {
        const double t = i / 49.0;
        const double g = G(t).value;
        REQUIRE(g >= prev);
        prev = g;
    }
}

TEST_CASE("G_prime_closed examples")
{
    CHECK(G_prime_closed(1.0) == 0.25);
    CHECK_THAT(G_prime_closed(0.25), WithinRel(2.0 / 3.0, 1e-15));
    CHECK_THAT(G_prime_closed(0.09), WithinRel(1.0 / 0.78, 1e-14));
    CHECK_THROWS_AS(G_prime_closed(0.0), DomainError);
    CHECK_THROWS_AS(G_prime_closed(-1.0), DomainError);
}

TEST_CASE("G_prime_numeric matches the closed form")
{
    for (double t : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        INFO("t=" << t);
        CHECK_THAT(G_prime_numeric(t, 1e-4), WithinAbs(G_prime_closed(t), 1e-6));
    }
    CHECK_THAT(G_prime_numeric(0.25, 1e-4), WithinAbs(2.0 / 3.0, 1e-6));
    CHECK_THROWS_AS(G_prime_numeric(0.5, 0.0), DomainError);
    CHECK_THROWS_AS(G_prime_numeric(0.99, 0.05), DomainError);
    CHECK_THROWS_AS(G_prime_numeric(0.5, 1e-4, 1e-16), std::runtime_error);
}

TEST_CASE("the t-derivative of the integrand is dominated by the envelope")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> logx(std::log(1e-6), std::log(1e6)), unit(0.0, 1.0);
    for (double eps : {1e-3, 0.1, 0.5}) {
        for (int i = 0; i < 1000; ++i) {
            const double x = std::exp(logx(rng));
            const double t = eps + (1.0 - eps) * unit(rng);
            const double d = G_integrand_dt(x, t);
            REQUIRE(std::abs(d) <= G_integrand_dt_envelope(x, eps));
            // and it is the derivative: compare with a central difference of g
            const double h = 1e-6 * t;
            const double fd = (G_integrand(x, t + h) - G_integrand(x, t - h)) / (2 * h);
            REQUIRE_THAT(fd, WithinRel(d, 1e-5));
        }
    }
}

TEST_CASE("sqrt t identity")
{
    for (const auto& [t, v] : {std::pair{0.25, 0.5}, std::pair{0.5, 0.7071067811865476}, std::pair{1.0, 1.0}}) {
        const QuadratureResult r = sqrt_t_integral(t);
        CHECK(r.converged);
        CHECK_THAT(r.value, WithinAbs(v, 1e-8));
    }
    CHECK_THROWS_AS(sqrt_t_integral(0.0), DomainError);
}

TEST_CASE("four forms of ln 2")
{
    const auto forms = equivalent_forms();
    REQUIRE(forms.size() == 4);
    for (const auto& [name, r] : forms) {
        INFO(name);
        CHECK(r.converged);
        CHECK_THAT(r.value, WithinAbs(0.6931471805599453, 1e-8));
        for (const auto& [other, s] : forms)
            CHECK_THAT(r.value, WithinAbs(s.value, 2e-8));
    }
}

TEST_CASE("Boole's identity")
{
    const BooleIdentity g = boole_identity_check([](double x) { return std::exp(-x * x); });
    CHECK(g.gap <= 1e-8);
    CHECK_THAT(g.lhs.value, WithinAbs(1.7724538509055160, 1e-8));
    CHECK_THAT(g.rhs.value, WithinAbs(1.7724538509055160, 1e-8));

    const BooleIdentity c = boole_identity_check([](double x) { return 1.0 / (pi * (1.0 + x * x)); });
    CHECK(c.gap <= 1e-8);
    CHECK_THAT(c.lhs.value, WithinAbs(1.0, 1e-8));

    const BooleIdentity q = boole_identity_check([](double x) { return 1.0 / (1.0 + x * x * x * x); });
    CHECK(q.gap <= 1e-8);
    // high-resolution fixed grid (composite Simpson on [-L, L] plus analytic tail 2/(3L^3))
    const double L = 200.0;
    const int n = 400000;
    const double h = 2 * L / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = -L + i * h;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        s += w / (1.0 + x * x * x * x);
    }
    const double grid = s * h / 3.0 + 2.0 / (3.0 * L * L * L);
    CHECK_THAT(q.lhs.value, WithinAbs(grid, 1e-9));
    CHECK_THAT(q.rhs.value, WithinAbs(grid, 1e-9));
    CHECK_THAT(q.lhs.value, WithinAbs(pi / std::sqrt(2.0), 1e-9));
}

TEST_CASE("Boole's identity holds for x - c/x but not for 2x - 1/x")
{
    const auto f = [](double x) { return std::exp(-x * x); };
    const QuadratureResult lhs = integrate_real_line(f, 1e-10);
    const QuadratureResult rhs =
        integrate_halfline([&](double x) { return f(x - 2.0 / x) + f(2.0 / x - x); }, 1e-10);
    CHECK(std::abs(lhs.value - rhs.value) < 1e-8);
    // the substitution 2x - 1/x halves the integral
    const QuadratureResult skew =
        integrate_halfline([&](double x) { return f(2.0 * x - 1.0 / x) + f(1.0 / x - 2.0 * x); }, 1e-10);
    CHECK_THAT(skew.value, WithinAbs(0.5 * lhs.value, 1e-8));
}

TEST_CASE("Lyapunov integral")
{
    for (const auto& [a, b] : {std::pair{0.0, 1.0}, std::pair{5.0, 0.1}, std::pair{-5.0, 0.1}, std::pair{3.0, 2.0},
                               std::pair{7.0, 0.01}}) {
        const QuadratureResult r = lyapunov_integral(a, b);
        INFO("a=" << a << " b=" << b);
        CHECK(r.converged);
        CHECK_THAT(r.value, WithinAbs(std::numbers::ln2, 1e-8));
    }
    const QuadratureResult d = lyapunov_integral_decomposed();
    CHECK(d.converged);
    CHECK_THAT(d.value, WithinAbs(std::numbers::ln2, 1e-8));
    CHECK_THAT(d.value, WithinAbs(lyapunov_integral(0.0, 1.0).value, 1e-9));
    CHECK_THROWS_AS(lyapunov_integral(0.0, 0.0), DomainError);
}
