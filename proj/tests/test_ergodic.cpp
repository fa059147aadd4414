#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "boole/ergodic.hpp"

using namespace boole;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double ln2 = std::numbers::ln2;

struct BatchMeans {
    double mean;
    double standard_error;
};

// Birkhoff average with a batch-means standard error, which accounts for
// correlation along the orbit.
BatchMeans birkhoff_batches(const BooleMap& map, const Observable& obs, double x0, std::size_t n,
                            std::size_t batches = 100)
{
    const std::size_t m = n / batches;
    std::vector<double> sums(batches, 0.0);
    std::size_t i = 0;
    birkhoff_average(map,
                     [&](double x) {
                         const double v = obs(x);
                         sums[std::min(i++ / m, batches - 1)] += v;
                         return v;
                     },
                     x0, m * batches);
    double mean = 0.0;
    for (double& s : sums) {
        s /= static_cast<double>(m);
        mean += s;
    }
    mean /= static_cast<double>(batches);
    double var = 0.0;
    for (double s : sums)
        var += (s - mean) * (s - mean);
    var /= static_cast<double>(batches - 1);
    return {mean, std::sqrt(var / static_cast<double>(batches))};
}

} // namespace

TEST_CASE("constant observable averages to exactly one")
{
    for (const BooleMap m : {BooleMap(0.0, 1.0), BooleMap(3.0, 2.0)}) {
        const BirkhoffResult r = birkhoff_average(m, [](double) { return 1.0; }, 0.7, 1000);
        CHECK(r.estimate == 1.0);
        CHECK(r.n == 1000);
        CHECK(r.x0 == 0.7);
    }
}

TEST_CASE("trace checkpoints are 1, 2, 4, ..., n and end at the estimate")
{
    const BirkhoffResult r = lyapunov_exponent(BooleMap{}, 0.3, 1000);
    std::vector<std::size_t> ks;
    for (const auto& t : r.trace)
        ks.push_back(t.k);
    CHECK(ks == std::vector<std::size_t>{1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1000});
    CHECK(r.estimate == r.trace.back().running_average);

    const BirkhoffResult p = lyapunov_exponent(BooleMap{}, 0.3, 1024);
    CHECK(p.trace.back().k == 1024);
    CHECK(p.trace.size() == 11);
}

TEST_CASE("Lyapunov exponent examples")
{
    CHECK_THAT(lyapunov_exponent(BooleMap{}, 0.12345, 10000000).estimate, WithinAbs(0.6931471805599453, 0.01));
    CHECK_THAT(lyapunov_exponent(BooleMap{}, 0.3, 10000000).estimate, WithinAbs(ln2, 0.01));
    CHECK_THAT(lyapunov_exponent(BooleMap(7.0, 0.01), 7.5, 10000000).estimate, WithinAbs(ln2, 0.01));
    // phi' = 1 where |x - a| = b
    CHECK(lyapunov_term(BooleMap(2.0, 3.0), 5.0) == 0.0);
    CHECK(lyapunov_term(BooleMap(2.0, 3.0), -1.0) == 0.0);
    CHECK(lyapunov_term(BooleMap(2.0, 3.0), 2.0) == 0.0);
}

TEST_CASE("lyapunov_term equals ln of the derivative, also far from and near the pole")
{
    const BooleMap m(0.0, 0.5);
    for (double d : {1e-200, 1e-160, 1e-10, 0.3, 1.0, 7.0, 1e10, 1e160, 1e200}) {
        for (double s : {1.0, -1.0}) {
            const double x = m.a() + s * d;
            const double b2 = m.b() * m.b();
            // ln((1 + b^2/d^2)/2) = ln(d^2 + b^2) - 2 ln d - ln 2, in long double
            const long double ld = d;
            const long double exact = std::log1pl(b2 / (ld * ld)) - std::numbers::ln2_v<long double>;
            INFO("d=" << d);
            CHECK(std::isfinite(lyapunov_term(m, x)));
            CHECK_THAT(lyapunov_term(m, x), WithinRel(static_cast<double>(exact), 1e-13) ||
                                                WithinAbs(static_cast<double>(exact), 1e-15));
        }
    }
}

TEST_CASE("positive indicator averages to one half")
{
    const BooleMap s;
    const auto catalog = builtin_observables(s);
    const double x0 = replica_starts(s, 17, 1)[0];
    CHECK_THAT(birkhoff_average(s, catalog.at("positive_indicator"), x0, 10000000).estimate, WithinAbs(0.5, 0.01));
}

TEST_CASE("burn-in does not change the limit")
{
    for (const BooleMap m : {BooleMap(0.0, 1.0), BooleMap(-5.0, 0.1)}) {
        const double x0 = replica_starts(m, 4, 1)[0];
        const BirkhoffResult r0 = lyapunov_exponent(m, x0, 1000000, 0);
        const BirkhoffResult r1 = lyapunov_exponent(m, x0, 1000000, 1000);
        CHECK(r1.burn_in == 1000);
        CHECK(std::abs(r0.estimate - r1.estimate) <= 0.01);
    }
}

TEST_CASE("Lyapunov estimates do not depend on the starting point")
{
    const BooleMap s;
    const CauchyDist d;
    const std::size_t n = 10000000;
    const auto x0s = replica_starts(s, 2024, 32);
    const auto results = run_replicas(x0s.size(), [&](std::size_t i) { return lyapunov_exponent(s, x0s[i], n); });
    double mean = 0.0;
    for (const auto& r : results)
        mean += r.estimate / 32.0;
    double var = 0.0;
    for (const auto& r : results)
        var += (r.estimate - mean) * (r.estimate - mean) / 31.0;
    const MonteCarloEstimate single =
        monte_carlo_expectation(d, [&](double x) { return lyapunov_term(s, x); }, 5, 1000000);
    const double single_sd = single.standard_error * std::sqrt(1000000.0);
    CHECK(std::sqrt(var) <= 3.0 * single_sd / std::sqrt(static_cast<double>(n)));
    CHECK_THAT(mean, WithinAbs(ln2, 0.003));
}

TEST_CASE("Lyapunov terms are conjugation invariant")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> loc(-10.0, 10.0), logb(std::log(0.1), std::log(10.0)), y(-5.0, 5.0);
    const BooleMap s;
    for (int trial = 0; trial < 200; ++trial) {
        const BooleMap m(loc(rng), std::exp(logb(rng)));
        const double y0 = y(rng);
        double x = m.from_standard(y0);
        double u = (x - m.a()) / m.b();
        for (int k = 0; k < 20; ++k) {
            INFO("trial " << trial << " k " << k);
            REQUIRE_THAT(lyapunov_term(m, x), WithinAbs(lyapunov_term(s, u), 1e-6 * (1.0 + std::abs(lyapunov_term(s, u)))));
            x = m(x);
            u = s(u);
        }
    }
}

TEST_CASE("Monte-Carlo expectation examples")
{
    const MonteCarloEstimate c = monte_carlo_expectation(CauchyDist{}, [](double) { return 2.5; }, 1, 1000);
    CHECK(c.estimate == 2.5);
    CHECK(c.standard_error == 0.0);

    const BooleMap s;
    const MonteCarloEstimate l =
        monte_carlo_expectation(CauchyDist{}, [&](double x) { return lyapunov_term(s, x); }, 1, 10000000);
    CHECK(std::abs(l.estimate - ln2) <= 3.0 * l.standard_error);

    const auto catalog = builtin_observables(s);
    const MonteCarloEstimate g = monte_carlo_expectation(CauchyDist{}, catalog.at("gauss_weighted"), 1, 1000000);
    CHECK(std::abs(g.estimate - 1.0) <= 3.0 * g.standard_error);
    CHECK_THROWS_AS(monte_carlo_expectation(CauchyDist{}, [](double) { return 1.0; }, 1, 0), DomainError);
}

TEST_CASE("catalog contents and lookup")
{
    const auto catalog = builtin_observables(BooleMap(2.0, 1.0));
    for (const char* key :
         {"lyapunov", "gauss_weighted", "mean_extractor", "density_ratio", "positive_indicator", "constant"}) {
        INFO(key);
        REQUIRE(catalog.contains(key));
        CHECK(catalog.at(key).expected.has_value());
        CHECK_FALSE(catalog.at(key).integrable_note.empty());
    }
    CHECK(catalog.at("mean_extractor").expected == 2.0);
    CHECK(catalog.at("gauss_weighted").name == "gauss_weighted(2,1)");
    CHECK_THROWS_AS(catalog.at("no_such_observable"), LookupError);

    const auto at_zero = builtin_observables(BooleMap{});
    CHECK_THAT(*at_zero.at("density_ratio").expected, WithinAbs(1.0, 1e-12));
}

TEST_CASE("observables are finite on finite input")
{
    const auto catalog = builtin_observables(BooleMap(1.0, 0.5));
    for (const auto& name : catalog.names())
        for (double x : {-1e300, -3.0, 0.0, 1.0, 1.0 + 1e-300, 2.5, 1e300})
            CHECK(std::isfinite(catalog.at(name)(x)));
}

TEST_CASE("catalog Birkhoff limits match the expected values and Monte-Carlo")
{
    for (const BooleMap m : {BooleMap(0.0, 1.0), BooleMap(2.0, 1.0), BooleMap(-1.0, 3.0)}) {
        const auto catalog = builtin_observables(m);
        const double x0 = replica_starts(m, 21, 1)[0];
        for (const auto& name : catalog.names()) {
            const Observable& obs = catalog.at(name);
            const BatchMeans birk = birkhoff_batches(m, obs, x0, 1000000);
            const MonteCarloEstimate mc = monte_carlo_expectation(CauchyDist::invariant_for(m), obs, 22, 1000000);
            const double combined = std::hypot(birk.standard_error, mc.standard_error);
            INFO(obs.name << " birkhoff=" << birk.mean << "+-" << birk.standard_error << " mc=" << mc.estimate
                          << "+-" << mc.standard_error);
            // 4 sigma: 36 comparisons at 3 sigma would fail ~10% of seeds by chance alone
            CHECK(std::abs(birk.mean - mc.estimate) <= 4.0 * combined + 1e-12);
            CHECK(std::abs(mc.estimate - *obs.expected) <= 4.0 * mc.standard_error + 1e-12);
        }
    }
}

TEST_CASE("worked Birkhoff examples at n = 1e6")
{
    const BooleMap s;
    const double x0 = replica_starts(s, 3, 1)[0];
    CHECK_THAT(birkhoff_average(s, builtin_observables(s).at("gauss_weighted"), x0, 1000000).estimate,
               WithinAbs(1.0, 0.02));
    for (double a : {0.0, 2.0}) {
        const BooleMap m(a, 1.0);
        const double y0 = replica_starts(m, 3, 1)[0];
        CHECK_THAT(birkhoff_average(m, builtin_observables(m).at("mean_extractor"), y0, 1000000).estimate,
                   WithinAbs(a, 0.05));
    }
}

TEST_CASE("density ratio normalization")
{
    const NormalLaw eta;
    // Monte-Carlo oracle for g(0) = E[(1 + eta^2)/(1 + eta^2)] / (2 pi) = 1/(2 pi)
    std::mt19937_64 rng(12);
    std::normal_distribution<double> normal;
    const double a = 1.3;
    double sum = 0.0, sum2 = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        const double e = normal(rng);
        const double v = (1 + e * e) / (1 + (e - a) * (e - a));
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    CHECK(std::abs(density_ratio_expectation(a, eta) - mean) <= 4 * se);
    CHECK_THAT(density_ratio_expectation(0.0, eta), WithinAbs(1.0, 1e-12));

    const std::vector<double> zero{0.0};
    CHECK_THAT(density_ratio_normalization(zero, eta)[0], WithinAbs(1.0 / (2.0 * std::numbers::pi), 1e-12));

    // g(a) <= 1/pi on the 2001-point grid [-50, 50]
    std::vector<double> grid(2001);
    for (int i = 0; i <= 2000; ++i)
        grid[i] = -50.0 + 0.05 * i;
    const auto g = density_ratio_normalization(grid, eta);
    for (double v : g)
        REQUIRE(v <= 1.0 / std::numbers::pi + 1e-12);
    // g has tails 1/(pi a^2), so the truncated grid misses 2/(50 pi) of the mass
    const double truncated = trapezoid(grid, g);
    CHECK_THAT(truncated, WithinAbs(1.0 - 2.0 / (50.0 * std::numbers::pi), 2e-4));

    // a wide grid approaches 1
    std::vector<double> wide;
    for (double x = -2000.0; x <= 2000.0 + 1e-9; x += 0.25)
        wide.push_back(x);
    const double total = trapezoid(wide, density_ratio_normalization(wide, eta));
    CHECK_THAT(total, WithinAbs(1.0 - 2.0 / (2000.0 * std::numbers::pi), 2e-4));
    CHECK_THAT(total, WithinAbs(1.0, 0.001));
}

TEST_CASE("trapezoid")
{
    const std::vector<double> x{0.0, 1.0, 3.0};
    const std::vector<double> y{0.0, 1.0, 3.0};
    CHECK(trapezoid(x, y) == 4.5);
    CHECK_THROWS_AS(trapezoid(x, std::vector<double>{1.0}), DomainError);
}

TEST_CASE("overflow raises with the partial result")
{
    const BooleMap s;
    try {
        (void)lyapunov_exponent(s, 1e-310, 100);
        FAIL("expected OrbitOverflowError");
    } catch (const OrbitOverflowError& e) {
        CHECK(e.index() == 1);
        CHECK(e.partial().n == 1);
        CHECK(std::isfinite(e.partial().estimate));
        CHECK(e.partial().trace.back().k == 1);
    }
}

TEST_CASE("exact pole hits contribute zero and are flagged")
{
    const BirkhoffResult r = lyapunov_exponent(BooleMap{}, 1.0, 10);
    // 1 -> 0 -> 0 ...; ln phi'(1) = 0 and the pole convention gives 0
    CHECK(r.estimate == 0.0);
    CHECK(r.pole_flags == 9);
    CHECK_THROWS_AS(lyapunov_exponent(BooleMap{}, 1.0, 0), DomainError);
    CHECK_THROWS_AS(lyapunov_exponent(BooleMap{}, NAN, 10), DomainError);
}

TEST_CASE("replicas are reduced in index order regardless of thread count")
{
    const BooleMap s;
    const auto x0s = replica_starts(s, 9, 7);
    auto job = [&](std::size_t i) { return lyapunov_exponent(s, x0s[i], 10000).estimate; };
    const auto one = run_replicas(x0s.size(), job, 1);
    const auto three = run_replicas(x0s.size(), job, 3);
    CHECK(one == three);
    for (std::size_t i = 0; i < x0s.size(); ++i)
        CHECK(one[i] == job(i));
}
