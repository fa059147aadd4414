#pragma once

// Birkhoff time averages along orbits of an affine Boole map, the observable
// catalog (Lyapunov observable and the density-weight examples), and the
// Monte Carlo space averages they are checked against.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <future>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "boole/dynamics.hpp"
#include "boole/errors.hpp"
#include "boole/kahan.hpp"
#include "boole/measures.hpp"
#include "boole/parametric.hpp"
#include "boole/quadrature.hpp"

namespace boole {

struct TracePoint {
    std::size_t k = 0;        ///< number of terms summed
    double running_average = 0.0;
};

struct BirkhoffResult {
    double estimate = 0.0;
    std::size_t n = 0;
    std::size_t burn_in = 0;
    std::vector<TracePoint> trace; ///< k = 1, 2, 4, ..., and n
    double x0 = 0.0;
    std::size_t pole_flags = 0;    ///< orbit points with |x - a| < pole_tolerance
};

/// The orbit left the floating range before the average was complete.
class OrbitOverflowError : public std::runtime_error {
public:
    OrbitOverflowError(BirkhoffResult partial, std::size_t index)
        : std::runtime_error("birkhoff_average: orbit overflowed at iterate " + std::to_string(index)),
          partial_(std::move(partial)), index_(index)
    {
    }
    [[nodiscard]] const BirkhoffResult& partial() const noexcept { return partial_; }
    [[nodiscard]] std::size_t index() const noexcept { return index_; }

private:
    BirkhoffResult partial_;
    std::size_t index_;
};

/// A named real observable. fn must be finite on every finite input.
struct Observable {
    std::string name;
    std::function<double(double)> fn;
    std::string integrable_note;
    std::optional<double> expected; ///< space average under the invariant Cauchy law, when known

    double operator()(double x) const { return fn(x); }
};

inline constexpr double kDefaultPoleTolerance = 1e-12;

/// (1/n) sum_{k=burn_in}^{burn_in+n-1} f(phi^(k)(x0)), compensated summation.
///
/// pole_tolerance is relative to the scale b of the map when M is a BooleMap.
template <IteratedMap M, class F>
BirkhoffResult birkhoff_average(const M& map, F&& f, double x0, std::size_t n, std::size_t burn_in = 0,
                                double pole_tolerance = kDefaultPoleTolerance)
{
    if (n < 1)
        throw DomainError("birkhoff_average: n must be at least 1");
    if (!std::isfinite(x0))
        throw DomainError("birkhoff_average: x0 must be finite");

    BirkhoffResult r;
    r.n = n;
    r.burn_in = burn_in;
    r.x0 = x0;

    double pole = 0.0;
    double near = -1.0;
    if constexpr (requires { map.a(); map.b(); }) {
        pole = map.a();
        near = pole_tolerance * map.b();
    }

    double x = x0;
    for (std::size_t k = 0; k < burn_in; ++k) {
        x = map(x);
        if (!std::isfinite(x)) {
            r.n = 0;
            throw OrbitOverflowError(std::move(r), k + 1);
        }
    }

    KahanSum sum;
    std::size_t checkpoint = 1;
    for (std::size_t k = 0; k < n; ++k) {
        sum += f(x);
        if (std::abs(x - pole) < near)
            ++r.pole_flags;
        const std::size_t terms = k + 1;
        if (terms == checkpoint || terms == n) {
            r.trace.push_back({terms, sum.value() / static_cast<double>(terms)});
            if (terms == checkpoint)
                checkpoint *= 2;
        }
        if (terms == n)
            break;
        x = map(x);
        if (!std::isfinite(x)) {
            r.n = terms;
            r.estimate = sum.value() / static_cast<double>(terms);
            if (r.trace.empty() || r.trace.back().k != terms)
                r.trace.push_back({terms, r.estimate});
            throw OrbitOverflowError(std::move(r), burn_in + terms);
        }
    }
    r.estimate = r.trace.back().running_average;
    return r;
}

/// ln|phi'_{a,b}(x)| = ln((1 + b^2/(x-a)^2)/2), and 0 at the pole.
inline double lyapunov_term(const BooleMap& map, double x) noexcept
{
    if (x == map.a())
        return 0.0;
    const double d = x - map.a();
    const double d2 = d * d;
    if (d2 > 1e-300 && d2 < 1e300)
        return std::log((d2 + map.b() * map.b()) / (2.0 * d2));
    return detail::log1p_ratio(1.0, std::abs(d) / map.b()) - kLn2;
}

inline BirkhoffResult lyapunov_exponent(const BooleMap& map, double x0, std::size_t n, std::size_t burn_in = 0,
                                        double pole_tolerance = kDefaultPoleTolerance)
{
    return birkhoff_average(map, [&map](double x) { return lyapunov_term(map, x); }, x0, n, burn_in,
                            pole_tolerance);
}

namespace detail {

inline std::string short_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace detail

/// Law of the auxiliary random variable eta in the density-ratio observable.
struct NormalLaw {
    double mean = 0.0;
    double sd = 1.0;

    [[nodiscard]] double pdf(double u) const noexcept
    {
        const double z = (u - mean) / sd;
        return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
    }
    [[nodiscard]] double second_moment() const noexcept { return mean * mean + sd * sd; }
    [[nodiscard]] std::string name() const
    {
        return "normal(" + detail::short_number(mean) + "," + detail::short_number(sd) + ")";
    }
};

inline double standard_normal_pdf(double u) noexcept
{
    return std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
}

/// E[(1 + eta^2) / (1 + (eta - a)^2)] by quadrature.
template <class Law>
double density_ratio_expectation(double a, const Law& eta, double tol = 1e-12)
{
    auto f = [&](double u) { return (1.0 + u * u) / (1.0 + (u - a) * (u - a)) * eta.pdf(u); };
    return integrate_real_line(f, tol, eta.mean, eta.sd).value;
}

/// g(a) = E[(1 + eta^2)/(1 + (eta - a)^2)] / (pi E(1 + eta^2)) on each grid point; a density bounded by 1/pi.
template <class Law>
std::vector<double> density_ratio_normalization(std::span<const double> a_grid, const Law& eta)
{
    const double norm = std::numbers::pi * (1.0 + eta.second_moment());
    std::vector<double> g(a_grid.size());
    std::transform(a_grid.begin(), a_grid.end(), g.begin(),
                   [&](double a) { return density_ratio_expectation(a, eta) / norm; });
    return g;
}

/// Trapezoid rule on a (possibly non-uniform) grid.
inline double trapezoid(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size())
        throw DomainError("trapezoid: grid and values differ in length");
    KahanSum s;
    for (std::size_t i = 1; i < x.size(); ++i)
        s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return s.value();
}

class ObservableCatalog {
public:
    void add(std::string key, Observable obs) { entries_.insert_or_assign(std::move(key), std::move(obs)); }

    [[nodiscard]] const Observable& at(const std::string& key) const
    {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            throw LookupError("unknown observable '" + key + "'");
        return it->second;
    }

    [[nodiscard]] bool contains(const std::string& key) const { return entries_.contains(key); }

    [[nodiscard]] std::vector<std::string> names() const
    {
        std::vector<std::string> out;
        for (const auto& [k, v] : entries_)
            out.push_back(k);
        return out;
    }

private:
    std::map<std::string, Observable> entries_;
};

/// Built-in observables for the map's invariant Cauchy(a, b) law.
///
/// Keys: lyapunov, gauss_weighted, mean_extractor, density_ratio,
/// positive_indicator, constant. The weighted observables divide a target
/// density by the Cauchy(a, b) density, so their Birkhoff limit is an
/// expectation under that target. mean_extractor and density_ratio are the
/// b = 1 forms generalized by the same weight.
template <class Law = NormalLaw>
ObservableCatalog builtin_observables(const BooleMap& map, const Law& eta = Law{})
{
    const double a = map.a();
    const double b = map.b();
    const CauchyDist dist = CauchyDist::invariant_for(map);
    const std::string ab = "(" + detail::short_number(a) + "," + detail::short_number(b) + ")";
    // 1 / Cauchy(a, b) density
    auto inv_density = [a, b](double u) {
        const double z = (u - a) / b;
        return b * std::numbers::pi * (z * z + 1.0);
    };

    // weight * density, with 0 wherever the density underflows (the weight may overflow there)
    auto weighted = [](double weight, double density) { return density == 0.0 ? 0.0 : weight * density; };

    ObservableCatalog c;
    c.add("lyapunov", {"lyapunov" + ab, [map](double x) { return lyapunov_term(map, x); },
                       "|f| <= ln 2 + ln(1 + b^2/(x-a)^2); the log singularity at the pole is integrable "
                       "against the bounded Cauchy density",
                       kLn2});
    c.add("gauss_weighted", {"gauss_weighted" + ab,
                             [=](double u) { return weighted(inv_density(u), standard_normal_pdf(u)); },
                             "integral of |f| against Cauchy(a,b) is the standard normal mass 1", 1.0});
    c.add("mean_extractor",
          {"mean_extractor" + ab,
           [=](double u) { return weighted(inv_density(u) * u, standard_normal_pdf(u - a)); },
           "integral of |f| against Cauchy(a,b) is E|zeta + a| <= a^2 + 2 for standard normal zeta", a});

    const double ratio_target = integrate_real_line(
        [&](double u) { return std::numbers::pi * (1.0 + u * u) * dist.pdf(u) * eta.pdf(u); }, 1e-12, eta.mean,
        eta.sd).value;
    c.add("density_ratio",
          {"density_ratio(" + detail::short_number(a) + "," + eta.name() + ")",
           [=](double u) { return weighted(std::numbers::pi * (u * u + 1.0), eta.pdf(u)); },
           "integral of |f| against Cauchy(a,1) is E[(1+eta^2)/(1+(eta-a)^2)] <= E(1+eta^2) < inf", ratio_target});
    c.add("positive_indicator", {"positive_indicator" + ab, [a](double u) { return u > a ? 1.0 : 0.0; },
                                 "bounded", 0.5});
    c.add("constant", {"constant", [](double) { return 1.0; }, "bounded", 1.0});
    return c;
}

struct MonteCarloEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::size_t n = 0;
};

/// Sample mean and standard error of obs under dist, drawing with cauchy_sample's stream.
template <class F>
MonteCarloEstimate monte_carlo_expectation(const CauchyDist& dist, F&& obs, std::uint64_t seed, std::size_t n)
{
    if (n < 1)
        throw DomainError("monte_carlo_expectation: n must be at least 1");
    const UniformStream u(seed);
    // Welford
    double mean = 0.0;
    KahanSum m2;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = obs(dist.quantile(u[i]));
        const double delta = v - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (v - mean);
    }
    const double var = n > 1 ? m2.value() / static_cast<double>(n - 1) : 0.0;
    return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

/// Starting points for replica runs: the first R draws of Cauchy(a, b) with the given seed.
inline std::vector<double> replica_starts(const BooleMap& map, std::uint64_t seed, std::size_t replicas)
{
    return cauchy_sample(CauchyDist::invariant_for(map), seed, replicas);
}

/// Run job(i) for i in [0, count) on up to `threads` workers; results are stored by index.
template <class Job>
auto run_replicas(std::size_t count, Job&& job, unsigned threads = std::thread::hardware_concurrency())
    -> std::vector<decltype(job(std::size_t{}))>
{
    using R = decltype(job(std::size_t{}));
    std::vector<std::optional<R>> slots(count);
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::vector<std::future<void>> workers;
    for (unsigned w = 0; w < threads; ++w) {
        workers.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < count; i += threads)
                slots[i].emplace(job(i));
        }));
    }
    for (auto& f : workers)
        f.get();
    std::vector<R> out;
    out.reserve(count);
    for (auto& s : slots)
        out.push_back(std::move(*s));
    return out;
}

} // namespace boole
