#pragma once

// Cauchy(a, b) law: density, distribution function, quantile, reproducible
// sampling, and a Kolmogorov-Smirnov instrument for invariance checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "boole/dynamics.hpp"
#include "boole/errors.hpp"

namespace boole {

class CauchyDist {
public:
    constexpr CauchyDist() = default;

    CauchyDist(double a, double b) : a_(a), b_(b)
    {
        if (!std::isfinite(a) || !std::isfinite(b))
            throw DomainError("CauchyDist: parameters must be finite");
        if (!(b > 0.0))
            throw DomainError("CauchyDist: scale b must be strictly positive");
    }

    /// The measure preserved by the affine Boole map with the same (a, b).
    static CauchyDist invariant_for(const BooleMap& m) { return {m.a(), m.b()}; }

    [[nodiscard]] constexpr double a() const noexcept { return a_; }
    [[nodiscard]] constexpr double b() const noexcept { return b_; }

    [[nodiscard]] double pdf(double x) const noexcept
    {
        const double z = (x - a_) / b_;
        return 1.0 / (b_ * std::numbers::pi * (z * z + 1.0));
    }

    [[nodiscard]] double cdf(double x) const noexcept
    {
        return std::atan((x - a_) / b_) / std::numbers::pi + 0.5;
    }

    /// a + b tan(pi (p - 1/2)), with p clamped to [1e-15, 1 - 1e-15] so the result is always finite.
    [[nodiscard]] double quantile(double p) const
    {
        if (!(p > 0.0 && p < 1.0))
            throw DomainError("cauchy_quantile: p must lie in (0, 1)");
        p = std::clamp(p, kTailClamp, 1.0 - kTailClamp);
        return a_ + b_ * std::tan(std::numbers::pi * (p - 0.5));
    }

    static constexpr double kTailClamp = 1e-15;

private:
    double a_ = 0.0;
    double b_ = 1.0;
};

inline double cauchy_pdf(const CauchyDist& d, double x) { return d.pdf(x); }
inline double cauchy_cdf(const CauchyDist& d, double x) { return d.cdf(x); }
inline double cauchy_quantile(const CauchyDist& d, double p) { return d.quantile(p); }

/// Counter-based uniform stream: u_i = (splitmix64(seed + (i+1) * 0x9E3779B97F4A7C15) >> 11 + 1/2) * 2^-53.
///
/// This is exactly the i-th output of a SplitMix64 generator started from
/// state `seed`, mapped to the open interval (0, 1). Integer-only up to the
/// final scaling, so the stream is identical on every platform.
class UniformStream {
public:
    explicit constexpr UniformStream(std::uint64_t seed) : seed_(seed) {}

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept
    {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    [[nodiscard]] constexpr std::uint64_t bits(std::uint64_t i) const noexcept
    {
        return mix(seed_ + (i + 1) * 0x9E3779B97F4A7C15ULL);
    }

    [[nodiscard]] constexpr double operator[](std::uint64_t i) const noexcept
    {
        return (static_cast<double>(bits(i) >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t seed_;
};

/// n inverse-CDF draws from `dist` driven by UniformStream(seed).
inline std::vector<double> cauchy_sample(const CauchyDist& dist, std::uint64_t seed, std::size_t n)
{
    if (n < 1)
        throw DomainError("cauchy_sample: n must be at least 1");
    const UniformStream u(seed);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = dist.quantile(u[i]);
    return out;
}

struct KsReport {
    double statistic = 0.0;
    std::size_t n = 0;
    double critical_01 = 0.0; ///< 1.628 / sqrt(n), asymptotic alpha = 0.01
    bool pass = false;
};

inline constexpr double kKsCoefficient01 = 1.628;

inline double ks_critical_01(std::size_t n) { return kKsCoefficient01 / std::sqrt(static_cast<double>(n)); }

/// One-sample KS distance sup_x |F_n(x) - F(x)| against a Cauchy law.
inline KsReport ks_statistic(std::span<const double> samples, const CauchyDist& dist)
{
    if (samples.empty())
        throw DomainError("ks_statistic: sample set is empty");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = dist.cdf(sorted[i]);
        const double above = static_cast<double>(i + 1) / n - f;
        const double below = f - static_cast<double>(i) / n;
        d = std::max({d, std::abs(above), std::abs(below)});
    }
    KsReport r{d, sorted.size(), ks_critical_01(sorted.size()), false};
    r.pass = r.statistic < r.critical_01;
    return r;
}

/// Push samples through the map (measure-preservation instrument).
template <IteratedMap M>
std::vector<double> push_forward(const M& map, std::span<const double> samples)
{
    std::vector<double> out(samples.size());
    std::transform(samples.begin(), samples.end(), out.begin(), [&](double x) { return map(x); });
    return out;
}

} // namespace boole
