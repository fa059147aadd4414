#pragma once

// Exact rational iterates of the standard Boole map and the finite sets
// A_k of starting points whose orbit lands on the pole 0 within k steps.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "boole/errors.hpp"
#include "boole/polynomial.hpp"

namespace boole {

inline constexpr int kDefaultDepthCap = 8;

/// phi_{0,1}^(k) = P/Q with integer polynomials, deg P = 2^k, deg Q = 2^k - 1 (k >= 1).
struct RationalIterate {
    int k = 0;
    IntPoly P;
    IntPoly Q;

    /// P(x)/Q(x) evaluated exactly and rounded once; double Horner loses digits to cancellation.
    [[nodiscard]] double operator()(double x) const
    {
        const BigRational X(x);
        const BigRational q = Q.eval(X);
        if (q == 0)
            throw PoleError("RationalIterate: Q vanishes at x");
        return BigRational(P.eval(X) / q).convert_to<double>();
    }
};

/// P_0 = x, Q_0 = 1; P_{k+1} = P_k^2 - Q_k^2, Q_{k+1} = 2 P_k Q_k.
inline RationalIterate rational_iterate(int k, int depth_cap = kDefaultDepthCap)
{
    if (k < 0)
        throw DomainError("rational_iterate: k must be non-negative");
    if (k > depth_cap)
        throw ResourceError("rational_iterate: k exceeds the depth cap");
    RationalIterate it{0, IntPoly{0, 1}, IntPoly{1}};
    for (int j = 0; j < k; ++j) {
        IntPoly p = it.P * it.P - it.Q * it.Q;
        IntPoly q = 2 * (it.P * it.Q);
        it = {j + 1, std::move(p), std::move(q)};
    }
    return it;
}

struct ExceptionalRoot {
    double value = 0.0; ///< nearest double to the refined interval midpoint
    Dyadic lo;          ///< exact isolating interval; lo == hi for a dyadic root
    Dyadic hi;
    int level = 0;      ///< the l with phi^(l)(root) = 0 first
};

struct ExceptionalSet {
    int k = 0;
    std::vector<ExceptionalRoot> roots; ///< sorted by value

    [[nodiscard]] std::size_t size() const noexcept { return roots.size(); }
    [[nodiscard]] std::vector<double> values() const
    {
        std::vector<double> v;
        v.reserve(roots.size());
        for (const auto& r : roots)
            v.push_back(r.value);
        return v;
    }
};

namespace detail {

inline bool is_even(const IntPoly& p)
{
    const auto& c = p.coefficients();
    for (std::size_t i = 1; i < c.size(); i += 2)
        if (c[i] != 0)
            return false;
    return true;
}

inline IntPoly reflect(const IntPoly& p)
{
    std::vector<BigInt> c = p.coefficients();
    for (std::size_t i = 1; i < c.size(); i += 2)
        c[i] = -c[i];
    return IntPoly(std::move(c));
}

inline Dyadic negate(const Dyadic& d) { return {-d.num, d.exp}; }

inline std::vector<ExceptionalRoot> real_roots_of(const IntPoly& p, int level)
{
    std::vector<ExceptionalRoot> out;
    auto emit = [&](IsolatedRoot r, bool negative, const IntPoly& poly) {
        r = refine_root(poly, std::move(r));
        Dyadic lo = r.lo, hi = r.hi;
        if (negative) {
            lo = negate(r.hi);
            hi = negate(r.lo);
        }
        const double v = Dyadic::midpoint(lo, hi).to_double();
        out.push_back({v, std::move(lo), std::move(hi), level});
    };

    if (p.coefficient(0) == 0)
        out.push_back({0.0, {BigInt(0), 0}, {BigInt(0), 0}, level});
    const auto positives = isolate_positive_roots(p);
    for (const auto& r : positives)
        emit(r, false, p);
    if (is_even(p)) {
        for (const auto& r : positives)
            emit(r, true, p);
    } else {
        const IntPoly mirrored = reflect(p);
        for (const auto& r : isolate_positive_roots(mirrored))
            emit(r, true, mirrored);
    }
    return out;
}

} // namespace detail

/// A_k = {x0 : phi_{0,1}^(l)(x0) = 0 for some l <= k}, by exact real-root isolation of P_0..P_k.
///
/// The levels are disjoint since gcd(P_l, Q_l) = 1 and Q_l vanishes on every
/// lower level, so no deduplication beyond sorting is needed.
inline ExceptionalSet exceptional_set(int k, int depth_cap = kDefaultDepthCap)
{
    if (k < 1)
        throw DomainError("exceptional_set: k must be at least 1");
    if (k > depth_cap)
        throw ResourceError("exceptional_set: k exceeds the depth cap");

    ExceptionalSet set{k, {}};
    RationalIterate it = rational_iterate(0);
    for (int level = 0; level <= k; ++level) {
        if (level > 0) {
            IntPoly p = it.P * it.P - it.Q * it.Q;
            IntPoly q = 2 * (it.P * it.Q);
            it = {level, std::move(p), std::move(q)};
        }
        auto roots = detail::real_roots_of(it.P, level);
        std::move(roots.begin(), roots.end(), std::back_inserter(set.roots));
    }
    std::sort(set.roots.begin(), set.roots.end(),
              [](const ExceptionalRoot& x, const ExceptionalRoot& y) { return x.value < y.value; });
    return set;
}

/// Double interval [lo, hi] that contains the exact isolating interval.
inline std::pair<double, double> outward_interval(const ExceptionalRoot& r)
{
    auto down = [](const Dyadic& d) {
        const BigRational exact = d.to_rational();
        double v = exact.convert_to<double>();
        if (BigRational(v) > exact)
            v = std::nextafter(v, -INFINITY);
        return v;
    };
    auto up = [](const Dyadic& d) {
        const BigRational exact = d.to_rational();
        double v = exact.convert_to<double>();
        if (BigRational(v) < exact)
            v = std::nextafter(v, INFINITY);
        return v;
    };
    return {down(r.lo), up(r.hi)};
}

/// Rigorous check that the orbit of the enclosed root reaches the pole 0.
///
/// Iterates phi_{0,1} on the exact rational enclosure [lo, hi]; away from 0
/// the map is increasing on each half-line, so [phi(lo), phi(hi)] encloses the
/// image. Returns the first step whose enclosure contains 0, or nullopt if
/// none does within max_steps.
inline std::optional<int> steps_to_pole(const ExceptionalRoot& r, int max_steps)
{
    BigRational lo = r.lo.to_rational();
    BigRational hi = r.hi.to_rational();
    auto phi = [](const BigRational& x) { return (x * x - 1) / (2 * x); };
    for (int step = 0; step <= max_steps; ++step) {
        if (lo <= 0 && hi >= 0)
            return step;
        lo = phi(lo);
        hi = phi(hi);
    }
    return std::nullopt;
}

} // namespace boole
