#pragma once

// Dense univariate polynomials with arbitrary-precision integer coefficients,
// and Descartes-rule real root isolation (Vincent-Collins-Akritas bisection).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace boole {

using BigInt = boost::multiprecision::mpz_int;
using BigRational = boost::multiprecision::mpq_rational;

/// Dyadic rational num * 2^exp. Exact, cheap to bisect.
struct Dyadic {
    BigInt num;
    long exp = 0;

    [[nodiscard]] BigRational to_rational() const
    {
        if (exp >= 0)
            return BigRational(BigInt(num << exp));
        return BigRational(num, BigInt(1) << static_cast<unsigned>(-exp));
    }

    [[nodiscard]] double to_double() const { return to_rational().convert_to<double>(); }

    /// (lo + hi) / 2 with a common exponent.
    [[nodiscard]] static Dyadic midpoint(const Dyadic& lo, const Dyadic& hi)
    {
        const long e = std::min(lo.exp, hi.exp);
        BigInt s = (lo.num << static_cast<unsigned>(lo.exp - e)) + (hi.num << static_cast<unsigned>(hi.exp - e));
        return normalize({std::move(s), e - 1});
    }

    [[nodiscard]] static Dyadic normalize(Dyadic d)
    {
        if (d.num == 0)
            return {BigInt(0), 0};
        const unsigned tz = boost::multiprecision::lsb(boost::multiprecision::abs(d.num));
        d.num >>= tz;
        d.exp += static_cast<long>(tz);
        return d;
    }

    friend bool operator<(const Dyadic& x, const Dyadic& y)
    {
        const long e = std::min(x.exp, y.exp);
        return (x.num << static_cast<unsigned>(x.exp - e)) < (y.num << static_cast<unsigned>(y.exp - e));
    }
};

/// Integer polynomial, coefficient i multiplies x^i. The zero polynomial has no coefficients.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<long long> coeffs)
    {
        for (long long v : coeffs)
            c_.emplace_back(v);
        trim();
    }

    /// Degree; -1 for the zero polynomial.
    [[nodiscard]] long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
    [[nodiscard]] const std::vector<BigInt>& coefficients() const noexcept { return c_; }
    [[nodiscard]] BigInt coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }

    friend IntPoly operator+(const IntPoly& p, const IntPoly& q)
    {
        std::vector<BigInt> r(std::max(p.c_.size(), q.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = p.coefficient(i) + q.coefficient(i);
        return IntPoly(std::move(r));
    }

    friend IntPoly operator-(const IntPoly& p, const IntPoly& q)
    {
        std::vector<BigInt> r(std::max(p.c_.size(), q.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = p.coefficient(i) - q.coefficient(i);
        return IntPoly(std::move(r));
    }

    friend IntPoly operator*(const IntPoly& p, const IntPoly& q)
    {
        if (p.is_zero() || q.is_zero())
            return {};
        std::vector<BigInt> r(p.c_.size() + q.c_.size() - 1);
        for (std::size_t i = 0; i < p.c_.size(); ++i) {
            if (p.c_[i] == 0)
                continue;
            for (std::size_t j = 0; j < q.c_.size(); ++j)
                r[i + j] += p.c_[i] * q.c_[j];
        }
        return IntPoly(std::move(r));
    }

    friend IntPoly operator*(long long s, const IntPoly& p)
    {
        std::vector<BigInt> r = p.c_;
        for (auto& v : r)
            v *= s;
        return IntPoly(std::move(r));
    }

    friend bool operator==(const IntPoly&, const IntPoly&) = default;

    /// Floating evaluation by Horner; coefficients are rounded to double first.
    [[nodiscard]] double operator()(double x) const
    {
        double r = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            r = r * x + it->convert_to<double>();
        return r;
    }

    /// Exact value at a rational.
    [[nodiscard]] BigRational eval(const BigRational& x) const
    {
        BigRational r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            r = r * x + BigRational(*it);
        return r;
    }

    /// Exact sign (-1, 0, 1) at a dyadic rational, in integer arithmetic only.
    [[nodiscard]] int sign_at(const Dyadic& x) const
    {
        if (c_.empty())
            return 0;
        BigInt r;
        if (x.exp >= 0) {
            const BigInt v = x.num << static_cast<unsigned>(x.exp);
            r = c_.back();
            for (std::size_t i = c_.size() - 1; i-- > 0;)
                r = r * v + c_[i];
        } else {
            // sum_i c_i num^i 2^{s(d-i)}, s = -exp
            const unsigned s = static_cast<unsigned>(-x.exp);
            r = c_.back();
            for (std::size_t i = c_.size() - 1, k = 1; i-- > 0; ++k)
                r = r * x.num + (c_[i] << (s * k));
        }
        return r.sign();
    }

    [[nodiscard]] std::string to_string() const
    {
        if (c_.empty())
            return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0)
                continue;
            BigInt v = c_[i];
            if (!out.empty())
                out += v < 0 ? " - " : " + ";
            else if (v < 0)
                out += "-";
            v = boost::multiprecision::abs(v);
            if (v != 1 || i == 0)
                out += v.str();
            if (i >= 1)
                out += "x";
            if (i >= 2)
                out += "^" + std::to_string(i);
        }
        return out;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }

    std::vector<BigInt> c_;
};

namespace detail {

inline std::size_t sign_variations(const std::vector<BigInt>& c)
{
    std::size_t v = 0;
    int last = 0;
    for (const auto& x : c) {
        const int s = x.sign();
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++v;
        last = s;
    }
    return v;
}

/// In place p(x) -> p(x + 1).
inline void taylor_shift_one(std::vector<BigInt>& c)
{
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;)
            c[j] += c[j + 1];
}

/// Descartes bound on the number of roots of p in the open interval (0, 1).
inline std::size_t variations_on_unit_interval(const std::vector<BigInt>& c)
{
    // (x+1)^d p(1/(x+1)): reverse, then shift by one.
    std::vector<BigInt> r(c.rbegin(), c.rend());
    taylor_shift_one(r);
    return sign_variations(r);
}

/// p(x) -> 2^d p(x/2), which maps the left half of (0,1) onto (0,1).
inline std::vector<BigInt> halve(const std::vector<BigInt>& c)
{
    const std::size_t d = c.size() - 1;
    std::vector<BigInt> r(c.size());
    for (std::size_t i = 0; i <= d; ++i)
        r[i] = c[i] << static_cast<unsigned>(d - i);
    return r;
}

} // namespace detail

/// One isolated real root: an exact dyadic interval containing exactly one
/// root, or a degenerate interval (lo == hi) for an exactly representable root.
struct IsolatedRoot {
    Dyadic lo;
    Dyadic hi;
    [[nodiscard]] bool exact() const { return lo.num == hi.num && lo.exp == hi.exp; }
};

/// Isolate the positive real roots of a squarefree integer polynomial with p(0) != 0.
///
/// Roots are scaled into (0,1) by a power-of-two Fujiwara bound, then the unit
/// interval is bisected until every piece has zero or one Descartes sign variation.
/// Returned intervals are open (lo, hi), sorted, and pairwise disjoint.
inline std::vector<IsolatedRoot> isolate_positive_roots(const IntPoly& p)
{
    std::vector<IsolatedRoot> roots;
    if (p.degree() < 1)
        return roots;
    const auto& coeffs = p.coefficients();

    // Fujiwara bound 2 max_i |c_{d-i}/c_d|^{1/i} <= 2^m, from bit lengths.
    const std::size_t d = coeffs.size() - 1;
    const long lead_bits = static_cast<long>(boost::multiprecision::msb(boost::multiprecision::abs(coeffs.back())));
    long m = 1;
    for (std::size_t i = 1; i <= d; ++i) {
        const BigInt& ci = coeffs[d - i];
        if (ci == 0)
            continue;
        const long num_bits = static_cast<long>(boost::multiprecision::msb(boost::multiprecision::abs(ci))) + 1;
        const long ii = static_cast<long>(i);
        const long excess = num_bits - lead_bits;
        const long e = excess > 0 ? (excess + ii - 1) / ii : 0;
        m = std::max(m, e + 1);
    }

    // q(y) = p(2^m y)
    std::vector<BigInt> q(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        q[i] = coeffs[i] << static_cast<unsigned>(m * static_cast<long>(i));

    struct Node {
        std::vector<BigInt> poly; // roots of poly in (0,1) <-> roots in (c/2^j, (c+1)/2^j)
        BigInt c;
        long j;
    };
    std::vector<Node> stack;
    stack.push_back({std::move(q), BigInt(0), 0});

    auto to_x = [m](const BigInt& num, long j) { return Dyadic::normalize({num, m - j}); };

    while (!stack.empty()) {
        Node node = std::move(stack.back());
        stack.pop_back();
        const std::size_t v = detail::variations_on_unit_interval(node.poly);
        if (v == 0)
            continue;
        if (v == 1) {
            roots.push_back({to_x(node.c, node.j), to_x(node.c + 1, node.j)});
            continue;
        }
        std::vector<BigInt> left = detail::halve(node.poly);
        std::vector<BigInt> right = left;
        detail::taylor_shift_one(right);
        const BigInt c2 = node.c * 2;
        const long j2 = node.j + 1;
        if (right.front() == 0) {
            // exact root at the midpoint; divide it out of the right child
            roots.push_back({to_x(c2 + 1, j2), to_x(c2 + 1, j2)});
            right.erase(right.begin());
        }
        if (right.size() > 1)
            stack.push_back({std::move(right), c2 + 1, j2});
        stack.push_back({std::move(left), c2, j2});
    }

    std::sort(roots.begin(), roots.end(), [](const IsolatedRoot& x, const IsolatedRoot& y) { return x.lo < y.lo; });
    return roots;
}

/// Bisect an isolating interval of a simple root until hi - lo <= 2^-bits * max(|lo|, |hi|).
inline IsolatedRoot refine_root(const IntPoly& p, IsolatedRoot r, int bits = 60)
{
    if (r.exact())
        return r;
    int s_lo = p.sign_at(r.lo);
    for (int iter = 0; iter < 4 * bits + 64; ++iter) {
        // width test: (hi - lo) * 2^bits <= max(|lo|, |hi|)
        const long e = std::min(r.lo.exp, r.hi.exp);
        const BigInt lo = r.lo.num << static_cast<unsigned>(r.lo.exp - e);
        const BigInt hi = r.hi.num << static_cast<unsigned>(r.hi.exp - e);
        const BigInt mag = std::max(BigInt(boost::multiprecision::abs(lo)), BigInt(boost::multiprecision::abs(hi)));
        if (BigInt((hi - lo) << static_cast<unsigned>(bits)) <= mag)
            break;
        Dyadic mid = Dyadic::midpoint(r.lo, r.hi);
        const int s_mid = p.sign_at(mid);
        if (s_mid == 0)
            return {mid, mid};
        if (s_mid == s_lo)
            r.lo = std::move(mid);
        else
            r.hi = std::move(mid);
    }
    return r;
}

} // namespace boole
