#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature with QUADPACK-style
// error estimation, plus half-line and real-line front ends.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "boole/errors.hpp"
#include "boole/kahan.hpp"

namespace boole {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t subdivisions = 0;
    bool converged = false;

    /// Sum of independent pieces; converged only if every piece converged.
    friend QuadratureResult operator+(const QuadratureResult& x, const QuadratureResult& y)
    {
        return {x.value + y.value, x.error_estimate + y.error_estimate, x.subdivisions + y.subdivisions,
                x.converged && y.converged};
    }
};

inline constexpr std::size_t kDefaultSubdivisionLimit = 2000;

namespace detail {

// 15-point Kronrod nodes on [-1, 1] (positive half, descending) and weights;
// odd indices are the 7-point Gauss nodes.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo = 0.0;
    double hi = 0.0;
    double value = 0.0;
    double error = 0.0;
    friend bool operator<(const Panel& x, const Panel& y) { return x.error < y.error; }
};

/// One GK15 panel. Never evaluates f at lo or hi.
template <class F>
Panel gk15(F& f, double lo, double hi)
{
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    const double fc = f(center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    std::array<double, 7> f1{}, f2{};
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const double s = f1[j] + f2[j];
        resk += kWgk[j] * s;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1)
            resg += kWg[j / 2] * s;
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double h = std::abs(half);
    double err = std::abs((resk - resg) * half);
    resasc *= h;
    resabs *= h;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > uflow / (50.0 * eps))
        err = std::max(50.0 * eps * resabs, err);
    return {lo, hi, resk * half, err};
}

} // namespace detail

/// Adaptive integral of f over (lo, hi) to absolute tolerance tol.
///
/// The panel with the largest error is bisected until the summed error
/// estimate drops below tol or max_subdivisions is spent. Endpoints are never
/// evaluated, so integrable endpoint singularities (log, 1/sqrt) are handled
/// by bisection toward them. The final sum runs over panels sorted by left
/// endpoint, which makes the value independent of refinement order.
template <class F>
QuadratureResult integrate_interval(F&& f, double lo, double hi, double tol,
                                    std::size_t max_subdivisions = kDefaultSubdivisionLimit)
{
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        throw DomainError("integrate_interval: need finite lo < hi");
    if (!(tol > 0.0))
        throw DomainError("integrate_interval: tol must be positive");

    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::priority_queue<detail::Panel> work;
    std::vector<detail::Panel> done; // panels too narrow to split further
    const detail::Panel first = detail::gk15(f, lo, hi);
    double total_error = first.error;
    work.push(first);
    std::size_t subdivisions = 0;

    while (total_error > tol && !work.empty() && subdivisions < max_subdivisions) {
        const detail::Panel p = work.top();
        work.pop();
        const double mid = 0.5 * (p.lo + p.hi);
        if (!(p.lo < mid && mid < p.hi) || (p.hi - p.lo) <= 4.0 * eps * std::max(std::abs(p.lo), std::abs(p.hi))) {
            done.push_back(p);
            continue;
        }
        const detail::Panel left = detail::gk15(f, p.lo, mid);
        const detail::Panel right = detail::gk15(f, mid, p.hi);
        total_error += left.error + right.error - p.error;
        work.push(left);
        work.push(right);
        ++subdivisions;
    }

    while (!work.empty()) {
        done.push_back(work.top());
        work.pop();
    }
    std::sort(done.begin(), done.end(), [](const detail::Panel& x, const detail::Panel& y) { return x.lo < y.lo; });
    KahanSum value;
    KahanSum error;
    for (const auto& p : done) {
        value += p.value;
        error += p.error;
    }
    const double err = error.value();
    return {value.value(), err, subdivisions, std::isfinite(value.value()) && err <= tol};
}

/// Integral of f over (0, inf): (0, split] directly, [split, inf) through x = split/u.
///
/// Both pieces live on a bounded interval; the substitution keeps the x <-> 1/x
/// structure of the integrands here well conditioned. Each piece gets tol/2.
template <class F>
QuadratureResult integrate_halfline(F&& f, double tol, double split = 1.0,
                                    std::size_t max_subdivisions = kDefaultSubdivisionLimit)
{
    if (!(split > 0.0) || !std::isfinite(split))
        throw DomainError("integrate_halfline: split point must be positive and finite");
    auto tail = [&f, split](double u) {
        const double x = split / u;
        const double v = f(x);
        return v == 0.0 ? 0.0 : v * split / (u * u);
    };
    return integrate_interval(f, 0.0, split, 0.5 * tol, max_subdivisions) +
           integrate_interval(tail, 0.0, 1.0, 0.5 * tol, max_subdivisions);
}

/// Integral of f over the real line, split at `center`, half-lines split at distance `scale`.
template <class F>
QuadratureResult integrate_real_line(F&& f, double tol, double center = 0.0, double scale = 1.0,
                                     std::size_t max_subdivisions = kDefaultSubdivisionLimit)
{
    auto right = [&f, center](double s) { return f(center + s); };
    auto left = [&f, center](double s) { return f(center - s); };
    return integrate_halfline(right, 0.5 * tol, scale, max_subdivisions) +
           integrate_halfline(left, 0.5 * tol, scale, max_subdivisions);
}

} // namespace boole
