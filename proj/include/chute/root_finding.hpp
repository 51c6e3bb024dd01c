#pragma once

#include <algorithm>
#include <cmath>

#include "chute/errors.hpp"

namespace chute {

/// Grow `hi` geometrically until f(hi) <= 0. `f` must be (eventually)
/// decreasing. Returns the grown bound.
template <class F>
double expand_upper_bracket(F&& f, double hi, int max_doublings = 200) {
    for (int i = 0; i < max_doublings; ++i) {
        if (f(hi) <= 0.0) return hi;
        hi *= 2.0;
    }
    throw NumericalError("expand_upper_bracket: no sign change found");
}

/// Bisection on a decreasing function with f(lo) >= 0 >= f(hi). `lo` may be
/// 0 with the sign taken on faith; f is then never evaluated there.
/// Converges to |hi - lo| <= rel_tol * max(1, hi).
template <class F>
double bisect(F&& f, double lo, double hi, double rel_tol, int max_iter = 300) {
    for (int i = 0; i < max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // interval no longer splittable
        if (f(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= rel_tol * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

/// Bracketed bisection refined by Newton steps: a Newton iterate is accepted
/// only while it stays strictly inside the current bracket, otherwise the
/// step falls back to the midpoint. `f` decreasing, f(lo) >= 0 >= f(hi),
/// `x0` an initial guess. Converges when |dx| <= rel_tol * max(1, x).
template <class F, class DF>
double newton_bisect(F&& f, DF&& df, double lo, double hi, double x0,
                     double rel_tol, int max_iter = 200) {
    double x = std::clamp(x0, std::nextafter(lo, hi), std::nextafter(hi, lo));
    for (int i = 0; i < max_iter; ++i) {
        const double fx = f(x);
        if (fx > 0.0)
            lo = x;
        else
            hi = x;
        const double d = df(x);
        double next = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double dx = std::abs(next - x);
        x = next;
        if (dx <= rel_tol * std::max(1.0, std::abs(x))) return x;
        if (hi - lo <= rel_tol * std::max(1.0, hi)) return 0.5 * (lo + hi);
    }
    throw NumericalError("newton_bisect: iteration did not converge");
}

} // namespace chute
