// Test-only reference solvers, written independently of the library path
// they check: plain bisection for the classic middle state and a nested
// bisection for the weir trace pair, with their own copies of the wave-curve
// formulas.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracle {

struct TwoStates {
    double hl, vl, hr, vr;
};

// velocity on the forward 1-curve through (h0, v0)
inline double curve1(double h, double h0, double v0, double g) {
    if (h <= h0) return v0 - 2.0 * (std::sqrt(g * h) - std::sqrt(g * h0));
    return v0 - (h - h0) * std::sqrt(0.5 * g * (h + h0) / (h * h0));
}

// velocity on the reversed 2-curve through (h0, v0)
inline double curve2r(double h, double h0, double v0, double g) {
    if (h <= h0) return v0 + 2.0 * (std::sqrt(g * h) - std::sqrt(g * h0));
    return v0 + (h - h0) * std::sqrt(0.5 * g * (h + h0) / (h * h0));
}

// Plain bisection over h in [1e-8, h_max] for the classic Riemann middle
// depth; h_max is doubled until the sign changes.
inline double middle_depth(double hl, double vl, double hr, double vr, double g) {
    auto f = [&](double h) { return curve1(h, hl, vl, g) - curve2r(h, hr, vr, g); };
    double lo = 1e-8;
    double hi = 10.0 * std::max(hl, hr);
    int guard = 0;
    while (f(hi) > 0.0) {
        hi *= 2.0;
        if (++guard > 200) throw std::runtime_error("oracle: no upper bracket");
    }
    if (f(lo) < 0.0) lo = 1e-300; // middle below 1e-8; keep the sign assumption
    for (int i = 0; i < 220; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct WeirTracesRef {
    double k_star, w_star; // left trace depth, velocity
    double k, w;           // right trace depth, velocity
};

// Nested bisection for the weir trace pair: the outer loop scans the left
// trace depth a along the 1-curve (on its flux-decreasing branch), the inner
// loop matches the right depth b on the admissible branch of the reversed
// 2-curve so both carry the flux q(a), and the outer residual is the
// discharge law. Both loops are monotone.
inline WeirTracesRef weir_traces(double hl, double vl, double hr, double vr,
                                 double h_minus, double h_plus, double c_tilde,
                                 double g) {
    const double c = c_tilde * std::sqrt(g);
    const double cl = std::sqrt(g * hl);
    const double a_sonic_c = (vl + 2.0 * cl) / 3.0;
    const double a_sonic = a_sonic_c * a_sonic_c / g;

    const double b_sonic_c = std::max((2.0 * std::sqrt(g * hr) - vr) / 3.0, 0.0);
    const double b_min = std::max(b_sonic_c * b_sonic_c / g, 1e-300);

    auto flux2 = [&](double b) { return b * curve2r(b, hr, vr, g); };
    const double flux2_min = flux2(b_min);

    auto inner_b = [&](double q) {
        if (q <= flux2_min) return b_min;
        double lo = b_min;
        double hi = std::max({2.0 * b_min, hr, 1.0});
        int guard = 0;
        while (flux2(hi) < q) {
            hi *= 2.0;
            if (++guard > 200) throw std::runtime_error("oracle: inner bracket");
        }
        for (int i = 0; i < 220; ++i) {
            const double mid = 0.5 * (lo + hi);
            (flux2(mid) < q ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };

    auto residual = [&](double a) {
        const double q = a * curve1(a, hl, vl, g);
        const double b = inner_b(q);
        const double d = std::max(a - h_minus, 0.0) - std::max(b - h_plus, 0.0);
        const double sgn = (d > 0.0) - (d < 0.0);
        return q - c * sgn * std::pow(std::abs(d), 1.5);
    };

    double lo = a_sonic * (1.0 + 1e-14);
    double hi = std::max({2.0 * lo, hl, h_minus + 1.0});
    if (residual(lo) < 0.0) throw std::runtime_error("oracle: W(a_sonic) < 0");
    int guard = 0;
    while (residual(hi) > 0.0) {
        hi *= 2.0;
        if (++guard > 200) throw std::runtime_error("oracle: outer bracket");
    }
    for (int i = 0; i < 220; ++i) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) > 0.0 ? lo : hi) = mid;
    }
    const double a = 0.5 * (lo + hi);
    const double w_star = curve1(a, hl, vl, g);
    const double b = inner_b(a * w_star);
    return {a, w_star, b, a * w_star / b};
}

} // namespace oracle
