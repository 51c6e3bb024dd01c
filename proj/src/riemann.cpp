#include "chute/riemann.hpp"

#include <algorithm>
#include <cmath>

#include "chute/root_finding.hpp"

namespace chute {

namespace {

// Waves whose depth jump is below this (relative) threshold are reported as
// zero-strength; a Rankine-Hugoniot quotient over such a jump is pure noise.
constexpr double kZeroWaveTol = 1e-11;

void require_wet(const State& s, const char* op) {
    if (is_dry(s))
        throw DryStateError(std::string(op) + ": dry state (h <= 1e-12)");
}

Wave make_wave(WaveFamily family, const State& up, const State& down, Gravity g) {
    Wave w;
    w.family = family;
    w.left_state = up;
    w.right_state = down;

    // Downstream-of-wave depth exceeding the upstream one means compression.
    const double h_ahead = (family == WaveFamily::One) ? up.h : down.h;
    const double h_behind = (family == WaveFamily::One) ? down.h : up.h;

    if (std::abs(down.h - up.h) <= kZeroWaveTol * std::max({1.0, up.h, down.h})) {
        w.kind = WaveKind::None;
        const auto [l1, l2] = eigenvalues(up, g);
        w.speed_lo = w.speed_hi = (family == WaveFamily::One) ? l1 : l2;
        return w;
    }

    if (h_behind > h_ahead) {
        w.kind = WaveKind::Shock;
        const double sigma =
            (down.discharge() - up.discharge()) / (down.h - up.h);
        w.speed_lo = w.speed_hi = sigma;
        return w;
    }

    w.kind = WaveKind::Rarefaction;
    const auto [ul1, ul2] = eigenvalues(up, g);
    const auto [dl1, dl2] = eigenvalues(down, g);
    if (family == WaveFamily::One) {
        w.speed_lo = ul1;
        w.speed_hi = dl1;
    } else {
        w.speed_lo = ul2;
        w.speed_hi = dl2;
    }
    return w;
}

// Interior state of a 1-rarefaction at similarity coordinate xi, anchored at
// the state left of the fan: v - sqrt(g h) = xi, v + 2 sqrt(g h) invariant.
State rarefaction1_interior(const State& left, double xi, Gravity g) {
    const double c = (left.v + 2.0 * g.celerity(left.h) - xi) / 3.0;
    return {c * c / g.g(), xi + c};
}

// Interior of a 2-rarefaction anchored at the state right of the fan.
State rarefaction2_interior(const State& right, double xi, Gravity g) {
    const double c = (xi - right.v + 2.0 * g.celerity(right.h)) / 3.0;
    return {c * c / g.g(), xi - c};
}

} // namespace

RiemannFan solve_riemann(const State& left, const State& right, Gravity g) {
    require_wet(left, "solve_riemann");
    require_wet(right, "solve_riemann");

    RiemannFan fan;
    fan.left = left;
    fan.right = right;

    if (left == right) {
        fan.middle = left;
        fan.wave1 = make_wave(WaveFamily::One, left, left, g);
        fan.wave2 = make_wave(WaveFamily::Two, right, right, g);
        return fan;
    }

    const double cl = g.celerity(left.h);
    const double cr = g.celerity(right.h);
    if ((right.v - left.v) - 2.0 * (cl + cr) >= 0.0)
        throw VacuumError("solve_riemann: data opens a vacuum");

    auto f = [&](double h) {
        return lax_curve(WaveFamily::One, CurveDirection::Forward, h, left, g) -
               lax_curve(WaveFamily::Two, CurveDirection::Reversed, h, right, g);
    };
    auto df = [&](double h) {
        return lax_curve_slope(WaveFamily::One, CurveDirection::Forward, h, left, g) -
               lax_curve_slope(WaveFamily::Two, CurveDirection::Reversed, h, right, g);
    };

    const double hi0 = 10.0 * std::max(left.h, right.h);
    const double hi = expand_upper_bracket(f, hi0);

    // Two-rarefaction estimate, switched to the two-shock one when it lands
    // above both data depths (Toro's starting values).
    double guess = 0.5 * (cl + cr) - 0.25 * (right.v - left.v);
    guess = guess * guess / g.g();
    if (guess > std::min(left.h, right.h)) {
        const double gel = std::sqrt(0.5 * g.g() * (guess + left.h) / (guess * left.h));
        const double ger = std::sqrt(0.5 * g.g() * (guess + right.h) / (guess * right.h));
        guess = (gel * left.h + ger * right.h - (right.v - left.v)) / (gel + ger);
    }

    const double hm = newton_bisect(f, df, 0.0, hi, guess, 1e-12);
    const double vm =
        0.5 * (lax_curve(WaveFamily::One, CurveDirection::Forward, hm, left, g) +
               lax_curve(WaveFamily::Two, CurveDirection::Reversed, hm, right, g));

    fan.middle = {hm, vm};
    fan.wave1 = make_wave(WaveFamily::One, left, fan.middle, g);
    fan.wave2 = make_wave(WaveFamily::Two, fan.middle, right, g);
    return fan;
}

State sample(const RiemannFan& fan, double xi, Gravity g) {
    if (xi < fan.wave1.speed_lo) return fan.left;
    if (xi <= fan.wave1.speed_hi) {
        if (fan.wave1.kind == WaveKind::Rarefaction)
            return rarefaction1_interior(fan.left, xi, g);
        return fan.middle; // at a shock speed take the downstream side
    }
    if (xi < fan.wave2.speed_lo) return fan.middle;
    if (xi <= fan.wave2.speed_hi) {
        if (fan.wave2.kind == WaveKind::Rarefaction)
            return rarefaction2_interior(fan.right, xi, g);
        return fan.right;
    }
    return fan.right;
}

FluxPair godunov_flux(const State& left, const State& right, Gravity g) {
    if (left == right) return flux(left, g);
    return flux(sample(solve_riemann(left, right, g), 0.0, g), g);
}

} // namespace chute
