#pragma once

#include "chute/swe.hpp"
#include "chute/types.hpp"

namespace chute {

enum class WaveKind { Shock, Rarefaction, None };

/// One wave of a Riemann fan. For a shock speed_lo == speed_hi is the
/// Rankine-Hugoniot speed; for a rarefaction the range spans the
/// characteristic speeds of its edge states; a zero-strength wave carries
/// the eigenvalue of the (common) state on both ends.
struct Wave {
    WaveFamily family = WaveFamily::One;
    WaveKind kind = WaveKind::None;
    State left_state;
    State right_state;
    double speed_lo = 0.0; // [m/s]
    double speed_hi = 0.0; // [m/s]
};

/// Self-similar solution of the standard two-state Riemann problem:
/// a 1-family wave, a constant middle state, and a 2-family wave.
struct RiemannFan {
    State left;
    State middle;
    State right;
    Wave wave1;
    Wave wave2;
};

/// Exact Lax solution of the Riemann problem with data (left | right).
/// The middle depth is the unique intersection of the forward 1-curve
/// through `left` with the reversed 2-curve through `right`, found by
/// bracketed bisection refined with Newton steps.
///
/// Throws VacuumError when the curves fail to intersect at positive depth
/// (v_r - v_l >= 2(c_l + c_r)), DryStateError on dry input.
RiemannFan solve_riemann(const State& left, const State& right, Gravity g);

/// State of the fan at similarity coordinate xi = x/t. Total in xi; at a
/// shock speed the downstream side is returned.
State sample(const RiemannFan& fan, double xi, Gravity g);

/// Godunov interface flux: conservative flux of the fan sampled at xi = 0.
FluxPair godunov_flux(const State& left, const State& right, Gravity g);

} // namespace chute
