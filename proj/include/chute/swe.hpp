#pragma once

#include <array>
#include <utility>

#include "chute/types.hpp"

namespace chute {

/// Conservative flux (h*v, h*v^2 + g*h^2/2) evaluated at a wet state.
FluxPair flux(const State& s, Gravity g);

/// Characteristic speeds (v - sqrt(g*h), v + sqrt(g*h)).
std::pair<double, double> eigenvalues(const State& s, Gravity g);

struct Eigenvectors {
    std::array<double, 2> r1; // (-1, -v + sqrt(g*h))
    std::array<double, 2> r2; // ( 1,  v + sqrt(g*h))
};

/// Right eigenvectors of the flux Jacobian in conservative variables.
/// Informational; not used by the solvers.
Eigenvectors eigenvectors(const State& s, Gravity g);

/// Classify |v| against sqrt(g*h). The sonic boundary is detected within a
/// relative tolerance so the classification is stable under round-off.
FlowRegime regime(const State& s, Gravity g);

enum class WaveFamily { One = 1, Two = 2 };
enum class CurveDirection { Forward, Reversed };

/// Velocity on the wave curve of the given family through `anchor`,
/// evaluated at depth `h`.
///
/// Forward curves parameterize the states reachable from the anchor across
/// a single admissible wave placed to the anchor's right; reversed curves
/// parameterize the states from which the anchor is reachable. Each curve is
/// a rarefaction branch (Riemann invariant) glued to a shock branch
/// (Rankine-Hugoniot) at h = anchor.h:
///
///   family 1, forward:  v = v0 - 2(sqrt(g h) - sqrt(g h0))          h <= h0
///                       v = v0 - (h - h0) sqrt(g (h + h0)/(2 h h0)) h >  h0
///
/// family 2 carries "+" in place of "-", and reversing a curve swaps its
/// branch inequalities.
double lax_curve(WaveFamily family, CurveDirection direction, double h,
                 const State& anchor, Gravity g);

/// dv/dh of lax_curve at depth h (branch-wise analytic derivative).
double lax_curve_slope(WaveFamily family, CurveDirection direction, double h,
                       const State& anchor, Gravity g);

} // namespace chute
