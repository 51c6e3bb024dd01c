#pragma once

#include <cmath>

#include "chute/errors.hpp"

namespace chute {

/// Depths at or below this value are treated as dry and rejected by the
/// solvers rather than regularized.
inline constexpr double kDryDepth = 1e-12; // [m]

/// Water column state at a point: depth and depth-averaged velocity.
/// The conservative pair is (h, q = h*v); q is always derived, never stored.
struct State {
    double h = 0.0; // water depth [m], >= 0
    double v = 0.0; // velocity [m/s], positive = rightward

    double discharge() const { return h * v; } // q = h*v [m^2/s]

    bool operator==(const State&) const = default;
};

inline bool is_dry(const State& s) { return s.h <= kDryDepth; }

/// Gravitational acceleration, constant for the lifetime of a scenario.
class Gravity {
public:
    Gravity() = default;

    explicit Gravity(double g) : g_(g) {
        if (!(g > 0.0))
            throw DomainError("Gravity: acceleration must be positive");
    }

    double g() const { return g_; }

    /// Wave celerity c = sqrt(g*h).
    double celerity(double h) const { return std::sqrt(g_ * h); }

private:
    double g_ = 9.81; // [m/s^2]
};

/// Position of a state relative to the critical curves |v| = sqrt(g*h).
enum class FlowRegime {
    SubsonicInterior, //!< |v| <  sqrt(g*h)
    SonicBoundary,    //!< |v| == sqrt(g*h) within tolerance
    SupersonicUpper,  //!< v >  sqrt(g*h)
    SupersonicLower   //!< v < -sqrt(g*h)
};

/// Conservative flux of the shallow-water system: (h*v, h*v^2 + g*h^2/2).
struct FluxPair {
    double mass = 0.0;     // [m^2/s]
    double momentum = 0.0; // [m^3/s^2]
};

/// Side of an interface (weir crest, canal boundary).
enum class Side { Left, Right };

} // namespace chute
