#include "chute/swe.hpp"

#include <cmath>

namespace chute {

namespace {

// Relative tolerance for detecting the sonic boundary |v| = sqrt(g*h).
constexpr double kSonicTol = 1e-9;

void require_wet(const State& s, const char* op) {
    if (is_dry(s))
        throw DryStateError(std::string(op) + ": dry state (h <= 1e-12)");
}

// Slope of the shock branch, sqrt(g (h + h0) / (2 h h0)).
double shock_chord(double h, double h0, double g) {
    return std::sqrt(0.5 * g * (h + h0) / (h * h0));
}

} // namespace

FluxPair flux(const State& s, Gravity g) {
    require_wet(s, "flux");
    return {s.h * s.v, s.h * s.v * s.v + 0.5 * g.g() * s.h * s.h};
}

std::pair<double, double> eigenvalues(const State& s, Gravity g) {
    require_wet(s, "eigenvalues");
    const double c = g.celerity(s.h);
    return {s.v - c, s.v + c};
}

Eigenvectors eigenvectors(const State& s, Gravity g) {
    require_wet(s, "eigenvectors");
    const double c = g.celerity(s.h);
    return {{-1.0, -s.v + c}, {1.0, s.v + c}};
}

FlowRegime regime(const State& s, Gravity g) {
    require_wet(s, "regime");
    const double c = g.celerity(s.h);
    if (std::abs(std::abs(s.v) - c) <= kSonicTol * std::max(1.0, c))
        return FlowRegime::SonicBoundary;
    if (s.v > c) return FlowRegime::SupersonicUpper;
    if (s.v < -c) return FlowRegime::SupersonicLower;
    return FlowRegime::SubsonicInterior;
}

double lax_curve(WaveFamily family, CurveDirection direction, double h,
                 const State& anchor, Gravity g) {
    if (!(h > 0.0))
        throw DomainError("lax_curve: depth must be positive");
    require_wet(anchor, "lax_curve");

    const double h0 = anchor.h;
    const double v0 = anchor.v;
    const double sign = (family == WaveFamily::One) ? -1.0 : 1.0;

    // Rarefaction branch: family 1 forward on h <= h0, family 2 forward on
    // h >= h0; reversing swaps the inequality.
    bool rarefaction = (family == WaveFamily::One) ? (h <= h0) : (h >= h0);
    if (direction == CurveDirection::Reversed) rarefaction = !rarefaction || h == h0;

    if (rarefaction)
        return v0 + sign * 2.0 * (g.celerity(h) - g.celerity(h0));
    return v0 + sign * (h - h0) * shock_chord(h, h0, g.g());
}

double lax_curve_slope(WaveFamily family, CurveDirection direction, double h,
                       const State& anchor, Gravity g) {
    if (!(h > 0.0))
        throw DomainError("lax_curve_slope: depth must be positive");
    require_wet(anchor, "lax_curve_slope");

    const double h0 = anchor.h;
    const double sign = (family == WaveFamily::One) ? -1.0 : 1.0;

    bool rarefaction = (family == WaveFamily::One) ? (h <= h0) : (h >= h0);
    if (direction == CurveDirection::Reversed) rarefaction = !rarefaction || h == h0;

    if (rarefaction)
        return sign * std::sqrt(g.g() / h);
    const double s = shock_chord(h, h0, g.g());
    const double ds = -g.g() / (4.0 * s * h * h);
    return sign * (s + (h - h0) * ds);
}

} // namespace chute
