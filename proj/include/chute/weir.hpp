#pragma once

#include <string_view>
#include <utility>

#include "chute/riemann.hpp"
#include "chute/types.hpp"

namespace chute {

/// Geometry and discharge law of one weir. Crest heights are measured from
/// the bottoms of the adjacent canals; the discharge coefficient is
/// C = c_tilde * sqrt(g) with c_tilde in (0, 1].
class WeirGeometry {
public:
    WeirGeometry(double crest_left, double crest_right, Gravity gravity = Gravity{},
                 double c_tilde = 0.6);

    double crest_left() const { return crest_left_; }   // H^- [m]
    double crest_right() const { return crest_right_; } // H^+ [m]
    double c_tilde() const { return c_tilde_; }
    double discharge_coefficient() const { return c_; } // C [m^{1/2}/s]
    Gravity gravity() const { return gravity_; }

private:
    double crest_left_;
    double crest_right_;
    double c_tilde_;
    double c_;
    Gravity gravity_;
};

/// The ten sets partitioning the (h, h*v) half-plane on either side of the
/// weir. Left-side states are measured against H^-, right-side against H^+:
///
///   Omega_u : hv >  C [h - H^-]_+^{3/2}   (flux too large; not connectable)
///   Gamma_u : hv == C [h - H^-]_+^{3/2}   (critical overflow curve)
///   A^-     : 0 < hv < C [h - H^-]_+^{3/2}
///   B^-     : v <= 0, h > H^-
///   Sigma_l : v < 0, h <= H^-
///
/// and mirrored on the right side: Omega_l below -C [h - H^+]_+^{3/2},
/// Gamma_l on it, B^+ between it and zero flux, A^+ at positive flux above
/// the crest, Sigma_u at positive flux at or below it.
enum class RegionLabel {
    OmegaU,
    GammaU,
    AMinus,
    BMinus,
    SigmaL,
    OmegaL,
    GammaL,
    APlus,
    BPlus,
    SigmaU
};

std::string_view to_string(RegionLabel label);

/// One-sided limits (h, v)(t, 0-) and (h, v)(t, 0+) at the weir. By
/// construction the two traces carry the same mass flux and satisfy the
/// 3/2-law coupling condition.
struct WeirTraces {
    State left_trace;  // (k*, w*)
    State right_trace; // (k, w)
};

/// Solution of the Riemann problem at the weir: a 1-family fan with
/// nonpositive speeds in x < 0, the coupled trace pair at x = 0, and a
/// 2-family fan with nonnegative speeds in x > 0.
struct WeirRiemannSolution {
    RiemannFan left_fan;
    WeirTraces traces;
    RiemannFan right_fan;
};

enum class FlowDirection { None, LeftToRight, RightToLeft };

/// Residual of the coupling conditions for a candidate trace pair:
///   r1 = h^- v^- - C sign(D) |D|^{3/2},  D = [h^- - H^-]_+ - [h^+ - H^+]_+
///   r2 = h^+ v^+ - h^- v^-
/// Both vanish exactly when the pair is coupled.
std::pair<double, double> coupling_residual(const State& left, const State& right,
                                            const WeirGeometry& w);

/// Classify a trace state into its region. States within tolerance of the
/// critical curve are tie-broken onto the curve label; in particular v = 0
/// at or below the crest is the zero-flux point of the curve.
RegionLabel classify(const State& s, Side side, const WeirGeometry& w);

/// Critical overflow flux C [h - crest]_+^{3/2} (the Gamma_u flux; the
/// right-side curve Gamma_l carries its negation).
double gamma_flux(double h, double crest, const WeirGeometry& w);

/// The unique right trace coupled to a left state in A^- u B^-:
///
///   Phi(h, hv) = (H^+ + h - H^- - (h|v|/C)^{2/3} sign v, hv)
///
/// extended on Sigma_l by Phi(h, hv) = ((-v h / C)^{2/3} + H^+, hv), which
/// lands on Gamma_l. The flux component is carried over unchanged, so the
/// coupling residual of (s, phi(s)) vanishes identically.
///
/// Throws DomainError for states strictly above the critical curve (Omega_u)
/// or when the computed right depth is nonpositive. States on the curve
/// itself are accepted and map to its continuous boundary value (depth H^+
/// above the crest), which the connecting curve relies on at its kink.
State phi(const State& s, const WeirGeometry& w);

/// Intersection (h*, v*) of the forward 1-curve through `left` with the
/// critical overflow curve. The 1-curve velocity is strictly decreasing and
/// the curve velocity nondecreasing in h, so the intersection is unique;
/// it is found by bracketed bisection polished with Newton steps.
State gamma_u_intersection(const State& left, const WeirGeometry& w);

/// The nonincreasing connecting curve gamma(h) = (right depth, shared flux)
/// built from the left state and its critical intersection (h*, v*):
///
///   gamma(h) = ((H^+/h*) h, h* v*)                      h <= h*
///   gamma(h) = Phi(h, h L1+(h; left))                   h >  h*
///
/// For h <= h* the left trace is pinned at (h*, v*) and the right trace
/// slides along the constant-flux segment; beyond h* both traces follow the
/// 1-curve through Phi.
std::pair<double, double> connect_curve(double h, const State& left,
                                        const WeirGeometry& w, double h_star,
                                        double v_star);

/// Trace pair of the weir Riemann problem via the curve construction:
/// intersect the connecting curve with the reversed 2-curve through `right`
/// (restricted to its flux-increasing branch) by bisection, then read both
/// traces off the construction. No admissibility gate on the inputs; see
/// solve_weir_riemann for the subsonic-checked variant.
WeirTraces solve_weir_traces(const State& left, const State& right,
                             const WeirGeometry& w);

/// Full solution of the Riemann problem at the weir for subsonic data:
/// the coupled trace pair plus the 1-family fan connecting `left` to the
/// left trace and the 2-family fan connecting the right trace to `right`.
/// Throws DomainError unless both states are strictly subsonic.
WeirRiemannSolution solve_weir_riemann(const State& left, const State& right,
                                       const WeirGeometry& w);

/// Direction of the overflow implied by the depths alone: None when both
/// levels are at or below their crests, otherwise the sign of
/// [h^- - H^-]_+ - [h^+ - H^+]_+.
FlowDirection flow_direction(const State& left, const State& right,
                             const WeirGeometry& w);

/// Sample the weir solution at xi = x/t (left fan for xi < 0, right fan for
/// xi >= 0).
State sample(const WeirRiemannSolution& sol, double xi, Gravity g);

} // namespace chute
