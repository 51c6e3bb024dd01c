#include "chute/weir.hpp"

#include <algorithm>
#include <cmath>

#include "chute/root_finding.hpp"

namespace chute {

namespace {

// Relative half-width of the band classified onto the critical curves.
constexpr double kGammaTolRel = 1e-9;

void require_wet(const State& s, const char* op) {
    if (is_dry(s))
        throw DryStateError(std::string(op) + ": dry state (h <= 1e-12)");
}

double gamma_tol(double h, const WeirGeometry& w) {
    return kGammaTolRel *
           std::max(1.0, w.discharge_coefficient() * std::pow(h, 1.5));
}

double sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// Velocity form of the critical overflow curve, C [h - H]_+^{3/2} / h.
double gamma_velocity(double h, double crest, const WeirGeometry& w) {
    return gamma_flux(h, crest, w) / h;
}

double gamma_velocity_slope(double h, double crest, const WeirGeometry& w) {
    const double d = h - crest;
    if (d <= 0.0) return 0.0;
    const double c = w.discharge_coefficient();
    return c * std::sqrt(d) * (0.5 * h + crest) / (h * h);
}

double curve1(double h, const State& anchor, Gravity g) {
    return lax_curve(WaveFamily::One, CurveDirection::Forward, h, anchor, g);
}

double curve2r(double h, const State& anchor, Gravity g) {
    return lax_curve(WaveFamily::Two, CurveDirection::Reversed, h, anchor, g);
}

} // namespace

WeirGeometry::WeirGeometry(double crest_left, double crest_right, Gravity gravity,
                           double c_tilde)
    : crest_left_(crest_left),
      crest_right_(crest_right),
      c_tilde_(c_tilde),
      c_(c_tilde * std::sqrt(gravity.g())),
      gravity_(gravity) {
    if (!(crest_left >= 0.0) || !(crest_right >= 0.0))
        throw DomainError("WeirGeometry: crest heights must be nonnegative");
    if (!(c_tilde > 0.0) || !(c_tilde <= 1.0))
        throw DomainError("WeirGeometry: c_tilde must lie in (0, 1]");
}

std::string_view to_string(RegionLabel label) {
    switch (label) {
        case RegionLabel::OmegaU: return "Omega_u";
        case RegionLabel::GammaU: return "Gamma_u";
        case RegionLabel::AMinus: return "A_minus";
        case RegionLabel::BMinus: return "B_minus";
        case RegionLabel::SigmaL: return "Sigma_l";
        case RegionLabel::OmegaL: return "Omega_l";
        case RegionLabel::GammaL: return "Gamma_l";
        case RegionLabel::APlus: return "A_plus";
        case RegionLabel::BPlus: return "B_plus";
        case RegionLabel::SigmaU: return "Sigma_u";
    }
    return "?";
}

std::pair<double, double> coupling_residual(const State& left, const State& right,
                                            const WeirGeometry& w) {
    require_wet(left, "coupling_residual");
    require_wet(right, "coupling_residual");
    const double d = std::max(left.h - w.crest_left(), 0.0) -
                     std::max(right.h - w.crest_right(), 0.0);
    const double law = w.discharge_coefficient() * sign_of(d) *
                       std::pow(std::abs(d), 1.5);
    return {left.discharge() - law, right.discharge() - left.discharge()};
}

double gamma_flux(double h, double crest, const WeirGeometry& w) {
    const double d = std::max(h - crest, 0.0);
    return w.discharge_coefficient() * d * std::sqrt(d);
}

RegionLabel classify(const State& s, Side side, const WeirGeometry& w) {
    require_wet(s, "classify");
    const double q = s.discharge();
    const double tol = gamma_tol(s.h, w);

    if (side == Side::Left) {
        const double gam = gamma_flux(s.h, w.crest_left(), w);
        if (std::abs(q - gam) <= tol) return RegionLabel::GammaU;
        if (q > gam) return RegionLabel::OmegaU;
        if (q > 0.0) return RegionLabel::AMinus;
        return (s.h > w.crest_left()) ? RegionLabel::BMinus : RegionLabel::SigmaL;
    }

    const double gam = -gamma_flux(s.h, w.crest_right(), w);
    if (std::abs(q - gam) <= tol) return RegionLabel::GammaL;
    if (q < gam) return RegionLabel::OmegaL;
    if (q <= 0.0) return RegionLabel::BPlus;
    return (s.h > w.crest_right()) ? RegionLabel::APlus : RegionLabel::SigmaU;
}

State phi(const State& s, const WeirGeometry& w) {
    require_wet(s, "phi");
    const double q = s.discharge();
    const double c = w.discharge_coefficient();
    const double gam = gamma_flux(s.h, w.crest_left(), w);
    if (q > gam + gamma_tol(s.h, w))
        throw DomainError("phi: flux exceeds the critical overflow curve (Omega_u)");

    double hp;
    if (s.h > w.crest_left()) {
        hp = w.crest_right() + s.h - w.crest_left() -
             std::pow(s.h * std::abs(s.v) / c, 2.0 / 3.0) * sign_of(s.v);
    } else {
        // At or below the crest only nonpositive flux can couple two-sidedly;
        // the image lies on the right critical curve.
        hp = std::pow(std::max(-q, 0.0) / c, 2.0 / 3.0) + w.crest_right();
    }
    if (hp <= kDryDepth)
        throw DomainError("phi: computed right depth is not positive");
    return {hp, q / hp};
}

State gamma_u_intersection(const State& left, const WeirGeometry& w) {
    require_wet(left, "gamma_u_intersection");
    const Gravity g = w.gravity();

    auto f = [&](double h) {
        return curve1(h, left, g) - gamma_velocity(h, w.crest_left(), w);
    };
    auto df = [&](double h) {
        return lax_curve_slope(WaveFamily::One, CurveDirection::Forward, h, left, g) -
               gamma_velocity_slope(h, w.crest_left(), w);
    };

    if (f(kDryDepth) <= 0.0)
        throw NumericalError(
            "gamma_u_intersection: 1-curve lies below the critical curve");
    const double hi =
        expand_upper_bracket(f, std::max(left.h, w.crest_left() + 1.0));
    const double hs = newton_bisect(f, df, kDryDepth, hi, left.h, 1e-13);
    return {hs, curve1(hs, left, g)};
}

std::pair<double, double> connect_curve(double h, const State& left,
                                        const WeirGeometry& w, double h_star,
                                        double v_star) {
    if (!(h > 0.0))
        throw DomainError("connect_curve: depth parameter must be positive");
    if (h <= h_star)
        return {w.crest_right() / h_star * h, h_star * v_star};
    const double q = h * curve1(h, left, w.gravity());
    const State image = phi({h, q / h}, w);
    return {image.h, q};
}

WeirTraces solve_weir_traces(const State& left, const State& right,
                             const WeirGeometry& w) {
    require_wet(left, "solve_weir_traces");
    require_wet(right, "solve_weir_traces");
    const Gravity g = w.gravity();

    const State star = gamma_u_intersection(left, w);

    // The admissible branch of the reversed 2-curve starts at its lower sonic
    // point; below it the curve's flux is not monotone and the 2-wave would
    // have negative speed.
    const double c_sonic = std::max((2.0 * g.celerity(right.h) - right.v) / 3.0, 0.0);
    const double b_min = std::max(c_sonic * c_sonic / g.g(), kDryDepth);

    auto gamma_depth = [&](double h) {
        return connect_curve(h, left, w, star.h, star.v).first;
    };

    // Parameter at which the connecting curve reaches depth b_min.
    double h_b = kDryDepth;
    if (gamma_depth(h_b) < b_min) {
        auto fd = [&](double h) { return b_min - gamma_depth(h); }; // decreasing
        const double hi_d = expand_upper_bracket(fd, std::max(star.h, 1.0));
        h_b = bisect(fd, h_b, hi_d, 1e-13);
    }

    auto F = [&](double h) {
        const auto [d, q] = connect_curve(h, left, w, star.h, star.v);
        return q - d * curve2r(d, right, g);
    };

    if (F(h_b) < 0.0)
        throw NumericalError(
            "solve_weir_traces: no admissible intersection with the 2-curve");
    const double hi = expand_upper_bracket(
        F, std::max({2.0 * h_b, star.h, right.h, 1.0}));
    const double h_root = bisect(F, h_b, hi, 1e-13);

    const auto [depth, q] = connect_curve(h_root, left, w, star.h, star.v);
    WeirTraces traces;
    traces.left_trace =
        (h_root <= star.h) ? star : State{h_root, curve1(h_root, left, g)};
    traces.right_trace = {depth, q / depth};
    return traces;
}

WeirRiemannSolution solve_weir_riemann(const State& left, const State& right,
                                       const WeirGeometry& w) {
    const Gravity g = w.gravity();
    if (regime(left, g) != FlowRegime::SubsonicInterior ||
        regime(right, g) != FlowRegime::SubsonicInterior)
        throw DomainError("solve_weir_riemann: states must be subsonic");

    WeirRiemannSolution sol;
    sol.traces = solve_weir_traces(left, right, w);
    sol.left_fan = solve_riemann(left, sol.traces.left_trace, g);
    sol.right_fan = solve_riemann(sol.traces.right_trace, right, g);
    return sol;
}

FlowDirection flow_direction(const State& left, const State& right,
                             const WeirGeometry& w) {
    require_wet(left, "flow_direction");
    require_wet(right, "flow_direction");
    const double over_left = std::max(left.h - w.crest_left(), 0.0);
    const double over_right = std::max(right.h - w.crest_right(), 0.0);
    if (over_left == 0.0 && over_right == 0.0) return FlowDirection::None;
    if (over_left > over_right) return FlowDirection::LeftToRight;
    if (over_left < over_right) return FlowDirection::RightToLeft;
    return FlowDirection::None;
}

State sample(const WeirRiemannSolution& sol, double xi, Gravity g) {
    if (xi < 0.0) return sample(sol.left_fan, xi, g);
    return sample(sol.right_fan, xi, g);
}

} // namespace chute
