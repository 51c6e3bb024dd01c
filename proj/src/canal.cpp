#include "chute/canal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chute/riemann.hpp"

namespace chute {

namespace {

void require_wet(const State& s, const char* op) {
    if (is_dry(s))
        throw DryStateError(std::string(op) + ": dry state (h <= 1e-12)");
}

double curve1(double h, const State& anchor, Gravity g) {
    return lax_curve(WaveFamily::One, CurveDirection::Forward, h, anchor, g);
}

double curve2r(double h, const State& anchor, Gravity g) {
    return lax_curve(WaveFamily::Two, CurveDirection::Reversed, h, anchor, g);
}

// Newton residuals for the reduced trace system in the depths (a, b):
//   R1 = q-(a) - C sign(D) |D|^{3/2},   D = [a - H^-]_+ - [b - H^+]_+
//   R2 = q+(b) - q-(a)
// with q-(a) = a L1+(a; left), q+(b) = b L2-(b; right).
struct TraceResiduals {
    double r1, r2;
};

TraceResiduals trace_residuals(double a, double b, const State& left,
                               const State& right, const WeirGeometry& w) {
    const Gravity g = w.gravity();
    const double qm = a * curve1(a, left, g);
    const double qp = b * curve2r(b, right, g);
    const double d =
        std::max(a - w.crest_left(), 0.0) - std::max(b - w.crest_right(), 0.0);
    const double sgn = (d > 0.0) - (d < 0.0);
    const double law = w.discharge_coefficient() * sgn * std::pow(std::abs(d), 1.5);
    return {qm - law, qp - qm};
}

// Trace admissibility: the 1-wave into the left trace may not run rightward,
// the 2-wave out of the right trace may not run leftward, and neither trace
// may sit on the wrong supersonic branch of its curve.
bool traces_admissible(const WeirTraces& tr, const State& left_cell,
                       const State& right_cell, const WeirGeometry& w) {
    const Gravity g = w.gravity();
    constexpr double speed_tol = 1e-9;

    const auto [l1, l2] = eigenvalues(tr.left_trace, g);
    if (l1 > speed_tol) return false;
    const auto [r1, r2] = eigenvalues(tr.right_trace, g);
    if (r2 < -speed_tol) return false;

    if (tr.left_trace.h > left_cell.h + kDryDepth) {
        const double sigma = (tr.left_trace.discharge() - left_cell.discharge()) /
                             (tr.left_trace.h - left_cell.h);
        if (sigma > speed_tol) return false;
    }
    if (tr.right_trace.h > right_cell.h + kDryDepth) {
        const double sigma = (right_cell.discharge() - tr.right_trace.discharge()) /
                             (right_cell.h - tr.right_trace.h);
        if (sigma < -speed_tol) return false;
    }
    return true;
}

} // namespace

double CanalGrid::volume() const {
    double sum = 0.0;
    for (const State& s : cells) sum += s.h;
    return dx() * sum;
}

CanalGrid make_uniform_canal(double length, int n_cells, const State& s,
                             double bottom_elevation) {
    if (!(length > 0.0)) throw DomainError("make_uniform_canal: length must be positive");
    if (n_cells < 2) throw DomainError("make_uniform_canal: need at least 2 cells");
    require_wet(s, "make_uniform_canal");
    CanalGrid grid;
    grid.length = length;
    grid.n_cells = n_cells;
    grid.bottom_elevation = bottom_elevation;
    grid.cells.assign(static_cast<size_t>(n_cells), s);
    return grid;
}

const State& BoundarySignal::target_at(double t) const {
    if (schedule.empty())
        throw DomainError("BoundarySignal: prescribed signal has an empty schedule");
    const ScheduleEntry* current = &schedule.front();
    for (const ScheduleEntry& e : schedule) {
        if (e.t <= t) current = &e;
        else break;
    }
    return current->target;
}

double cfl_dt(const CanalGrid& grid, Gravity g, double cfl) {
    if (!(cfl > 0.0 && cfl < 1.0))
        throw DomainError("cfl_dt: CFL number must lie in (0, 1)");
    double smax = 0.0;
    for (const State& s : grid.cells) {
        require_wet(s, "cfl_dt");
        smax = std::max(smax, std::abs(s.v) + g.celerity(s.h));
    }
    return cfl * grid.dx() / smax;
}

CanalGrid interior_step(const CanalGrid& grid, double dt, const FluxPair& left_flux,
                        const FluxPair& right_flux, Gravity g) {
    const int n = grid.n_cells;
    if (n < 2 || static_cast<int>(grid.cells.size()) != n)
        throw DomainError("interior_step: malformed grid");
    if (!(dt > 0.0)) throw DomainError("interior_step: dt must be positive");

    std::vector<FluxPair> f(static_cast<size_t>(n) + 1);
    f[0] = left_flux;
    f[static_cast<size_t>(n)] = right_flux;
    for (int i = 1; i < n; ++i)
        f[static_cast<size_t>(i)] =
            godunov_flux(grid.cells[static_cast<size_t>(i - 1)],
                         grid.cells[static_cast<size_t>(i)], g);

    CanalGrid out = grid;
    const double r = dt / grid.dx();
    for (int i = 0; i < n; ++i) {
        const State& s = grid.cells[static_cast<size_t>(i)];
        const FluxPair& fl = f[static_cast<size_t>(i)];
        const FluxPair& fr = f[static_cast<size_t>(i) + 1];
        const double h = s.h - r * (fr.mass - fl.mass);
        const double q = s.discharge() - r * (fr.momentum - fl.momentum);
        if (h <= kDryDepth)
            throw PositivityError("interior_step: cell " + std::to_string(i) +
                                  " depth " + std::to_string(h) + " after update");
        out.cells[static_cast<size_t>(i)] = {h, q / h};
    }
    return out;
}

WeirTraces weir_interface_traces(const State& left_cell, const State& right_cell,
                                 const WeirGeometry& w) {
    require_wet(left_cell, "weir_interface_traces");
    require_wet(right_cell, "weir_interface_traces");
    const Gravity g = w.gravity();
    const double res_scale =
        std::max(1.0, w.discharge_coefficient() *
                          std::pow(std::max(left_cell.h, right_cell.h), 1.5));

    double a = left_cell.h;
    double b = right_cell.h;
    bool converged = false;
    try {
        for (int iter = 0; iter < 30; ++iter) {
            const auto [r1, r2] = trace_residuals(a, b, left_cell, right_cell, w);
            if (std::max(std::abs(r1), std::abs(r2)) <= 1e-13 * res_scale) {
                converged = true;
                break;
            }

            const double dq_m = curve1(a, left_cell, g) +
                                a * lax_curve_slope(WaveFamily::One,
                                                    CurveDirection::Forward, a,
                                                    left_cell, g);
            const double dq_p = curve2r(b, right_cell, g) +
                                b * lax_curve_slope(WaveFamily::Two,
                                                    CurveDirection::Reversed, b,
                                                    right_cell, g);
            const double d = std::max(a - w.crest_left(), 0.0) -
                             std::max(b - w.crest_right(), 0.0);
            const double dlaw = 1.5 * w.discharge_coefficient() *
                                std::sqrt(std::abs(d));
            const double j11 = dq_m - dlaw * (a > w.crest_left() ? 1.0 : 0.0);
            const double j12 = dlaw * (b > w.crest_right() ? 1.0 : 0.0);
            const double j21 = -dq_m;
            const double j22 = dq_p;

            const double det = j11 * j22 - j12 * j21;
            if (det == 0.0 || !std::isfinite(det)) break;
            double da = -(r1 * j22 - r2 * j12) / det;
            double db = -(j11 * r2 - j21 * r1) / det;

            // damp steps that would leave the wet region
            double scale = 1.0;
            while ((a + scale * da <= kDryDepth || b + scale * db <= kDryDepth) &&
                   scale > 1e-6)
                scale *= 0.5;
            a += scale * da;
            b += scale * db;
            if (a <= kDryDepth || b <= kDryDepth) break;

            if (std::abs(scale * da) <= 1e-13 * std::max(1.0, a) &&
                std::abs(scale * db) <= 1e-13 * std::max(1.0, b)) {
                const auto [f1, f2] =
                    trace_residuals(a, b, left_cell, right_cell, w);
                converged = std::max(std::abs(f1), std::abs(f2)) <= 1e-11 * res_scale;
                break;
            }
        }
    } catch (const Error&) {
        converged = false;
    }

    if (converged) {
        WeirTraces traces;
        traces.left_trace = {a, curve1(a, left_cell, g)};
        const double q = traces.left_trace.discharge();
        traces.right_trace = {b, q / b};
        if (traces_admissible(traces, left_cell, right_cell, w)) return traces;
    }

    return solve_weir_traces(left_cell, right_cell, w);
}

FluxPair boundary_flux(const BoundarySignal& signal, const State& cell, double t,
                       Side side, Gravity g) {
    require_wet(cell, "boundary_flux");

    switch (signal.kind) {
        case BoundarySignal::Kind::PrescribedState: {
            const State& target = signal.target_at(t);
            if (regime(target, g) != FlowRegime::SubsonicInterior)
                throw DomainError("boundary_flux: prescribed state must be subsonic");
            return (side == Side::Left) ? godunov_flux(target, cell, g)
                                        : godunov_flux(cell, target, g);
        }
        case BoundarySignal::Kind::FreeOutflow:
            return flux(cell, g);
        case BoundarySignal::Kind::Weir: {
            if (side == Side::Left)
                throw DomainError(
                    "boundary_flux: weir boundary is supported on the downstream "
                    "(right) end only");
            const WeirGeometry w(signal.crest, signal.crest, g, signal.c_tilde);
            return flux(gamma_u_intersection(cell, w), g);
        }
        case BoundarySignal::Kind::Wall: {
            const State mirror{cell.h, -cell.v};
            return (side == Side::Left) ? godunov_flux(mirror, cell, g)
                                        : godunov_flux(cell, mirror, g);
        }
    }
    throw DomainError("boundary_flux: unknown signal kind");
}

} // namespace chute
