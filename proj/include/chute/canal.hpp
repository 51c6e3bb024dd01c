#pragma once

#include <vector>

#include "chute/types.hpp"
#include "chute/weir.hpp"

namespace chute {

/// Uniform grid of cell-averaged states for one canal.
struct CanalGrid {
    double length = 1.0;           // [m]
    int n_cells = 0;               // >= 2
    double bottom_elevation = 0.0; // absolute [m]; output bookkeeping only
    std::vector<State> cells;

    double dx() const { return length / n_cells; }
    double x_center(int i) const { return (i + 0.5) * dx(); }

    /// Stored water volume per unit width, dx * sum(h) [m^2].
    double volume() const;
};

CanalGrid make_uniform_canal(double length, int n_cells, const State& s,
                             double bottom_elevation = 0.0);

/// External boundary condition of a canal end.
struct ScheduleEntry {
    double t = 0.0; // [s]
    State target;
};

struct BoundarySignal {
    enum class Kind { PrescribedState, FreeOutflow, Weir, Wall };

    Kind kind = Kind::FreeOutflow;
    std::vector<ScheduleEntry> schedule; // PrescribedState: piecewise constant in t
    double crest = 0.0;                  // Weir: crest height above the canal bottom [m]
    double c_tilde = 0.6;                // Weir: discharge coefficient factor

    /// Prescribed target at time t (entries apply from their start time on).
    const State& target_at(double t) const;
};

/// Outcome of one explicit step on one canal.
struct StepReport {
    double dt = 0.0;             // [s]
    double max_wave_speed = 0.0; // [m/s]
    FluxPair left_flux;
    FluxPair right_flux;
};

/// Largest stable time step, cfl * dx / max(|v| + sqrt(g h)).
double cfl_dt(const CanalGrid& grid, Gravity g, double cfl);

/// One conservative Godunov update. Interior interface fluxes come from the
/// exact Riemann solver; the end fluxes are supplied by the caller. Throws
/// PositivityError (naming the cell) if any updated depth is nonpositive.
CanalGrid interior_step(const CanalGrid& grid, double dt, const FluxPair& left_flux,
                        const FluxPair& right_flux, Gravity g);

/// Coupled trace pair at a weir between two boundary cells. A damped 2x2
/// Newton iteration on the trace depths (velocities substituted from the
/// wave curves) is tried first; if it fails to converge or its answer fails
/// the admissibility checks, the bisection construction of
/// solve_weir_traces is used instead and is authoritative.
WeirTraces weir_interface_traces(const State& left_cell, const State& right_cell,
                                 const WeirGeometry& w);

/// Boundary flux at a canal end:
///  - PrescribedState: Godunov flux against the scheduled target state
///    (which must be subsonic),
///  - FreeOutflow: flux of the boundary cell itself,
///  - Weir (right end only): flux of the critical overflow trace, the canal
///    spilling into an absorbing reservoir that never backs up,
///  - Wall: Godunov flux against the mirrored cell; zero mass flux.
FluxPair boundary_flux(const BoundarySignal& signal, const State& cell, double t,
                       Side side, Gravity g);

} // namespace chute
