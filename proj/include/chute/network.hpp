#pragma once

#include <limits>
#include <vector>

#include "chute/canal.hpp"
#include "chute/types.hpp"
#include "chute/weir.hpp"

namespace chute {

/// Chain of canals coupled by weirs. weirs[i] sits between canals[i] (its
/// H^- side) and canals[i+1] (its H^+ side); the chain descends, so bottom
/// elevations are non-increasing.
struct PooledStepNetwork {
    std::vector<CanalGrid> canals;
    std::vector<WeirGeometry> weirs; // size canals.size() - 1
    BoundarySignal upstream;
    BoundarySignal downstream;
    Gravity gravity;
};

/// Structural checks: canal/weir counts, cell counts, wet cells,
/// non-increasing bottom elevations. Throws DomainError on violation.
void validate_network(const PooledStepNetwork& net);

/// Cell-center samples of one canal at one time.
struct CanalFrame {
    std::vector<double> x; // cell centers, local canal coordinate [m]
    std::vector<State> states;
};

/// Frames per snapshot time, per canal.
struct SnapshotSet {
    std::vector<double> times;
    std::vector<std::vector<CanalFrame>> frames; // frames[time][canal]
};

struct VolumeAuditPoint {
    double t = 0.0;
    double volume = 0.0;           // [m^2]
    double inflow_integral = 0.0;  // time-integrated upstream mass flux
    double outflow_integral = 0.0; // time-integrated downstream mass flux
};

struct RunResult {
    SnapshotSet snapshots;
    std::vector<VolumeAuditPoint> volume_audit;
    long step_count = 0;
    double wall_time_seconds = 0.0;
    /// First time each weir's mass flux exceeded 1e-10 (internal weirs in
    /// order, then the downstream boundary weir when present); NaN if never.
    std::vector<double> weir_onset_times;
};

/// Per-step summary returned by network_step.
struct NetworkStepReport {
    double dt = 0.0;
    FluxPair upstream_flux;
    FluxPair downstream_flux;
    std::vector<double> weir_mass_flux; // internal weirs, in order
};

/// Advance the whole network by one synchronous step: one global dt from the
/// CFL bound (clipped to dt_cap), weir traces from the boundary cells, then
/// one conservative update per canal. Deterministic.
NetworkStepReport network_step(PooledStepNetwork& net, double t, double cfl,
                               double dt_cap = std::numeric_limits<double>::infinity());

/// Run from t_begin to t_end recording frames at the requested snapshot
/// times. Steps are clipped so the simulation lands exactly on snapshot
/// times, boundary schedule switch times, and t_end; this keeps runs exactly
/// restartable from any snapshot (pass the frame through with_frame and the
/// snapshot time as t_begin). Requested times outside [t_begin, t_end] are
/// dropped; when none remain, only the state at t_end is recorded.
RunResult run(const PooledStepNetwork& net, double t_end,
              std::vector<double> snapshot_times, double cfl = 0.9,
              double t_begin = 0.0);

/// Copy of the network with cell states replaced by a recorded frame.
PooledStepNetwork with_frame(const PooledStepNetwork& net,
                             const std::vector<CanalFrame>& frame);

/// L1 distance between two structurally identical networks,
/// sum over cells of dx (|dh| + |d(hv)|).
double l1_distance(const PooledStepNetwork& a, const PooledStepNetwork& b);

/// Paired-run measurement for the Lipschitz-dependence estimate: both
/// networks are run to time t and compared in L1. crest_delta collects the
/// absolute crest-height differences between the two configurations.
struct LipschitzProbe {
    double distance_at_t = 0.0;
    double distance_at_0 = 0.0;
    double crest_delta = 0.0;
};

LipschitzProbe lipschitz_probe(const PooledStepNetwork& base,
                               const PooledStepNetwork& perturbed, double t,
                               double cfl = 0.9);

} // namespace chute
