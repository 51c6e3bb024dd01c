#include "chute/network.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <string>

#include "chute/riemann.hpp"

namespace chute {

namespace {

constexpr double kOnsetFlux = 1e-10; // [m^2/s] threshold for "overflow began"

// Compensated accumulator for the boundary-flux time integrals.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

double total_volume(const PooledStepNetwork& net) {
    double v = 0.0;
    for (const CanalGrid& c : net.canals) v += c.volume();
    return v;
}

std::vector<double> schedule_times(const BoundarySignal& s) {
    std::vector<double> ts;
    if (s.kind == BoundarySignal::Kind::PrescribedState)
        for (const ScheduleEntry& e : s.schedule) ts.push_back(e.t);
    return ts;
}

CanalFrame frame_of(const CanalGrid& grid) {
    CanalFrame f;
    f.x.reserve(static_cast<size_t>(grid.n_cells));
    for (int i = 0; i < grid.n_cells; ++i) f.x.push_back(grid.x_center(i));
    f.states = grid.cells;
    return f;
}

} // namespace

void validate_network(const PooledStepNetwork& net) {
    if (net.canals.empty())
        throw DomainError("network: at least one canal is required");
    if (net.weirs.size() + 1 != net.canals.size())
        throw DomainError("network: weir count must be canal count - 1");
    for (size_t i = 0; i < net.canals.size(); ++i) {
        const CanalGrid& c = net.canals[i];
        if (c.n_cells < 2 || static_cast<int>(c.cells.size()) != c.n_cells)
            throw DomainError("network: canal " + std::to_string(i) +
                              " has a malformed grid");
        for (const State& s : c.cells)
            if (is_dry(s))
                throw DomainError("network: canal " + std::to_string(i) +
                                  " contains a dry cell");
        if (i > 0 && c.bottom_elevation > net.canals[i - 1].bottom_elevation)
            throw DomainError(
                "network: bottom elevations must be non-increasing along the chain");
    }
}

NetworkStepReport network_step(PooledStepNetwork& net, double t, double cfl,
                               double dt_cap) {
    const Gravity g = net.gravity;
    const size_t n_canals = net.canals.size();

    double dt = dt_cap;
    for (const CanalGrid& c : net.canals) dt = std::min(dt, cfl_dt(c, g, cfl));
    if (!(dt > 0.0))
        throw NumericalError("network_step: nonpositive time step");

    NetworkStepReport report;
    report.dt = dt;
    report.weir_mass_flux.reserve(net.weirs.size());

    // Weir traces first: the traces of weir i provide the right-end flux of
    // canal i and the left-end flux of canal i+1 with an identical mass
    // component, so the pair cancels exactly in the volume budget.
    std::vector<FluxPair> weir_left_flux(net.weirs.size());
    std::vector<FluxPair> weir_right_flux(net.weirs.size());
    for (size_t k = 0; k < net.weirs.size(); ++k) {
        WeirTraces traces;
        try {
            traces = weir_interface_traces(net.canals[k].cells.back(),
                                           net.canals[k + 1].cells.front(),
                                           net.weirs[k]);
        } catch (const Error& e) {
            throw NumericalError("network_step: weir " + std::to_string(k) +
                                 " at t=" + std::to_string(t) + ": " + e.what());
        }
        weir_left_flux[k] = flux(traces.left_trace, g);
        weir_right_flux[k] = flux(traces.right_trace, g);
        report.weir_mass_flux.push_back(weir_left_flux[k].mass);
    }

    report.upstream_flux =
        boundary_flux(net.upstream, net.canals.front().cells.front(), t, Side::Left, g);
    report.downstream_flux =
        boundary_flux(net.downstream, net.canals.back().cells.back(), t, Side::Right, g);

    std::vector<CanalGrid> updated;
    updated.reserve(n_canals);
    for (size_t k = 0; k < n_canals; ++k) {
        const FluxPair left = (k == 0) ? report.upstream_flux : weir_right_flux[k - 1];
        const FluxPair right =
            (k + 1 == n_canals) ? report.downstream_flux : weir_left_flux[k];
        try {
            updated.push_back(interior_step(net.canals[k], dt, left, right, g));
        } catch (const PositivityError& e) {
            throw PositivityError("network_step: canal " + std::to_string(k) +
                                  " at t=" + std::to_string(t) + ": " + e.what());
        }
    }
    net.canals = std::move(updated);
    return report;
}

RunResult run(const PooledStepNetwork& net, double t_end,
              std::vector<double> snapshot_times, double cfl, double t_begin) {
    validate_network(net);
    if (!(t_end >= t_begin) || !(t_begin >= 0.0))
        throw DomainError("run: need 0 <= t_begin <= t_end");

    const auto t_start = std::chrono::steady_clock::now();

    std::set<double> snaps;
    for (double t : snapshot_times)
        if (t >= t_begin && t <= t_end) snaps.insert(t);
    if (snaps.empty()) snaps.insert(t_end);

    std::set<double> events(snaps);
    for (double t : schedule_times(net.upstream))
        if (t > t_begin && t < t_end) events.insert(t);
    for (double t : schedule_times(net.downstream))
        if (t > t_begin && t < t_end) events.insert(t);
    events.insert(t_end);

    PooledStepNetwork state = net;
    RunResult result;
    const size_t n_weirs =
        net.weirs.size() +
        (net.downstream.kind == BoundarySignal::Kind::Weir ? 1 : 0);
    result.weir_onset_times.assign(n_weirs,
                                   std::numeric_limits<double>::quiet_NaN());

    KahanSum inflow, outflow;
    double t = t_begin;

    auto record = [&](double at) {
        result.snapshots.times.push_back(at);
        std::vector<CanalFrame> frames;
        frames.reserve(state.canals.size());
        for (const CanalGrid& c : state.canals) frames.push_back(frame_of(c));
        result.snapshots.frames.push_back(std::move(frames));
        result.volume_audit.push_back(
            {at, total_volume(state), inflow.sum, outflow.sum});
    };

    if (snaps.count(t_begin)) record(t_begin);

    while (t < t_end) {
        const double next_event = *events.upper_bound(t);
        const NetworkStepReport rep = network_step(state, t, cfl, next_event - t);

        inflow.add(rep.dt * rep.upstream_flux.mass);
        outflow.add(rep.dt * rep.downstream_flux.mass);
        for (size_t k = 0; k < rep.weir_mass_flux.size(); ++k)
            if (std::isnan(result.weir_onset_times[k]) &&
                rep.weir_mass_flux[k] > kOnsetFlux)
                result.weir_onset_times[k] = t;
        if (state.downstream.kind == BoundarySignal::Kind::Weir &&
            std::isnan(result.weir_onset_times.back()) &&
            rep.downstream_flux.mass > kOnsetFlux)
            result.weir_onset_times.back() = t;

        ++result.step_count;
        t += rep.dt;
        if (t >= next_event - 1e-14 * std::max(1.0, next_event)) {
            t = next_event; // land exactly; keeps restarts bit-identical
            if (snaps.count(t)) record(t);
        }
    }

    if (!snaps.count(t_end) && (result.volume_audit.empty() ||
                                result.volume_audit.back().t != t_end))
        result.volume_audit.push_back(
            {t_end, total_volume(state), inflow.sum, outflow.sum});

    result.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    return result;
}

PooledStepNetwork with_frame(const PooledStepNetwork& net,
                             const std::vector<CanalFrame>& frame) {
    if (frame.size() != net.canals.size())
        throw DomainError("with_frame: frame canal count mismatch");
    PooledStepNetwork out = net;
    for (size_t i = 0; i < frame.size(); ++i) {
        if (frame[i].states.size() != out.canals[i].cells.size())
            throw DomainError("with_frame: frame cell count mismatch in canal " +
                              std::to_string(i));
        out.canals[i].cells = frame[i].states;
    }
    return out;
}

double l1_distance(const PooledStepNetwork& a, const PooledStepNetwork& b) {
    if (a.canals.size() != b.canals.size())
        throw DomainError("l1_distance: canal count mismatch");
    double dist = 0.0;
    for (size_t i = 0; i < a.canals.size(); ++i) {
        const CanalGrid& ca = a.canals[i];
        const CanalGrid& cb = b.canals[i];
        if (ca.n_cells != cb.n_cells || ca.length != cb.length)
            throw DomainError("l1_distance: grid mismatch in canal " +
                              std::to_string(i));
        double s = 0.0;
        for (int j = 0; j < ca.n_cells; ++j) {
            const State& sa = ca.cells[static_cast<size_t>(j)];
            const State& sb = cb.cells[static_cast<size_t>(j)];
            s += std::abs(sa.h - sb.h) +
                 std::abs(sa.discharge() - sb.discharge());
        }
        dist += ca.dx() * s;
    }
    return dist;
}

LipschitzProbe lipschitz_probe(const PooledStepNetwork& base,
                               const PooledStepNetwork& perturbed, double t,
                               double cfl) {
    if (base.weirs.size() != perturbed.weirs.size())
        throw DomainError("lipschitz_probe: weir count mismatch");

    LipschitzProbe probe;
    probe.distance_at_0 = l1_distance(base, perturbed);
    for (size_t k = 0; k < base.weirs.size(); ++k)
        probe.crest_delta += std::abs(base.weirs[k].crest_left() -
                                      perturbed.weirs[k].crest_left());
    if (base.downstream.kind == BoundarySignal::Kind::Weir &&
        perturbed.downstream.kind == BoundarySignal::Kind::Weir)
        probe.crest_delta +=
            std::abs(base.downstream.crest - perturbed.downstream.crest);

    const RunResult ra = run(base, t, {t}, cfl);
    const RunResult rb = run(perturbed, t, {t}, cfl);
    probe.distance_at_t = l1_distance(with_frame(base, ra.snapshots.frames.back()),
                                      with_frame(perturbed, rb.snapshots.frames.back()));
    return probe;
}

} // namespace chute
