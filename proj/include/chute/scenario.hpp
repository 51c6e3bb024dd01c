#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chute/network.hpp"

namespace chute {

/// Piecewise-constant initial data: the segment covers cell centers up to
/// x_end (local canal coordinate).
struct InitialSegment {
    double x_end = 0.0;
    State state;

    bool operator==(const InitialSegment&) const = default;
};

struct CanalSpec {
    double length = 1.0;
    int n_cells = 200;
    std::optional<double> bottom_elevation;
    State initial_constant{1.0, 0.0};
    std::vector<InitialSegment> initial_segments; // when non-empty, overrides

    bool operator==(const CanalSpec&) const = default;
};

struct WeirSpec {
    double h_minus = 0.0;
    double h_plus = 0.0;
    double c_tilde = 0.6;

    bool operator==(const WeirSpec&) const = default;
};

struct SignalSpec {
    BoundarySignal::Kind kind = BoundarySignal::Kind::FreeOutflow;
    std::vector<ScheduleEntry> schedule;
    double crest = 0.0;
    double c_tilde = 0.6;

    bool operator==(const SignalSpec& other) const;
};

struct ScenarioConfig {
    double gravity = 9.81;
    double cfl = 0.9;
    std::vector<CanalSpec> canals;
    std::vector<WeirSpec> weirs;
    SignalSpec upstream;
    SignalSpec downstream;
    double t_end = 0.0;
    std::vector<double> snapshot_times;
    std::string output_dir = "out";

    bool operator==(const ScenarioConfig&) const = default;
};

/// Parse and schema-validate a configuration. Throws ConfigError with the
/// offending field path on any violation.
ScenarioConfig parse_scenario(const nlohmann::json& j);
ScenarioConfig load_scenario(const std::string& path);
nlohmann::json to_json(const ScenarioConfig& cfg);

/// FNV-1a hash of the canonical serialized form.
std::uint64_t config_hash(const ScenarioConfig& cfg);

/// Materialize the grids, weirs and boundary signals.
PooledStepNetwork build_network(const ScenarioConfig& cfg);

/// Shortest exact decimal form of a double (used in file names).
std::string format_double(double x);

/// Write one CSV per (canal, snapshot time) into out_dir, named
/// canal<k>_t<time>.csv with header x,h,v,q and 17-significant-digit values,
/// plus a run_meta text file with the config hash, step count and the volume
/// audit. Returns the file names written.
std::vector<std::string> write_outputs(const RunResult& result,
                                       const ScenarioConfig& cfg,
                                       const std::string& out_dir);

/// Reparse a frame CSV written by write_outputs (bit-exact round trip).
CanalFrame read_canal_csv(const std::string& path);

} // namespace chute
