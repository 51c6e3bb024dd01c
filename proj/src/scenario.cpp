#include "chute/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace chute {

namespace {

using nlohmann::json;

const json& require_field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object())
        throw ConfigError(path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw ConfigError(path + "." + key + ": missing required field");
    return *it;
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number())
        throw ConfigError(path + ": expected a number");
    return j.get<double>();
}

double number_field(const json& j, const char* key, const std::string& path) {
    return as_number(require_field(j, key, path), path + "." + key);
}

double number_or(const json& j, const char* key, const std::string& path,
                 double fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return as_number(j.at(key), path + "." + key);
}

// A state spec carries "h" plus exactly one of "v" (velocity) or "q" (flux).
State parse_state(const json& j, const std::string& path) {
    const double h = number_field(j, "h", path);
    if (!(h > 0.0)) throw ConfigError(path + ".h: must be positive");
    const bool has_v = j.contains("v");
    const bool has_q = j.contains("q");
    if (has_v == has_q)
        throw ConfigError(path + ": specify exactly one of 'v' or 'q'");
    const double v =
        has_v ? as_number(j.at("v"), path + ".v") : as_number(j.at("q"), path + ".q") / h;
    return {h, v};
}

BoundarySignal::Kind parse_kind(const json& j, const std::string& path) {
    if (!j.is_string()) throw ConfigError(path + ": expected a string");
    const std::string s = j.get<std::string>();
    if (s == "prescribed_state") return BoundarySignal::Kind::PrescribedState;
    if (s == "free_outflow") return BoundarySignal::Kind::FreeOutflow;
    if (s == "weir") return BoundarySignal::Kind::Weir;
    if (s == "wall") return BoundarySignal::Kind::Wall;
    throw ConfigError(path + ": unknown kind '" + s + "'");
}

const char* kind_name(BoundarySignal::Kind k) {
    switch (k) {
        case BoundarySignal::Kind::PrescribedState: return "prescribed_state";
        case BoundarySignal::Kind::FreeOutflow: return "free_outflow";
        case BoundarySignal::Kind::Weir: return "weir";
        case BoundarySignal::Kind::Wall: return "wall";
    }
    return "?";
}

SignalSpec parse_signal(const json& j, const std::string& path, Gravity g) {
    SignalSpec spec;
    spec.kind = parse_kind(require_field(j, "kind", path), path + ".kind");
    if (spec.kind == BoundarySignal::Kind::PrescribedState) {
        const json& sched = require_field(j, "schedule", path);
        if (!sched.is_array() || sched.empty())
            throw ConfigError(path + ".schedule: expected a non-empty array");
        double prev_t = -std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < sched.size(); ++i) {
            const std::string ep = path + ".schedule[" + std::to_string(i) + "]";
            const json& e = sched[i];
            ScheduleEntry entry;
            entry.t = number_field(e, "t", ep);
            if (!(entry.t > prev_t))
                throw ConfigError(ep + ".t: schedule times must be strictly increasing");
            prev_t = entry.t;
            entry.target = parse_state(e, ep);
            if (regime(entry.target, g) != FlowRegime::SubsonicInterior)
                throw ConfigError(ep + ": prescribed state must be subsonic");
            spec.schedule.push_back(entry);
        }
    } else if (spec.kind == BoundarySignal::Kind::Weir) {
        spec.crest = number_field(j, "crest", path);
        if (!(spec.crest >= 0.0))
            throw ConfigError(path + ".crest: must be nonnegative");
        spec.c_tilde = number_or(j, "C_tilde", path, 0.6);
        if (!(spec.c_tilde > 0.0 && spec.c_tilde <= 1.0))
            throw ConfigError(path + ".C_tilde: must lie in (0, 1]");
    }
    return spec;
}

json signal_to_json(const SignalSpec& s) {
    json j;
    j["kind"] = kind_name(s.kind);
    if (s.kind == BoundarySignal::Kind::PrescribedState) {
        json sched = json::array();
        for (const ScheduleEntry& e : s.schedule)
            sched.push_back({{"t", e.t}, {"h", e.target.h}, {"v", e.target.v}});
        j["schedule"] = sched;
    } else if (s.kind == BoundarySignal::Kind::Weir) {
        j["crest"] = s.crest;
        j["C_tilde"] = s.c_tilde;
    }
    return j;
}

std::string format_csv_value(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

bool SignalSpec::operator==(const SignalSpec& other) const {
    if (kind != other.kind) return false;
    if (kind == BoundarySignal::Kind::PrescribedState) {
        if (schedule.size() != other.schedule.size()) return false;
        for (size_t i = 0; i < schedule.size(); ++i)
            if (schedule[i].t != other.schedule[i].t ||
                !(schedule[i].target == other.schedule[i].target))
                return false;
        return true;
    }
    if (kind == BoundarySignal::Kind::Weir)
        return crest == other.crest && c_tilde == other.c_tilde;
    return true;
}

ScenarioConfig parse_scenario(const json& j) {
    ScenarioConfig cfg;
    cfg.gravity = number_or(j, "gravity", "", 9.81);
    if (!(cfg.gravity > 0.0)) throw ConfigError("gravity: must be positive");
    const Gravity g(cfg.gravity);

    cfg.cfl = number_or(j, "cfl", "", 0.9);
    if (!(cfg.cfl > 0.0 && cfg.cfl < 1.0))
        throw ConfigError("cfl: must lie in (0, 1)");

    const json& canals = require_field(j, "canals", "");
    if (!canals.is_array() || canals.empty())
        throw ConfigError("canals: expected a non-empty array");
    for (size_t i = 0; i < canals.size(); ++i) {
        const std::string path = "canals[" + std::to_string(i) + "]";
        const json& c = canals[i];
        CanalSpec spec;
        spec.length = number_field(c, "length", path);
        if (!(spec.length > 0.0)) throw ConfigError(path + ".length: must be positive");
        const double n = number_field(c, "n_cells", path);
        spec.n_cells = static_cast<int>(n);
        if (spec.n_cells < 2 || spec.n_cells != n)
            throw ConfigError(path + ".n_cells: must be an integer >= 2");
        if (c.contains("bottom_elevation"))
            spec.bottom_elevation =
                as_number(c.at("bottom_elevation"), path + ".bottom_elevation");
        const json& init = require_field(c, "initial", path);
        if (init.is_array()) {
            if (init.empty())
                throw ConfigError(path + ".initial: expected a non-empty array");
            double prev_x = 0.0;
            for (size_t k = 0; k < init.size(); ++k) {
                const std::string ip =
                    path + ".initial[" + std::to_string(k) + "]";
                InitialSegment seg;
                seg.x_end = number_field(init[k], "x_end", ip);
                if (!(seg.x_end > prev_x))
                    throw ConfigError(ip + ".x_end: must be strictly increasing");
                prev_x = seg.x_end;
                seg.state = parse_state(init[k], ip);
                spec.initial_segments.push_back(seg);
            }
            if (spec.initial_segments.back().x_end < spec.length)
                throw ConfigError(path + ".initial: segments must cover the canal");
        } else {
            spec.initial_constant = parse_state(init, path + ".initial");
        }
        cfg.canals.push_back(std::move(spec));
    }

    const json& weirs = require_field(j, "weirs", "");
    if (!weirs.is_array())
        throw ConfigError("weirs: expected an array");
    if (weirs.size() + 1 != cfg.canals.size())
        throw ConfigError("weirs: expected canal count - 1 = " +
                          std::to_string(cfg.canals.size() - 1) + " entries, got " +
                          std::to_string(weirs.size()));
    for (size_t i = 0; i < weirs.size(); ++i) {
        const std::string path = "weirs[" + std::to_string(i) + "]";
        WeirSpec spec;
        spec.h_minus = number_field(weirs[i], "H_minus", path);
        spec.h_plus = number_field(weirs[i], "H_plus", path);
        if (!(spec.h_minus >= 0.0)) throw ConfigError(path + ".H_minus: must be nonnegative");
        if (!(spec.h_plus >= 0.0)) throw ConfigError(path + ".H_plus: must be nonnegative");
        spec.c_tilde = number_or(weirs[i], "C_tilde", path, 0.6);
        if (!(spec.c_tilde > 0.0 && spec.c_tilde <= 1.0))
            throw ConfigError(path + ".C_tilde: must lie in (0, 1]");
        cfg.weirs.push_back(spec);

        // When both adjacent bottom elevations are given, the crest must sit
        // at one absolute elevation seen from either side.
        const auto& lo = cfg.canals[i].bottom_elevation;
        const auto& hi = cfg.canals[i + 1].bottom_elevation;
        if (lo && hi) {
            const double left_abs = *lo + spec.h_minus;
            const double right_abs = *hi + spec.h_plus;
            if (std::abs(left_abs - right_abs) >
                1e-9 * std::max({1.0, left_abs, right_abs}))
                throw ConfigError(path +
                                  ": crest elevation mismatch (bottom + H differs "
                                  "between the two sides)");
        }
    }

    cfg.upstream = parse_signal(require_field(j, "upstream", ""), "upstream", g);
    cfg.downstream = parse_signal(require_field(j, "downstream", ""), "downstream", g);
    if (cfg.upstream.kind == BoundarySignal::Kind::Weir)
        throw ConfigError("upstream.kind: weir boundary is supported downstream only");

    cfg.t_end = number_field(j, "t_end", "");
    if (!(cfg.t_end >= 0.0)) throw ConfigError("t_end: must be nonnegative");

    if (j.contains("snapshot_times")) {
        const json& times = j.at("snapshot_times");
        if (!times.is_array()) throw ConfigError("snapshot_times: expected an array");
        for (size_t i = 0; i < times.size(); ++i)
            cfg.snapshot_times.push_back(
                as_number(times[i], "snapshot_times[" + std::to_string(i) + "]"));
    }

    if (j.contains("output_dir")) {
        if (!j.at("output_dir").is_string())
            throw ConfigError("output_dir: expected a string");
        cfg.output_dir = j.at("output_dir").get<std::string>();
    }
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_scenario(j);
}

json to_json(const ScenarioConfig& cfg) {
    json j;
    j["gravity"] = cfg.gravity;
    j["cfl"] = cfg.cfl;
    json canals = json::array();
    for (const CanalSpec& c : cfg.canals) {
        json jc;
        jc["length"] = c.length;
        jc["n_cells"] = c.n_cells;
        if (c.bottom_elevation) jc["bottom_elevation"] = *c.bottom_elevation;
        if (c.initial_segments.empty()) {
            jc["initial"] = {{"h", c.initial_constant.h}, {"v", c.initial_constant.v}};
        } else {
            json segs = json::array();
            for (const InitialSegment& s : c.initial_segments)
                segs.push_back(
                    {{"x_end", s.x_end}, {"h", s.state.h}, {"v", s.state.v}});
            jc["initial"] = segs;
        }
        canals.push_back(jc);
    }
    j["canals"] = canals;
    json weirs = json::array();
    for (const WeirSpec& w : cfg.weirs)
        weirs.push_back(
            {{"H_minus", w.h_minus}, {"H_plus", w.h_plus}, {"C_tilde", w.c_tilde}});
    j["weirs"] = weirs;
    j["upstream"] = signal_to_json(cfg.upstream);
    j["downstream"] = signal_to_json(cfg.downstream);
    j["t_end"] = cfg.t_end;
    j["snapshot_times"] = cfg.snapshot_times;
    j["output_dir"] = cfg.output_dir;
    return j;
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
    const std::string dump = to_json(cfg).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

PooledStepNetwork build_network(const ScenarioConfig& cfg) {
    const Gravity g(cfg.gravity);
    PooledStepNetwork net;
    net.gravity = g;

    for (const CanalSpec& spec : cfg.canals) {
        CanalGrid grid = make_uniform_canal(spec.length, spec.n_cells,
                                            spec.initial_segments.empty()
                                                ? spec.initial_constant
                                                : spec.initial_segments.front().state,
                                            spec.bottom_elevation.value_or(0.0));
        if (!spec.initial_segments.empty()) {
            for (int i = 0; i < grid.n_cells; ++i) {
                const double x = grid.x_center(i);
                for (const InitialSegment& seg : spec.initial_segments) {
                    if (x <= seg.x_end) {
                        grid.cells[static_cast<size_t>(i)] = seg.state;
                        break;
                    }
                }
            }
        }
        net.canals.push_back(std::move(grid));
    }

    for (const WeirSpec& w : cfg.weirs)
        net.weirs.emplace_back(w.h_minus, w.h_plus, g, w.c_tilde);

    auto make_signal = [](const SignalSpec& s) {
        BoundarySignal b;
        b.kind = s.kind;
        b.schedule = s.schedule;
        b.crest = s.crest;
        b.c_tilde = s.c_tilde;
        return b;
    };
    net.upstream = make_signal(cfg.upstream);
    net.downstream = make_signal(cfg.downstream);

    validate_network(net);
    return net;
}

std::string format_double(double x) {
    if (x == std::floor(x) && std::abs(x) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", x);
        return buf;
    }
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::vector<std::string> write_outputs(const RunResult& result,
                                       const ScenarioConfig& cfg,
                                       const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::string> written;

    for (size_t ti = 0; ti < result.snapshots.times.size(); ++ti) {
        const double t = result.snapshots.times[ti];
        for (size_t ci = 0; ci < result.snapshots.frames[ti].size(); ++ci) {
            const CanalFrame& frame = result.snapshots.frames[ti][ci];
            const std::string name = "canal" + std::to_string(ci + 1) + "_t" +
                                     format_double(t) + ".csv";
            const fs::path path = fs::path(out_dir) / name;
            std::ofstream out(path, std::ios::binary); // LF line endings
            if (!out) throw Error("cannot write '" + path.string() + "'");
            out << "x,h,v,q\n";
            for (size_t i = 0; i < frame.states.size(); ++i) {
                const State& s = frame.states[i];
                out << format_csv_value(frame.x[i]) << ','
                    << format_csv_value(s.h) << ',' << format_csv_value(s.v) << ','
                    << format_csv_value(s.discharge()) << '\n';
            }
            written.push_back(name);
        }
    }

    const fs::path meta_path = fs::path(out_dir) / "run_meta";
    std::ofstream meta(meta_path, std::ios::binary);
    if (!meta) throw Error("cannot write '" + meta_path.string() + "'");
    char hash_buf[20];
    std::snprintf(hash_buf, sizeof(hash_buf), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    meta << "config_hash=" << hash_buf << '\n';
    meta << "step_count=" << result.step_count << '\n';
    meta << "wall_time_seconds=" << format_csv_value(result.wall_time_seconds)
         << '\n';
    for (const VolumeAuditPoint& p : result.volume_audit)
        meta << "audit t=" << format_double(p.t)
             << " volume=" << format_csv_value(p.volume)
             << " inflow=" << format_csv_value(p.inflow_integral)
             << " outflow=" << format_csv_value(p.outflow_integral) << '\n';
    written.push_back("run_meta");
    return written;
}

CanalFrame read_canal_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    CanalFrame frame;
    std::string line;
    if (!std::getline(in, line) || line != "x,h,v,q")
        throw Error("'" + path + "': expected header x,h,v,q");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        double vals[4];
        for (int k = 0; k < 4; ++k) {
            if (!std::getline(row, field, ','))
                throw Error("'" + path + "': short row");
            vals[k] = std::strtod(field.c_str(), nullptr);
        }
        frame.x.push_back(vals[0]);
        frame.states.push_back({vals[1], vals[2]});
    }
    return frame;
}

} // namespace chute
