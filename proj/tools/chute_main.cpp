#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chute/network.hpp"
#include "chute/riemann.hpp"
#include "chute/scenario.hpp"
#include "chute/weir.hpp"

namespace {

using namespace chute;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

void print_state(const char* label, const State& s) {
    std::printf("%s h=%.12g v=%.12g q=%.12g\n", label, s.h, s.v, s.discharge());
}

const char* kind_name(WaveKind k) {
    switch (k) {
        case WaveKind::Shock: return "shock";
        case WaveKind::Rarefaction: return "rarefaction";
        case WaveKind::None: return "none";
    }
    return "?";
}

void print_wave(const char* label, const Wave& w) {
    std::printf("%s family=%d kind=%s speeds=[%.12g, %.12g]\n", label,
                static_cast<int>(w.family), kind_name(w.kind), w.speed_lo,
                w.speed_hi);
}

struct RunArgs {
    std::string config_path;
    std::string out_dir;
    double cfl = -1.0;
    int cells = -1;
};

int cmd_run(const RunArgs& args) {
    ScenarioConfig cfg = load_scenario(args.config_path);
    if (args.cfl > 0.0) cfg.cfl = args.cfl;
    if (args.cells > 0)
        for (CanalSpec& c : cfg.canals) c.n_cells = args.cells;
    const std::string out_dir = args.out_dir.empty() ? cfg.output_dir : args.out_dir;

    const PooledStepNetwork net = build_network(cfg);
    const RunResult result = run(net, cfg.t_end, cfg.snapshot_times, cfg.cfl);
    const auto files = write_outputs(result, cfg, out_dir);

    std::printf("wrote %zu files to %s (%ld steps, %.2f s)\n", files.size(),
                out_dir.c_str(), result.step_count, result.wall_time_seconds);
    return kExitOk;
}

struct RiemannArgs {
    double hl, vl, hr, vr, h_minus, h_plus;
    double gravity = 9.81;
    double c_tilde = 0.6;
    std::vector<double> samples;
};

int cmd_riemann(const RiemannArgs& args) {
    const Gravity g(args.gravity);
    const WeirGeometry w(args.h_minus, args.h_plus, g, args.c_tilde);
    const WeirRiemannSolution sol =
        solve_weir_riemann({args.hl, args.vl}, {args.hr, args.vr}, w);

    print_state("left trace (k*,w*): ", sol.traces.left_trace);
    print_state("right trace (k,w):  ", sol.traces.right_trace);
    const auto [r1, r2] =
        coupling_residual(sol.traces.left_trace, sol.traces.right_trace, w);
    std::printf("coupling residual: (%.3g, %.3g)\n", r1, r2);
    print_wave("left fan  wave1:", sol.left_fan.wave1);
    print_wave("left fan  wave2:", sol.left_fan.wave2);
    print_wave("right fan wave1:", sol.right_fan.wave1);
    print_wave("right fan wave2:", sol.right_fan.wave2);
    for (double xi : args.samples) {
        const State s = sample(sol, xi, g);
        std::printf("sample xi=%.12g: h=%.12g v=%.12g\n", xi, s.h, s.v);
    }
    return kExitOk;
}

struct ClassifyArgs {
    double h, v;
    std::string side;
    double crest;
    double gravity = 9.81;
    double c_tilde = 0.6;
};

int cmd_classify(const ClassifyArgs& args) {
    const Gravity g(args.gravity);
    const WeirGeometry w(args.crest, args.crest, g, args.c_tilde);
    const Side side = (args.side == "left") ? Side::Left : Side::Right;
    const State s{args.h, args.v};
    const RegionLabel label = classify(s, side, w);
    const double gam = gamma_flux(args.h, args.crest, w);
    const double residual =
        (side == Side::Left) ? s.discharge() - gam : s.discharge() + gam;
    std::printf("%s\n", std::string(to_string(label)).c_str());
    std::printf("gamma residual: %.12g\n", residual);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D shallow-water simulator for pooled-step canal chains"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run_cmd = app.add_subcommand("run", "run a scenario config");
    run_cmd->add_option("config", run_args.config_path, "scenario config file")
        ->required();
    run_cmd->add_option("--out", run_args.out_dir, "output directory override");
    run_cmd->add_option("--cfl", run_args.cfl, "CFL number override");
    run_cmd->add_option("--cells", run_args.cells, "cells per canal override");

    RiemannArgs rp;
    CLI::App* riemann_cmd =
        app.add_subcommand("riemann", "solve one Riemann problem at a weir");
    riemann_cmd->add_option("hl", rp.hl, "left depth")->required();
    riemann_cmd->add_option("vl", rp.vl, "left velocity")->required();
    riemann_cmd->add_option("hr", rp.hr, "right depth")->required();
    riemann_cmd->add_option("vr", rp.vr, "right velocity")->required();
    riemann_cmd->add_option("Hm", rp.h_minus, "crest height, left side")->required();
    riemann_cmd->add_option("Hp", rp.h_plus, "crest height, right side")->required();
    riemann_cmd->add_option("--sample", rp.samples, "similarity points x/t to sample");
    riemann_cmd->add_option("--gravity", rp.gravity, "gravity [m/s^2]");
    riemann_cmd->add_option("--ctilde", rp.c_tilde, "discharge coefficient factor");

    ClassifyArgs cl;
    CLI::App* classify_cmd =
        app.add_subcommand("classify", "classify a trace state");
    classify_cmd->add_option("h", cl.h, "depth")->required();
    classify_cmd->add_option("v", cl.v, "velocity")->required();
    classify_cmd->add_option("side", cl.side, "left or right")
        ->required()
        ->check(CLI::IsMember({"left", "right"}));
    classify_cmd->add_option("H", cl.crest, "crest height")->required();
    classify_cmd->add_option("--gravity", cl.gravity, "gravity [m/s^2]");
    classify_cmd->add_option("--ctilde", cl.c_tilde, "discharge coefficient factor");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(run_args);
        if (riemann_cmd->parsed()) return cmd_riemann(rp);
        if (classify_cmd->parsed()) return cmd_classify(cl);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
    return kExitConfig;
}
