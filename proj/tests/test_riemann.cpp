#include <doctest.h>

#include <cmath>
#include <random>

#include "chute/riemann.hpp"
#include "oracles.hpp"

using namespace chute;

namespace {

const Gravity g981{9.81};

State random_subsonic(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uh(0.2, 4.0);
    std::uniform_real_distribution<double> uf(-0.95, 0.95);
    const double h = uh(rng);
    return {h, uf(rng) * std::sqrt(9.81 * h)};
}

} // namespace

TEST_CASE("equal states give a trivial fan") {
    const State s{1.0, 0.0};
    const RiemannFan fan = solve_riemann(s, s, g981);
    CHECK(fan.middle == s);
    CHECK(fan.wave1.kind == WaveKind::None);
    CHECK(fan.wave2.kind == WaveKind::None);
}

TEST_CASE("dam break (2,0)/(1,0)") {
    const RiemannFan fan = solve_riemann({2.0, 0.0}, {1.0, 0.0}, g981);
    // frozen from the independent bisection on the two curve formulas
    CHECK(fan.middle.h == doctest::Approx(1.4538408923745734).epsilon(1e-11));
    CHECK(fan.middle.v == doctest::Approx(1.3058337531817277).epsilon(1e-11));
    CHECK(fan.wave1.kind == WaveKind::Rarefaction);
    CHECK(fan.wave2.kind == WaveKind::Shock);
    CHECK(fan.wave1.speed_hi <= fan.wave2.speed_lo);
}

TEST_CASE("symmetric collision (1,1)/(1,-1)") {
    const RiemannFan fan = solve_riemann({1.0, 1.0}, {1.0, -1.0}, g981);
    CHECK(std::abs(fan.middle.v) <= 1e-12);
    CHECK(fan.middle.h == doctest::Approx(1.3417812146548309).epsilon(1e-11));
    CHECK(fan.middle.h > 1.0);
    CHECK(fan.wave1.kind == WaveKind::Shock);
    CHECK(fan.wave2.kind == WaveKind::Shock);
}

TEST_CASE("vacuum-forming data is rejected") {
    CHECK_THROWS_AS(solve_riemann({1.0, -10.0}, {1.0, 10.0}, g981), VacuumError);
    CHECK_THROWS_AS(solve_riemann({0.0, 0.0}, {1.0, 0.0}, g981), DryStateError);
}

TEST_CASE("middle state matches the plain bisection oracle") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 1000; ++i) {
        const State l = random_subsonic(rng);
        const State r = random_subsonic(rng);
        const RiemannFan fan = solve_riemann(l, r, g981);
        const double ref = oracle::middle_depth(l.h, l.v, r.h, r.v, 9.81);
        CHECK(fan.middle.h == doctest::Approx(ref).epsilon(1e-8));
    }
}

TEST_CASE("middle state closes both curve equations") {
    std::mt19937_64 rng(103);
    for (int i = 0; i < 500; ++i) {
        const State l = random_subsonic(rng);
        const State r = random_subsonic(rng);
        const RiemannFan fan = solve_riemann(l, r, g981);
        const double v1 = lax_curve(WaveFamily::One, CurveDirection::Forward,
                                    fan.middle.h, l, g981);
        const double v2 = lax_curve(WaveFamily::Two, CurveDirection::Reversed,
                                    fan.middle.h, r, g981);
        CHECK(std::abs(v1 - v2) <= 1e-10);
    }
}

TEST_CASE("shock waves satisfy the jump conditions and Lax admissibility") {
    std::mt19937_64 rng(107);
    for (int i = 0; i < 500; ++i) {
        const State l = random_subsonic(rng);
        const State r = random_subsonic(rng);
        const RiemannFan fan = solve_riemann(l, r, g981);
        for (const Wave& w : {fan.wave1, fan.wave2}) {
            if (w.kind != WaveKind::Shock) continue;
            const FluxPair fl = flux(w.left_state, g981);
            const FluxPair fr = flux(w.right_state, g981);
            const double sigma = w.speed_lo;
            CHECK(std::abs((fl.mass - fr.mass) -
                           sigma * (w.left_state.h - w.right_state.h)) <=
                  1e-8 * std::max(1.0, std::abs(fl.mass)));
            CHECK(std::abs((fl.momentum - fr.momentum) -
                           sigma * (w.left_state.discharge() -
                                    w.right_state.discharge())) <=
                  1e-8 * std::max(1.0, std::abs(fl.momentum)));
            const int fam = static_cast<int>(w.family);
            const auto [ll1, ll2] = eigenvalues(w.left_state, g981);
            const auto [rl1, rl2] = eigenvalues(w.right_state, g981);
            const double lam_left = (fam == 1) ? ll1 : ll2;
            const double lam_right = (fam == 1) ? rl1 : rl2;
            CHECK(lam_right <= sigma + 1e-9);
            CHECK(sigma <= lam_left + 1e-9);
        }
        if (fan.wave1.kind == WaveKind::Rarefaction)
            CHECK(fan.wave1.speed_lo <= fan.wave1.speed_hi);
        if (fan.wave2.kind == WaveKind::Rarefaction)
            CHECK(fan.wave2.speed_lo <= fan.wave2.speed_hi);
        CHECK(fan.wave1.speed_hi <= fan.wave2.speed_lo + 1e-9);
    }
}

TEST_CASE("sampling far field returns the inputs exactly") {
    std::mt19937_64 rng(109);
    for (int i = 0; i < 100; ++i) {
        const State l = random_subsonic(rng);
        const State r = random_subsonic(rng);
        const RiemannFan fan = solve_riemann(l, r, g981);
        CHECK(sample(fan, -1e300, g981) == l);
        CHECK(sample(fan, 1e300, g981) == r);
    }
}

TEST_CASE("dam break sampled at the interface") {
    // for (2,0)/(1,0) the 1-rarefaction lies entirely at negative speeds, so
    // the interface sees the middle state
    const RiemannFan fan = solve_riemann({2.0, 0.0}, {1.0, 0.0}, g981);
    const auto [l1m, l2m] = eigenvalues(fan.middle, g981);
    CHECK(l1m < 0.0);
    const State s0 = sample(fan, 0.0, g981);
    CHECK(s0.h == fan.middle.h);
    const FluxPair f = godunov_flux({2.0, 0.0}, {1.0, 0.0}, g981);
    CHECK(f.mass == doctest::Approx(1.8984745090185613).epsilon(1e-10));
    CHECK(f.momentum == doctest::Approx(12.846561727801678).epsilon(1e-10));
}

TEST_CASE("transcritical dam break samples inside the rarefaction") {
    // (2,0)/(0.01,0): the 1-rarefaction straddles xi = 0, where the state
    // satisfies lambda_1 = 0, i.e. v = sqrt(g h) and h = (2 sqrt(2 g)/3)^2/g
    const RiemannFan fan = solve_riemann({2.0, 0.0}, {0.01, 0.0}, g981);
    CHECK(fan.wave1.kind == WaveKind::Rarefaction);
    CHECK(fan.wave1.speed_lo < 0.0);
    CHECK(fan.wave1.speed_hi > 0.0);
    const State s0 = sample(fan, 0.0, g981);
    CHECK(s0.h == doctest::Approx(8.0 / 9.0).epsilon(1e-13));
    CHECK(s0.v == doctest::Approx(2.9529646120466801).epsilon(1e-13));
    CHECK(s0.v == doctest::Approx(std::sqrt(9.81 * s0.h)).epsilon(1e-12));
}

TEST_CASE("godunov flux consistency") {
    const State s{1.3, 0.4};
    const FluxPair direct = flux(s, g981);
    const FluxPair via = godunov_flux(s, s, g981);
    CHECK(via.mass == direct.mass);
    CHECK(via.momentum == direct.momentum);
}

TEST_CASE("godunov flux mirror symmetry") {
    std::mt19937_64 rng(113);
    for (int i = 0; i < 200; ++i) {
        const State l = random_subsonic(rng);
        const State r = random_subsonic(rng);
        const FluxPair f = godunov_flux(l, r, g981);
        const FluxPair m = godunov_flux({r.h, -r.v}, {l.h, -l.v}, g981);
        CHECK(m.mass == doctest::Approx(-f.mass).epsilon(1e-12));
        CHECK(m.momentum == doctest::Approx(f.momentum).epsilon(1e-12));
    }
}
