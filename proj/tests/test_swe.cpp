#include <doctest.h>

#include <cmath>
#include <random>

#include "chute/swe.hpp"

using namespace chute;

namespace {

const Gravity g981{9.81};
const Gravity g1{1.0};

// subsonic sample states with h in [lo_h, hi_h]
std::vector<State> random_subsonic(int n, unsigned seed, double lo_h = 0.2,
                                   double hi_h = 4.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uh(lo_h, hi_h);
    std::uniform_real_distribution<double> uf(-0.95, 0.95);
    std::vector<State> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double h = uh(rng);
        out.push_back({h, uf(rng) * std::sqrt(9.81 * h)});
    }
    return out;
}

} // namespace

TEST_CASE("flux of still and moving water") {
    const FluxPair f0 = flux({1.0, 0.0}, g981);
    CHECK(f0.mass == 0.0);
    CHECK(f0.momentum == doctest::Approx(4.905).epsilon(1e-14));

    const FluxPair f1 = flux({2.0, 1.0}, g981);
    CHECK(f1.mass == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(f1.momentum == doctest::Approx(21.62).epsilon(1e-14));

    const FluxPair f2 = flux({1.0, -1.0}, g981);
    CHECK(f2.mass == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(f2.momentum == doctest::Approx(5.905).epsilon(1e-14));

    CHECK_THROWS_AS(flux({0.0, 0.0}, g981), DryStateError);
    CHECK_THROWS_AS(flux({1e-13, 0.0}, g981), DryStateError);
}

TEST_CASE("eigenvalues") {
    const auto [l1, l2] = eigenvalues({1.0, 0.0}, g981);
    CHECK(l1 == doctest::Approx(-3.1320919526731652).epsilon(1e-15));
    CHECK(l2 == doctest::Approx(3.1320919526731652).epsilon(1e-15));

    const auto [u1, u2] = eigenvalues({1.0, 0.0}, g1);
    CHECK(u1 == -1.0);
    CHECK(u2 == 1.0);

    const auto [s1, s2] = eigenvalues({0.25, 2.0}, g981);
    CHECK(s1 == doctest::Approx(0.4339540236634174).epsilon(1e-15));
    CHECK(s2 == doctest::Approx(3.5660459763365826).epsilon(1e-15));
    CHECK(s1 > 0.0); // both positive: supersonic

    CHECK_THROWS_AS(eigenvalues({0.0, 0.0}, g981), DryStateError);
}

TEST_CASE("eigenvalue ordering lambda1 < lambda2") {
    for (const State& s : random_subsonic(200, 7)) {
        const auto [l1, l2] = eigenvalues(s, g981);
        CHECK(l1 < l2);
    }
}

TEST_CASE("flow regime classification") {
    CHECK(regime({1.0, 0.0}, g981) == FlowRegime::SubsonicInterior);
    CHECK(regime({0.25, 2.0}, g981) == FlowRegime::SupersonicUpper);
    CHECK(regime({1.0, -std::sqrt(9.81)}, g981) == FlowRegime::SonicBoundary);
    CHECK(regime({1.0, -4.0}, g981) == FlowRegime::SupersonicLower);
    CHECK_THROWS_AS(regime({0.0, 0.0}, g981), DryStateError);
}

TEST_CASE("eigenvectors") {
    const Eigenvectors e1 = eigenvectors({1.0, 0.0}, g1);
    CHECK(e1.r1[0] == -1.0);
    CHECK(e1.r1[1] == 1.0);
    CHECK(e1.r2[0] == 1.0);
    CHECK(e1.r2[1] == 1.0);

    const Eigenvectors e2 = eigenvectors({1.0, 0.0}, g981);
    CHECK(e2.r1[1] == doctest::Approx(3.1320919526731652).epsilon(1e-15));

    const Eigenvectors e3 = eigenvectors({4.0, 1.0}, g981);
    CHECK(e3.r2[1] == doctest::Approx(7.2641839053463304).epsilon(1e-15));
}

TEST_CASE("lax curve passes through its anchor") {
    for (const State& a : random_subsonic(50, 11)) {
        for (WaveFamily fam : {WaveFamily::One, WaveFamily::Two}) {
            for (CurveDirection dir :
                 {CurveDirection::Forward, CurveDirection::Reversed}) {
                CHECK(lax_curve(fam, dir, a.h, a, g981) == a.v);
            }
        }
    }
}

TEST_CASE("lax curve frozen values") {
    // family 1 forward, rarefaction branch below the anchor depth
    CHECK(lax_curve(WaveFamily::One, CurveDirection::Forward, 0.25, {1.0, 0.0},
                    g981) == doctest::Approx(3.1320919526731652).epsilon(1e-15));
    // family 2 reversed, shock branch above the anchor depth
    CHECK(lax_curve(WaveFamily::Two, CurveDirection::Reversed, 2.0, {1.0, 0.0},
                    g981) == doctest::Approx(2.7124711980037688).epsilon(1e-15));

    CHECK_THROWS_AS(
        lax_curve(WaveFamily::One, CurveDirection::Forward, -1.0, {1.0, 0.0}, g981),
        DomainError);
    CHECK_THROWS_AS(
        lax_curve(WaveFamily::One, CurveDirection::Forward, 1.0, {0.0, 0.0}, g981),
        DryStateError);
}

TEST_CASE("shock and rarefaction branches join continuously") {
    for (const State& a : random_subsonic(40, 13)) {
        for (WaveFamily fam : {WaveFamily::One, WaveFamily::Two}) {
            for (CurveDirection dir :
                 {CurveDirection::Forward, CurveDirection::Reversed}) {
                const double below =
                    lax_curve(fam, dir, a.h * (1.0 - 1e-13), a, g981);
                const double above =
                    lax_curve(fam, dir, a.h * (1.0 + 1e-13), a, g981);
                CHECK(std::abs(below - a.v) <= 1e-12);
                CHECK(std::abs(above - a.v) <= 1e-12);
            }
        }
    }
}

TEST_CASE("curve monotonicity in depth") {
    for (const State& a : random_subsonic(30, 17)) {
        double prev1 = lax_curve(WaveFamily::One, CurveDirection::Forward, 0.05, a, g981);
        double prev2 = lax_curve(WaveFamily::Two, CurveDirection::Forward, 0.05, a, g981);
        for (double h = 0.1; h < 8.0; h += 0.05) {
            const double v1 = lax_curve(WaveFamily::One, CurveDirection::Forward, h, a, g981);
            const double v2 = lax_curve(WaveFamily::Two, CurveDirection::Forward, h, a, g981);
            CHECK(v1 < prev1);
            CHECK(v2 > prev2);
            prev1 = v1;
            prev2 = v2;
        }
    }
}

TEST_CASE("forward/reversed duality") {
    // if B is on the forward curve of family i through A, then A is on the
    // reversed curve of family i through B
    for (const State& a : random_subsonic(40, 19)) {
        for (WaveFamily fam : {WaveFamily::One, WaveFamily::Two}) {
            for (double h : {0.3, 0.8, 1.7, 3.4}) {
                const State b{h, lax_curve(fam, CurveDirection::Forward, h, a, g981)};
                const double va =
                    lax_curve(fam, CurveDirection::Reversed, a.h, b, g981);
                CHECK(va == doctest::Approx(a.v).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("shock branch satisfies the jump conditions") {
    // two states joined by the shock branch admit a single speed sigma with
    // f(A) - f(B) = sigma (U(A) - U(B)) in both components
    for (const State& a : random_subsonic(40, 23)) {
        const double h = a.h * 1.9; // family-1 shock branch
        const State b{h, lax_curve(WaveFamily::One, CurveDirection::Forward, h, a, g981)};
        const FluxPair fa = flux(a, g981);
        const FluxPair fb = flux(b, g981);
        const double sigma = (fa.mass - fb.mass) / (a.h - b.h);
        const double lhs = fa.momentum - fb.momentum;
        const double rhs = sigma * (a.discharge() - b.discharge());
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
}

TEST_CASE("lax curve slope matches finite differences") {
    for (const State& a : random_subsonic(20, 29)) {
        for (WaveFamily fam : {WaveFamily::One, WaveFamily::Two}) {
            for (CurveDirection dir :
                 {CurveDirection::Forward, CurveDirection::Reversed}) {
                for (double h : {0.4, 1.1, 2.9}) {
                    const double eps = 1e-7 * h;
                    const double fd = (lax_curve(fam, dir, h + eps, a, g981) -
                                       lax_curve(fam, dir, h - eps, a, g981)) /
                                      (2.0 * eps);
                    const double an = lax_curve_slope(fam, dir, h, a, g981);
                    CHECK(an == doctest::Approx(fd).epsilon(1e-6));
                }
            }
        }
    }
}
