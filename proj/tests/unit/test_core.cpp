#include <random>

#include "doctest.h"
#include "plasmatw/core.hpp"

using namespace plasmatw;

namespace {
const GasParams kGas{5.0 / 3.0, 0.1, 1e-3};
const HeavyState kRightHeavy{1.0, 0.2, 1.0};
const ElectronState kRightElec{0.01, 0.1};
}  // namespace

TEST_CASE("sound speed") {
    CHECK(sound_speed(1.0, 1.0, 5.0 / 3.0) == doctest::Approx(1.2909944487358056).epsilon(1e-12));
    CHECK(sound_speed(1.0, 0.5974, 5.0 / 3.0) == doctest::Approx(0.9978309810116475).epsilon(1e-12));
    // scale invariance: p/rho fixed
    CHECK(sound_speed(4.0, 4.0, 5.0 / 3.0) == doctest::Approx(sound_speed(1.0, 1.0, 5.0 / 3.0)));
    CHECK_THROWS_AS(sound_speed(0.0, 1.0, 5.0 / 3.0), std::domain_error);
    CHECK_THROWS_AS(sound_speed(1.0, -1.0, 5.0 / 3.0), std::domain_error);
}

TEST_CASE("electron EOS round trip is exact") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(1e-6, 1e3);
    for (int i = 0; i < 200; ++i) {
        ElectronState e{dist(rng), dist(rng)};
        const double te = e.Te();
        const double ee = e.ee(kGas.gamma);
        CHECK(te * e.rho_e == doctest::Approx(e.pe).epsilon(1e-15));          // pe = rho_e Te
        CHECK((kGas.gamma - 1.0) * e.rho_e * ee == doctest::Approx(e.pe).epsilon(1e-15));
    }
}

TEST_CASE("wave states satisfy the Lax condition") {
    const WaveStates w = make_wave_states(kRightHeavy, kRightElec, 1.1832, kGas);
    const double c_r = sound_speed(w.right.heavy.rho_h, w.right.heavy.p, kGas.gamma);
    const double c_l = sound_speed(w.left.heavy.rho_h, w.left.heavy.p, kGas.gamma);
    CHECK((w.sigma - w.right.heavy.u) / c_r == doctest::Approx(1.1832).epsilon(1e-12));
    CHECK((w.sigma - w.left.heavy.u) / c_l == doctest::Approx(0.8563586375366647).epsilon(1e-10));
    CHECK((w.sigma - w.left.heavy.u) / c_l < 1.0);
}

TEST_CASE("prescribed heavy fields follow the moving jump") {
    const WaveStates w = make_wave_states(kRightHeavy, kRightElec, 1.1832, kGas);
    const double x0 = 2.0;

    CHECK(prescribed_heavy_state(w, x0, 0.0, 0.0).u == doctest::Approx(0.5273003496094941));

    const double xs = shock_position(w, x0, 1.0);
    CHECK(xs == doctest::Approx(2.0 + 1.727504631744205).epsilon(1e-12));
    CHECK(prescribed_velocity(w, x0, xs + 1e-9, 1.0) == w.right.heavy.u);
    CHECK(prescribed_velocity(w, x0, xs - 1e-9, 1.0) == w.left.heavy.u);
    // xi = 0 maps to the right state by convention
    CHECK(prescribed_velocity(w, x0, xs, 1.0) == w.right.heavy.u);
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(make_wave_states(kRightHeavy, kRightElec, 0.9, kGas), std::domain_error);
    GasParams bad = kGas;
    bad.gamma = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    CHECK_THROWS_AS((HeavyState{-1.0, 0.0, 1.0}).validate(), std::domain_error);
    CHECK_THROWS_AS((ElectronState{0.01, 0.0}).validate(), std::domain_error);
}
