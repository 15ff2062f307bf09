#include <cmath>

#include "doctest.h"
#include "plasmatw/coupled.hpp"
#include "plasmatw/wave.hpp"

using namespace plasmatw;

namespace {
const GasParams kGas{5.0 / 3.0, 0.1, 1e-3};
const PlasmaState kRight{{1.0, 0.2, 1.0}, {0.01, 0.1}};
}  // namespace

TEST_CASE("first integrals at the right equilibrium") {
    const CoupledWaveProblem prob(kRight, 1.1832, kGas);
    const FirstIntegrals& I = prob.integrals();
    const double w = kRight.heavy.u - prob.sigma();
    CHECK(I.m == doctest::Approx(kRight.heavy.rho_h * w).epsilon(1e-14));
    CHECK(I.c_mom == doctest::Approx(I.m * 0.2 + 1.0).epsilon(1e-14));
    CHECK(I.c_emass == doctest::Approx(0.01 * w).epsilon(1e-14));

    // heavy recovery reproduces the defining state
    double rho, p;
    prob.recover_heavy(0.2, rho, p);
    CHECK(rho == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("rhs vanishes at both equilibria") {
    const CoupledWaveProblem prob(kRight, 1.1832, kGas);
    const auto r0 = prob.rhs({kRight.elec.pe, kRight.elec.Te(), kRight.heavy.u});
    for (double d : r0) CHECK(std::abs(d) < 1e-11);

    // any point of the left equilibrium line is stationary too
    const double pe_l = 0.15;
    const auto rl = prob.rhs({pe_l, pe_l / prob.left_rho_e(), prob.left_heavy().u});
    for (double d : rl) CHECK(std::abs(d) < 1e-10);
}

TEST_CASE("frozen-velocity reduction reproduces the decoupled eigenvalues") {
    const WaveStates w = make_wave_states(kRight.heavy, kRight.elec, 1.1832, kGas);
    const double c_r = sound_speed(1.0, 1.0, kGas.gamma);
    const WaveCoefficients wc = wave_coefficients(kGas, kRight.elec, c_r, 1.1832);

    // finite-difference Jacobian of the frozen rhs at the right state
    const double pe0 = kRight.elec.pe, te0 = kRight.elec.Te();
    const double hp = 1e-7 * pe0, ht = 1e-7 * te0;
    auto f = [&](double pe, double te) {
        return decoupled_frozen_rhs(pe, te, kRight.elec, kRight.heavy.u, w.sigma, kGas);
    };
    const auto fp1 = f(pe0 + hp, te0), fm1 = f(pe0 - hp, te0);
    const auto fp2 = f(pe0, te0 + ht), fm2 = f(pe0, te0 - ht);
    const double j11 = (fp1[0] - fm1[0]) / (2 * hp), j12 = (fp2[0] - fm2[0]) / (2 * ht);
    const double j21 = (fp1[1] - fm1[1]) / (2 * hp), j22 = (fp2[1] - fm2[1]) / (2 * ht);

    const double tr = j11 + j22, det = j11 * j22 - j12 * j21;
    const double root = std::sqrt(tr * tr - 4.0 * det);
    const double lam_minus = 0.5 * (tr + root);  // less negative
    const double lam_plus = 0.5 * (tr - root);
    CHECK(lam_plus == doctest::Approx(wc.delta_plus).epsilon(1e-8));
    CHECK(lam_minus == doctest::Approx(wc.delta_minus).epsilon(1e-8));
}

TEST_CASE("analytic equilibrium Jacobian matches finite differences of the rhs") {
    const CoupledWaveProblem prob(kRight, 1.1832, kGas);
    const CoupledPoint eq{kRight.elec.pe, kRight.elec.Te(), kRight.heavy.u};
    const auto J = prob.jacobian_at_equilibrium(eq);
    const double h[3] = {1e-8 * eq.pe, 1e-8 * eq.Te, 1e-8};
    for (int col = 0; col < 3; ++col) {
        CoupledPoint yp = eq, ym = eq;
        (col == 0 ? yp.pe : col == 1 ? yp.Te : yp.u) += h[col];
        (col == 0 ? ym.pe : col == 1 ? ym.Te : ym.u) -= h[col];
        const auto fp = prob.rhs(yp), fm = prob.rhs(ym);
        for (int row = 0; row < 3; ++row) {
            const double fd = (fp[row] - fm[row]) / (2.0 * h[col]);
            const double scale = std::abs(J[row][col]) + 1e3;
            CHECK(std::abs(J[row][col] - fd) / scale < 1e-5);
        }
    }
}

TEST_CASE("trajectory structure follows the heavy sonic character") {
    SUBCASE("moderate shock inserts the heavy sub-shock at departure") {
        const CoupledWaveProblem prob(kRight, 1.1832, kGas);
        const double pe_guess = kRight.elec.pe * jump_decoupled(1.1832, kGas.gamma).pe_ratio;
        const CoupledTrajectory traj = prob.integrate(pe_guess);
        CHECK(traj.converged);
        CHECK(traj.sub_shock_inserted);
    }
    SUBCASE("weak shock departs smoothly") {
        const CoupledWaveProblem prob(kRight, 1.05, kGas);
        const double pe_guess = kRight.elec.pe * jump_decoupled(1.05, kGas.gamma).pe_ratio;
        const CoupledTrajectory traj = prob.integrate(pe_guess);
        CHECK(traj.converged);
        CHECK_FALSE(traj.sub_shock_inserted);
    }
}

TEST_CASE("energy integral is conserved along trajectories") {
    for (double mach : {1.05, 1.1832, 1.9}) {
        const CoupledWaveProblem prob(kRight, mach, kGas);
        const CoupledJumpResult res = prob.shoot();
        REQUIRE(res.converged);
        const CoupledTrajectory traj = prob.integrate(res.pe_left);
        CHECK(traj.max_cen_drift < 1e-8);
    }
}

TEST_CASE("shooting agrees with the decoupled jump near Mach 1") {
    for (double mach : {1.05, 1.1832}) {
        const CoupledWaveProblem prob(kRight, mach, kGas);
        const CoupledJumpResult res = prob.shoot();
        REQUIRE(res.converged);
        const JumpRatios dec = jump_decoupled(mach, kGas.gamma);
        CHECK(std::abs(res.pe_ratio - dec.pe_ratio) / dec.pe_ratio < 0.05);
        CHECK(std::abs(res.te_ratio - dec.te_ratio) / dec.te_ratio < 0.05);
        CHECK(res.residual < 1e-5);
        CHECK(res.ld_star > 0.0);
    }
}

TEST_CASE("no singularity through the decoupled validity limit") {
    const double m_star = std::sqrt(5.0);
    for (double mach : {2.0, m_star, 2.5}) {
        const CoupledWaveProblem prob(kRight, mach, kGas);
        const CoupledJumpResult res = prob.shoot();
        CHECK(res.converged);
        CHECK(std::isfinite(res.pe_ratio));
        CHECK(res.pe_ratio > 1.0);
        CHECK(res.pe_ratio < 100.0);
    }
}

TEST_CASE("off-family left guesses are rejected") {
    const CoupledWaveProblem prob(kRight, 1.1832, kGas);
    // nonsensical left electron pressures leave the admissible region
    CHECK_THROWS_AS(prob.integrate(-0.1), std::domain_error);
    CHECK_THROWS_AS(prob.integrate(2.0 * prob.left_heavy().p), std::domain_error);
}

TEST_CASE("mach sweep orders the model curves") {
    std::vector<double> machs{1.05, 1.3, 1.8, 2.3};
    const auto rows = mach_sweep(machs, kRight, kGas);
    REQUIRE(rows.size() == machs.size());
    for (const auto& row : rows) {
        REQUIRE(row.coupled_ok);
        // conservative comparison models underestimate the heating
        CHECK(row.te_coupled > row.entropy.te_ratio);
        CHECK(row.entropy.te_ratio > row.source.te_ratio);
        CHECK(row.source.te_ratio == 1.0);
        if (row.mach * row.mach < 5.0) REQUIRE(row.decoupled.has_value());
        else CHECK_FALSE(row.decoupled.has_value());
    }
}
