#include <cmath>
#include <random>

#include "doctest.h"
#include "plasmatw/jump.hpp"

using namespace plasmatw;

namespace {
constexpr double kGamma = 5.0 / 3.0;
const GasParams kGas{kGamma, 0.1, 1e-3};
}  // namespace

TEST_CASE("3-shock Rankine-Hugoniot relations") {
    const auto rh = rh_3shock({1.0, 0.2, 1.0}, 1.1832, kGamma);
    CHECK(rh.left.rho_h == doctest::Approx(1.2727038675677362).epsilon(1e-12));
    CHECK(rh.left.u == doctest::Approx(0.5273003496094941).epsilon(1e-12));
    CHECK(rh.left.p == doctest::Approx(1.4999528).epsilon(1e-12));
    CHECK(rh.sigma == doctest::Approx(1.727504631744205).epsilon(1e-12));

    // table-rounded reference values
    CHECK(rh.left.rho_h == doctest::Approx(1.274).epsilon(2e-3));
    CHECK(rh.left.u == doctest::Approx(0.527).epsilon(2e-3));
    CHECK(rh.left.p == doctest::Approx(1.5).epsilon(2e-3));

    SUBCASE("sonic identity at M = 1") {
        const auto s = rh_3shock({1.0, 0.2, 1.0}, 1.0, kGamma);
        CHECK(s.left.rho_h == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(s.left.u == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(s.left.p == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(s.sigma == doctest::Approx(0.2 + sound_speed(1.0, 1.0, kGamma)).epsilon(1e-14));
    }
    SUBCASE("solar-state shock") {
        const auto s = rh_3shock({1.0, 0.07, 0.5974}, 1.4862, kGamma);
        CHECK(s.left.rho_h == doctest::Approx(1.6962).epsilon(1e-4));
        CHECK(s.left.u == doctest::Approx(0.6787).epsilon(1e-4));
        CHECK(s.left.p == doctest::Approx(1.5).epsilon(1e-4));
    }
    CHECK_THROWS_AS(rh_3shock({1.0, 0.2, 1.0}, 0.99, kGamma), std::domain_error);
}

TEST_CASE("decoupled jump ratios") {
    const JumpRatios jr = jump_decoupled(1.1832, kGamma);
    CHECK(jr.pe_ratio == doctest::Approx(1.5554972845618156).epsilon(1e-12));
    CHECK(jr.te_ratio == doctest::Approx(1.2221989138247262).epsilon(1e-12));
    CHECK(jr.rhoe_ratio == doctest::Approx(1.2727038675677365).epsilon(1e-12));
    // acceptance-table check at 0.1%
    CHECK(jr.pe_ratio == doctest::Approx(1.5556).epsilon(1e-3));
    CHECK(jr.te_ratio == doctest::Approx(1.2222).epsilon(1e-3));
    CHECK(jr.rhoe_ratio == doctest::Approx(1.2727).epsilon(1e-3));

    const JumpRatios one = jump_decoupled(1.0, kGamma);
    CHECK(one.pe_ratio == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(one.te_ratio == doctest::Approx(1.0).epsilon(1e-14));

    const JumpRatios solar = jump_decoupled(1.4862, kGamma);
    CHECK(solar.pe_ratio == doctest::Approx(3.1651).epsilon(1e-3));
    CHECK(solar.rhoe_ratio == doctest::Approx(1.6967).epsilon(1e-3));
}

TEST_CASE("decoupled validity domain ends at M^2 = 2 gamma/(gamma-1)") {
    const double m_star = std::sqrt(2.0 * kGamma / (kGamma - 1.0));  // sqrt(5)
    CHECK_NOTHROW(jump_decoupled(m_star - 1e-6, kGamma));
    CHECK_THROWS_AS(jump_decoupled(m_star, kGamma), std::domain_error);
    CHECK_THROWS_AS(jump_decoupled(m_star + 0.5, kGamma), std::domain_error);
}

TEST_CASE("entropy-model jump ratios") {
    const JumpRatios jr = jump_entropy(1.1832, kGamma);
    CHECK(jr.pe_ratio == doctest::Approx(1.4946709936195959).epsilon(1e-12));
    CHECK(jr.te_ratio == doctest::Approx(1.1744059491828691).epsilon(1e-12));
    CHECK(jump_entropy(1.0, kGamma).pe_ratio == doctest::Approx(1.0));
    // strong-shock limit: base -> (g+1)/(g-1) = 4
    const JumpRatios big = jump_entropy(1e4, kGamma);
    CHECK(big.rhoe_ratio == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(big.pe_ratio == doctest::Approx(std::pow(4.0, kGamma)).epsilon(1e-6));
}

TEST_CASE("source-model jump ratios are isothermal") {
    const JumpRatios jr = jump_source(1.1832, kGamma);
    CHECK(jr.pe_ratio == doctest::Approx(1.2727038675677362).epsilon(1e-12));
    CHECK(jr.te_ratio == 1.0);
    CHECK(jump_source(2.0, kGamma).pe_ratio == doctest::Approx(16.0 / 7.0).epsilon(1e-12));
    CHECK(jump_source(1.0, kGamma).pe_ratio == doctest::Approx(1.0));
}

TEST_CASE("algebraic identities across the three models") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> mdist(1.0, 2.2);
    for (int i = 0; i < 300; ++i) {
        const double m = mdist(rng);
        const JumpRatios ent = jump_entropy(m, kGamma);
        const JumpRatios src = jump_source(m, kGamma);
        CHECK(ent.pe_ratio == doctest::Approx(ent.te_ratio * ent.rhoe_ratio).epsilon(1e-13));
        CHECK(src.pe_ratio == doctest::Approx(src.te_ratio * src.rhoe_ratio).epsilon(1e-13));
        if (m * m < 2.0 * kGamma / (kGamma - 1.0)) {
            const JumpRatios dec = jump_decoupled(m, kGamma);
            CHECK(dec.pe_ratio == doctest::Approx(dec.te_ratio * dec.rhoe_ratio).epsilon(1e-13));
            // electron density jump equals the heavy RH density jump
            const auto rh = rh_3shock({1.0, 0.0, 1.0}, m, kGamma);
            CHECK(dec.rhoe_ratio == doctest::Approx(rh.left.rho_h).epsilon(1e-13));
        }
    }
}

TEST_CASE("decoupled and entropy models agree near M = 1") {
    double prev = 1.0;
    for (double eps : {0.2, 0.1, 0.05, 0.025}) {
        const double m = 1.0 + eps;
        const double gap = std::abs(jump_decoupled(m, kGamma).te_ratio - jump_entropy(m, kGamma).te_ratio);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("characteristic diffusion lengths") {
    const CharLengths cl = char_lengths(kGas, 0.01, 0.327);
    CHECK(cl.l_d == doctest::Approx(0.3058103975535168).epsilon(1e-12));
    CHECK(cl.l_t == doctest::Approx(0.12232415902140675).epsilon(1e-12));
    CHECK(kGas.kappa(0.01) == doctest::Approx(0.04).epsilon(1e-12));
    // reference-table value for case HD
    CHECK(char_lengths(kGas, 0.01, 0.3273003496094941).l_d == doctest::Approx(3.055e-1).epsilon(1e-3));

    GasParams weak = kGas;
    weak.D = 1e-3;
    CHECK(char_lengths(weak, 0.01, 0.327).l_d == doctest::Approx(3.058e-3).epsilon(1e-3));

    CHECK_THROWS_AS(char_lengths(kGas, 0.01, 0.0), std::domain_error);
}
