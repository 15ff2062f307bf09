#include <cmath>
#include <random>

#include "doctest.h"
#include "plasmatw/diagnostics.hpp"
#include "plasmatw/fv.hpp"

using namespace plasmatw;

namespace {
const GasParams kGas{5.0 / 3.0, 0.1, 1e-3};

AnalyticProfile make_profile() {
    return AnalyticProfile(kGas, make_wave_states({1.0, 0.2, 1.0}, {0.01, 0.1}, 1.1832, kGas), 2.0);
}
}  // namespace

TEST_CASE("error split vanishes for the exact sample") {
    const AnalyticProfile prof = make_profile();
    const Grid1D grid{500, 10.0};
    SchemeConfig cfg;
    FvSolver solver(cfg, grid, prof);
    const FieldState f = solver.initial_state();
    const ErrorReport rep = error_split(f, prof, grid);
    // zero up to the u2 <-> pe conversion rounding
    CHECK(rep.l2_full < 1e-14);
    CHECK(rep.l2_downstream < 1e-14);
    CHECK(rep.l2_upstream < 1e-14);
    CHECK(rep.linf < 1e-15);
}

TEST_CASE("error split against a brute-force recomputation") {
    const AnalyticProfile prof = make_profile();
    const Grid1D grid{500, 10.0};
    SchemeConfig cfg;
    FvSolver solver(cfg, grid, prof);
    FieldState f = solver.initial_state();
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> noise(-0.05, 0.05);
    for (auto& v : f.u2) v *= 1.0 + noise(rng);
    f.time = 0.3;

    const ErrorReport rep = error_split(f, prof, grid);

    const double g = kGas.gamma;
    const double xs = prof.shock_position(f.time);
    const int js = static_cast<int>(std::floor(xs / grid.dx()));
    double s_down = 0.0, s_up = 0.0, linf = 0.0;
    for (int j = 0; j < grid.n_cells; ++j) {
        const double pe_e = prof.evaluate(grid.x_center(j), f.time).pe;
        const double err = (g - 1.0) * f.u2[j] - pe_e;
        linf = std::max(linf, std::abs(err));
        (j <= js ? s_down : s_up) += err * err;
    }
    CHECK(rep.shock_cell == js);
    CHECK(rep.l2_downstream == doctest::Approx(std::sqrt(grid.dx() * s_down)).epsilon(1e-13));
    CHECK(rep.l2_upstream == doctest::Approx(std::sqrt(grid.dx() * s_up)).epsilon(1e-13));
    CHECK(rep.linf == doctest::Approx(linf).epsilon(1e-13));

    // norm-splitting identity
    const double reassembled = std::sqrt(rep.l2_downstream * rep.l2_downstream +
                                         rep.l2_upstream * rep.l2_upstream);
    CHECK(rep.l2_full == doctest::Approx(reassembled).epsilon(1e-13));
}

TEST_CASE("centered gradient") {
    SUBCASE("linear field returns the slope") {
        std::vector<double> v;
        for (int i = 0; i < 50; ++i) v.push_back(3.0 + 0.7 * i * 0.1);
        const auto grad = gradient_centered(v, 0.1);
        for (int i = 1; i < 49; ++i) CHECK(grad[i] == doctest::Approx(0.7).epsilon(1e-12));
        CHECK(grad[0] == doctest::Approx(0.7).epsilon(1e-12));    // one-sided
        CHECK(grad[49] == doctest::Approx(0.7).epsilon(1e-12));
    }
    SUBCASE("constant field returns zeros") {
        std::vector<double> v(20, 4.2);
        for (double gz : gradient_centered(v, 0.05)) CHECK(gz == 0.0);
    }
    SUBCASE("too-short input is rejected") {
        std::vector<double> v{1.0, 2.0};
        CHECK_THROWS_AS(gradient_centered(v, 0.1), std::domain_error);
    }
}

TEST_CASE("slope fitting") {
    SUBCASE("single power law") {
        std::vector<double> x, y;
        for (int i = 0; i < 12; ++i) {
            x.push_back(std::pow(10.0, -2.0 + 0.3 * i));
            y.push_back(2.5 * std::pow(x.back(), 0.33));
        }
        CHECK(slope_fit_single(x, y) == doctest::Approx(0.33).epsilon(1e-9));
        const SlopeFit two = slope_fit(x, y);
        CHECK(two.slope_low == doctest::Approx(0.33).epsilon(1e-9));
        CHECK(two.slope_high == doctest::Approx(0.33).epsilon(1e-9));
    }
    SUBCASE("two-regime data recovers the breakpoint") {
        std::vector<double> x, y;
        for (int i = 0; i < 14; ++i) {
            const double xi = std::pow(10.0, -1.0 + 0.25 * i);
            x.push_back(xi);
            y.push_back(xi < 3.0 ? std::pow(xi, -0.4) : std::pow(3.0, -0.4) * std::pow(xi / 3.0, -1.3));
        }
        const SlopeFit fit = slope_fit(x, y);
        CHECK(fit.slope_low == doctest::Approx(-0.4).epsilon(1e-6));
        CHECK(fit.slope_high == doctest::Approx(-1.3).epsilon(1e-6));
        CHECK(fit.break_x > 1.5);
        CHECK(fit.break_x < 6.0);
    }
    SUBCASE("degenerate abscissae are rejected") {
        std::vector<double> x(8, 2.0), y(8, 1.0);
        CHECK_THROWS_AS(slope_fit(x, y), std::domain_error);
    }
}
