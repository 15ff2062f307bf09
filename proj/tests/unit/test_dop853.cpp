#include <cmath>

#include "doctest.h"
#include "plasmatw/dop853.hpp"

using namespace plasmatw;

TEST_CASE("dop853 integrates smooth scalar problems to tolerance") {
    // y' = cos(t), y(0) = 0, exact y = sin(t)
    auto rhs = [](double t, std::span<const double>, std::span<double> dy) { dy[0] = std::cos(t); };
    const double y0[1] = {0.0};
    Dop853Options opts;
    opts.rtol = 1e-12;
    opts.atol = 1e-14;
    Dop853 stp(rhs, 0.0, std::span<const double>(y0, 1), opts);
    while (stp.t() < 10.0 && stp.step()) {
    }
    CHECK(stp.t() >= 10.0);
    CHECK(stp.y()[0] == doctest::Approx(std::sin(stp.t())).epsilon(1e-10));
}

TEST_CASE("dop853 on a stiff-ish linear decay keeps accuracy") {
    auto rhs = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = -40.0 * y[0]; };
    const double y0[1] = {1.0};
    Dop853Options opts;
    opts.rtol = 1e-10;
    opts.atol = 1e-12;
    Dop853 stp(rhs, 0.0, std::span<const double>(y0, 1), opts);
    while (stp.t() < 1.0 && stp.step()) {
    }
    CHECK(stp.y()[0] == doctest::Approx(std::exp(-40.0 * stp.t())).epsilon(1e-8));
}

TEST_CASE("dense output interpolates inside the last step") {
    // two-component oscillator, exact (cos t, sin t)
    auto rhs = [](double, std::span<const double> y, std::span<double> dy) {
        dy[0] = -y[1];
        dy[1] = y[0];
    };
    const double y0[2] = {1.0, 0.0};
    Dop853Options opts;
    opts.rtol = 1e-11;
    opts.atol = 1e-13;
    Dop853 stp(rhs, 0.0, std::span<const double>(y0, 2), opts);
    int checked = 0;
    while (stp.t() < 5.0 && stp.step()) {
        auto dense = stp.dense();
        for (double f : {0.25, 0.5, 0.75}) {
            const double tm = stp.t_prev() + f * (stp.t() - stp.t_prev());
            std::array<double, 2> ym{};
            dense.eval(tm, ym);
            CHECK(ym[0] == doctest::Approx(std::cos(tm)).epsilon(1e-9));
            CHECK(ym[1] == doctest::Approx(std::sin(tm)).epsilon(1e-9));
            ++checked;
        }
        // dense() must not disturb the stepper state
        CHECK(stp.y()[0] == doctest::Approx(std::cos(stp.t())).epsilon(1e-9));
    }
    CHECK(checked > 10);
}

TEST_CASE("restart continues from a new state") {
    auto rhs = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0]; };
    const double y0[1] = {1.0};
    Dop853 stp(rhs, 0.0, std::span<const double>(y0, 1));
    while (stp.t() < 1.0 && stp.step()) {
    }
    const double y1[1] = {1.0};
    stp.restart(0.0, std::span<const double>(y1, 1));
    while (stp.t() < 2.0 && stp.step()) {
    }
    CHECK(stp.y()[0] == doctest::Approx(std::exp(stp.t())).epsilon(1e-9));
}
