#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "plasmatw/cases.hpp"
#include "plasmatw/io.hpp"

using namespace plasmatw;

TEST_CASE("builtin cases are internally consistent") {
    const auto cases = builtin_cases();
    REQUIRE(cases.size() >= 4);
    for (const auto& c : cases) {
        const auto warnings = c.validate();
        for (const auto& w : warnings) INFO(w);
        CHECK(warnings.empty());
    }
}

TEST_CASE("case table values") {
    const CaseSpec hd = builtin_case("caseHD");
    const CaseSpec wd = builtin_case("caseWD");
    const double ju = std::abs(hd.wave_states().velocity_jump());
    CHECK(hd.gas.D / ju / hd.grid().dx() == doctest::Approx(61.1).epsilon(2e-3));   // nodes per l_d
    CHECK(wd.gas.D / ju / wd.grid().dx() == doctest::Approx(0.611).epsilon(2e-3));

    const CaseSpec solar = builtin_case("solar-n1000");
    CHECK(*solar.table_l_d == 1.0);           // stored verbatim
    CHECK(*solar.table_l_t == 11309.0);
    CHECK(solar.gas.kappa(solar.right_elec.rho_e) == doctest::Approx(121970.96).epsilon(1e-10));
    // verbatim normalization differs from D/|[u]| by a common factor (~17.7)
    const auto warnings = solar.validate();
    const double computed_ld = solar.gas.D / std::abs(solar.wave_states().velocity_jump());
    CHECK(computed_ld / *solar.table_l_d == doctest::Approx(17.7).epsilon(1e-2));
}

TEST_CASE("case json round trip") {
    const CaseSpec hd = builtin_case("caseHD");
    const CaseSpec back = case_from_json(case_to_json(hd));
    CHECK(back.name == hd.name);
    CHECK(back.gas.D == hd.gas.D);
    CHECK(back.gas.lambda == hd.gas.lambda);
    CHECK(back.right_heavy.u == hd.right_heavy.u);
    CHECK(back.right_elec.pe == hd.right_elec.pe);
    CHECK(back.mach == hd.mach);
    CHECK(back.n_cells == hd.n_cells);
    CHECK(back.t_final == hd.t_final);
    REQUIRE(back.table_left.has_value());
    CHECK(back.table_left->elec.pe == hd.table_left->elec.pe);
}

TEST_CASE("si case input is nondimensionalized by the references") {
    // synthetic SI file built by re-dimensionalizing case HD
    const CaseSpec hd = builtin_case("caseHD");
    const double rho0 = 1.873e-4, L0 = 1.747e-6, v0 = 651.8, T0 = 6420.0, P0 = 9927.42;
    const double t0 = L0 / v0;
    std::string text = R"({
      "name": "si-case",
      "units": "si",
      "reference": {"rho0": 1.873e-4, "L0": 1.747e-6, "v0": 651.8, "T0": 6420.0, "P0": 9927.42},
      "gas": {"gamma": 1.6666666666666667,
              "D": )" + format_double(hd.gas.D * v0 * L0) + R"(,
              "lambda": )" + format_double(hd.gas.lambda * P0 * v0 * L0 / T0) + R"(},
      "right": {"rho_h": )" + format_double(1.0 * rho0) + R"(, "u": )" + format_double(0.2 * v0) +
                  R"(, "p": )" + format_double(1.0 * P0) + R"(, "rho_e": )" + format_double(0.01 * rho0) +
                  R"(, "pe": )" + format_double(0.1 * P0) + R"(},
      "mach": 1.1832,
      "grid": {"n_cells": 2000, "length": )" + format_double(10.0 * L0) + R"(},
      "t_final": )" + format_double(1.0 * t0) + R"(
    })";
    const CaseSpec si = case_from_json(text);
    CHECK(si.gas.D == doctest::Approx(hd.gas.D).epsilon(1e-12));
    CHECK(si.gas.lambda == doctest::Approx(hd.gas.lambda).epsilon(1e-12));
    CHECK(si.right_heavy.rho_h == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(si.right_heavy.u == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(si.right_heavy.p == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(si.right_elec.pe == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(si.length == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(si.t_final == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("invalid case files are rejected") {
    CHECK_THROWS(case_from_json(R"({"name": "bad"})"));
    std::string negative = case_to_json(builtin_case("caseHD"));
    const auto pos = negative.find("\"rho_h\"");
    REQUIRE(pos != std::string::npos);
    negative.replace(pos, 16, "\"rho_h\": -1.0, \"zz\"");
    CHECK_THROWS(case_from_json(negative));
}

TEST_CASE("case file save/load") {
    const auto path = std::filesystem::temp_directory_path() / "plasmatw_case_test.json";
    save_case(builtin_case("caseWD"), path);
    const CaseSpec back = load_case(path);
    CHECK(back.name == "caseWD");
    CHECK(back.gas.D == doctest::Approx(1e-3));
    std::filesystem::remove(path);
}

TEST_CASE("double formatting round-trips exactly") {
    for (double v : {0.1, 1.0 / 3.0, 1.2727038675677362, 1e-300, 4.0951e5, -0.0, 7.0}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("csv writer is stable") {
    CsvWriter w({"a", "b"});
    const double row[2] = {1.5, 2.5};
    w.add_row(row);
    CsvWriter w2({"a", "b"});
    w2.add_row(row);
    CHECK(w.str() == "a,b\n1.5,2.5\n");
    CHECK(w.checksum() == w2.checksum());
}
