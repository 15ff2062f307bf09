#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "plasmatw/fv.hpp"
#include "plasmatw/wave.hpp"

namespace plasmatw {

/// SI reference quantities used to nondimensionalize configuration input.
/// v0 is the Alfven velocity B0/sqrt(mu0 rho0).
struct ReferenceQuantities {
    double rho0 = 1.0;
    double L0 = 1.0;
    double v0 = 1.0;
    double T0 = 1.0;
    double P0 = 1.0;
};

/// Self-contained description of a traveling-wave run. Left states are
/// always recomputed from the jump relations; values quoted from reference
/// tables are kept alongside for validation only.
struct CaseSpec {
    std::string name;
    GasParams gas;
    HeavyState right_heavy;
    ElectronState right_elec;
    double mach = 0.0;

    int n_cells = 0;
    double length = 0.0;
    double x0_fraction = 0.2;
    double t_final = 0.0;
    double courant = 0.2;
    double fourier_constant = 1.25;
    std::vector<double> output_times;

    // reference values quoted from the literature tables, kept verbatim
    std::optional<PlasmaState> table_left;
    std::optional<double> table_l_d;
    std::optional<double> table_l_t;
    // the solar tables normalize both lengths by a different velocity scale;
    // when set, the quoted lengths are kept for reference but not validated
    bool table_lengths_own_norm = false;

    WaveStates wave_states() const { return make_wave_states(right_heavy, right_elec, mach, gas); }
    Grid1D grid() const { return {n_cells, length}; }
    double x0() const { return x0_fraction * length; }
    AnalyticProfile profile() const { return AnalyticProfile(gas, wave_states(), x0()); }
    SchemeConfig scheme_config(SchemeKind scheme) const {
        SchemeConfig c;
        c.scheme = scheme;
        c.courant = courant;
        c.fourier_constant = fourier_constant;
        return c;
    }

    /// Consistency warnings: quoted table values vs the recomputed states,
    /// 1e-2 relative (tables are rounded to 3-4 digits).
    std::vector<std::string> validate() const;
};

std::vector<CaseSpec> builtin_cases();
CaseSpec builtin_case(const std::string& name);

/// Member of the diffusion sweep family: case HD with D replaced.
CaseSpec case_for_diffusion(double D);

CaseSpec load_case(const std::filesystem::path& path);
void save_case(const CaseSpec& spec, const std::filesystem::path& path);
std::string case_to_json(const CaseSpec& spec);
CaseSpec case_from_json(const std::string& text);

}  // namespace plasmatw
