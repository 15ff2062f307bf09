#pragma once

#include "plasmatw/core.hpp"

namespace plasmatw {

/// Left/right ratios of the electron variables across the traveling wave.
/// pe_ratio = te_ratio * rhoe_ratio holds for every model.
struct JumpRatios {
    double pe_ratio = 1.0;
    double te_ratio = 1.0;
    double rhoe_ratio = 1.0;
};

/// Characteristic lengths of electron mass diffusion and heat conduction,
/// l_d = D/|[u]| and l_t = kappa^R/|[u]|.
struct CharLengths {
    double l_d = 0.0;
    double l_t = 0.0;
};

struct Rh3Result {
    HeavyState left;
    double sigma = 0.0;
};

/// Rankine-Hugoniot relations of the gamma-law Euler system for a right-going
/// 3-shock: given the right (pre-shock) state and the Mach number at it,
/// returns the left state and the shock speed.
Rh3Result rh_3shock(const HeavyState& right, double mach_r, double gamma);

/// Jump conditions of the decoupled electron subsystem. Valid for
/// 1 <= M^2 < 2 gamma/(gamma-1); the denominator vanishes at the upper bound
/// and the profile would carry negative temperatures beyond it.
JumpRatios jump_decoupled(double mach_r, double gamma);

/// Jump conditions of the electron-entropy-conservation comparison model.
JumpRatios jump_entropy(double mach_r, double gamma);

/// Jump conditions when the nonconservative product is treated as a source
/// term: isothermal across the shock.
JumpRatios jump_source(double mach_r, double gamma);

CharLengths char_lengths(const GasParams& params, double rho_e_r, double velocity_jump);

}  // namespace plasmatw
