#pragma once

#include <stdexcept>
#include <string>

namespace plasmatw {

/// Nondimensional gas and electron transport parameters shared by every
/// module. gamma is the common adiabatic index of electrons and heavy
/// particles, D the electron diffusion coefficient and lambda the electron
/// thermal conductivity.
struct GasParams {
    double gamma = 5.0 / 3.0;
    double D = 0.0;
    double lambda = 0.0;

    void validate() const {
        if (!(gamma > 1.0)) throw std::domain_error("GasParams: gamma must be > 1");
        if (!(D >= 0.0)) throw std::domain_error("GasParams: D must be >= 0");
        if (!(lambda >= 0.0)) throw std::domain_error("GasParams: lambda must be >= 0");
    }

    /// Electron thermal diffusivity kappa = (gamma-1) lambda / (gamma rho_e).
    double kappa(double rho_e) const { return (gamma - 1.0) * lambda / (gamma * rho_e); }
};

struct HeavyState {
    double rho_h = 0.0;  // heavy density
    double u = 0.0;      // velocity
    double p = 0.0;      // total mixture pressure

    void validate() const {
        if (!(rho_h > 0.0)) throw std::domain_error("HeavyState: rho_h must be > 0");
        if (!(p > 0.0)) throw std::domain_error("HeavyState: p must be > 0");
    }

    /// Mixture total energy E = rho_h u^2/2 + p/(gamma-1).
    double total_energy(double gamma) const { return 0.5 * rho_h * u * u + p / (gamma - 1.0); }
};

struct ElectronState {
    double rho_e = 0.0;
    double pe = 0.0;

    void validate() const {
        if (!(rho_e > 0.0)) throw std::domain_error("ElectronState: rho_e must be > 0");
        if (!(pe > 0.0)) throw std::domain_error("ElectronState: pe must be > 0");
    }

    double Te() const { return pe / rho_e; }
    double ee(double gamma) const { return pe / ((gamma - 1.0) * rho_e); }
};

struct PlasmaState {
    HeavyState heavy;
    ElectronState elec;
};

/// c = sqrt(gamma p / rho_h). The electron partial pressure is part of p, so
/// electrons contribute to the mixture sound speed.
double sound_speed(double rho_h, double p, double gamma);

/// Left/right states of a 3-shock traveling wave moving at speed sigma > 0,
/// with mach_r = (sigma - u_r)/c_r > 1 (Lax condition).
struct WaveStates {
    PlasmaState right;
    PlasmaState left;
    double sigma = 0.0;
    double mach_r = 0.0;

    void validate(double gamma) const;
    double velocity_jump() const { return right.heavy.u - left.heavy.u; }  // [u] at xi=0
};

/// Builds a consistent WaveStates: heavy left state from the Rankine-Hugoniot
/// relations, electron left state from the decoupled jump conditions.
WaveStates make_wave_states(const HeavyState& right_heavy, const ElectronState& right_elec,
                            double mach_r, const GasParams& params);

/// Piecewise-constant heavy fields of the prescribed 3-wave: left state for
/// xi = x - x0 - sigma t < 0, right state for xi >= 0.
HeavyState prescribed_heavy_state(const WaveStates& states, double x0, double x, double t);
double prescribed_velocity(const WaveStates& states, double x0, double x, double t);
double shock_position(const WaveStates& states, double x0, double t);

}  // namespace plasmatw
