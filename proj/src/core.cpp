#include "plasmatw/core.hpp"

#include <cmath>

#include "plasmatw/jump.hpp"

namespace plasmatw {

double sound_speed(double rho_h, double p, double gamma) {
    if (!(rho_h > 0.0) || !(p > 0.0))
        throw std::domain_error("sound_speed: rho_h and p must be > 0");
    return std::sqrt(gamma * p / rho_h);
}

void WaveStates::validate(double gamma) const {
    right.heavy.validate();
    right.elec.validate();
    left.heavy.validate();
    left.elec.validate();
    if (!(sigma > 0.0)) throw std::domain_error("WaveStates: sigma must be > 0");
    const double c_r = sound_speed(right.heavy.rho_h, right.heavy.p, gamma);
    const double c_l = sound_speed(left.heavy.rho_h, left.heavy.p, gamma);
    const double m_r = (sigma - right.heavy.u) / c_r;
    const double m_l = (sigma - left.heavy.u) / c_l;
    if (!(m_r > 1.0)) throw std::domain_error("WaveStates: Lax condition (sigma-u_r)/c_r > 1 violated");
    if (!(m_l < 1.0)) throw std::domain_error("WaveStates: Lax condition (sigma-u_l)/c_l < 1 violated");
}

WaveStates make_wave_states(const HeavyState& right_heavy, const ElectronState& right_elec,
                            double mach_r, const GasParams& params) {
    params.validate();
    right_heavy.validate();
    right_elec.validate();

    WaveStates w;
    w.right = {right_heavy, right_elec};
    w.mach_r = mach_r;

    const auto rh = rh_3shock(right_heavy, mach_r, params.gamma);
    w.left.heavy = rh.left;
    w.sigma = rh.sigma;

    const JumpRatios jr = jump_decoupled(mach_r, params.gamma);
    w.left.elec.rho_e = right_elec.rho_e * jr.rhoe_ratio;
    w.left.elec.pe = right_elec.pe * jr.pe_ratio;

    w.validate(params.gamma);
    return w;
}

double shock_position(const WaveStates& states, double x0, double t) {
    return x0 + states.sigma * t;
}

HeavyState prescribed_heavy_state(const WaveStates& states, double x0, double x, double t) {
    const double xi = x - x0 - states.sigma * t;
    return xi < 0.0 ? states.left.heavy : states.right.heavy;  // xi = 0 maps to the right state
}

double prescribed_velocity(const WaveStates& states, double x0, double x, double t) {
    const double xi = x - x0 - states.sigma * t;
    return xi < 0.0 ? states.left.heavy.u : states.right.heavy.u;
}

}  // namespace plasmatw
