#include "plasmatw/jump.hpp"

#include <cmath>

namespace plasmatw {

Rh3Result rh_3shock(const HeavyState& right, double mach_r, double gamma) {
    right.validate();
    if (!(mach_r >= 1.0)) throw std::domain_error("rh_3shock: mach_r < 1 is not a Lax 3-shock");

    const double m2 = mach_r * mach_r;
    const double c_r = sound_speed(right.rho_h, right.p, gamma);

    Rh3Result out;
    out.sigma = right.u + mach_r * c_r;
    out.left.rho_h = right.rho_h * (gamma + 1.0) * m2 / ((gamma - 1.0) * m2 + 2.0);
    out.left.p = right.p * (2.0 * gamma * m2 - (gamma - 1.0)) / (gamma + 1.0);
    out.left.u = out.sigma - (out.sigma - right.u) * right.rho_h / out.left.rho_h;
    return out;
}

JumpRatios jump_decoupled(double mach_r, double gamma) {
    if (!(mach_r >= 1.0)) throw std::domain_error("jump_decoupled: mach_r must be >= 1");
    const double m2 = mach_r * mach_r;
    const double den = (1.0 - gamma) * m2 + 2.0 * gamma;
    if (!(den > 0.0))
        throw std::domain_error("jump_decoupled: M^2 >= 2 gamma/(gamma-1), outside the validity domain");
    JumpRatios jr;
    jr.pe_ratio = (gamma + 1.0) * m2 / den;
    jr.te_ratio = ((gamma - 1.0) * m2 + 2.0) / den;
    jr.rhoe_ratio = (gamma + 1.0) * m2 / ((gamma - 1.0) * m2 + 2.0);
    return jr;
}

JumpRatios jump_entropy(double mach_r, double gamma) {
    if (!(mach_r >= 1.0)) throw std::domain_error("jump_entropy: mach_r must be >= 1");
    const double m2 = mach_r * mach_r;
    const double base = (gamma + 1.0) * m2 / ((gamma - 1.0) * m2 + 2.0);
    JumpRatios jr;
    jr.pe_ratio = std::pow(base, gamma);
    jr.te_ratio = std::pow(base, gamma - 1.0);
    jr.rhoe_ratio = base;
    return jr;
}

JumpRatios jump_source(double mach_r, double gamma) {
    if (!(mach_r >= 1.0)) throw std::domain_error("jump_source: mach_r must be >= 1");
    const double m2 = mach_r * mach_r;
    const double base = (gamma + 1.0) * m2 / ((gamma - 1.0) * m2 + 2.0);
    return {base, 1.0, base};
}

CharLengths char_lengths(const GasParams& params, double rho_e_r, double velocity_jump) {
    params.validate();
    const double ju = std::abs(velocity_jump);
    if (!(ju > 0.0)) throw std::domain_error("char_lengths: velocity jump is zero, lengths are infinite");
    return {params.D / ju, params.kappa(rho_e_r) / ju};
}

}  // namespace plasmatw
