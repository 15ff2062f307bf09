#include "plasmatw/wave.hpp"

#include <cmath>

namespace plasmatw {

WaveCoefficients wave_coefficients(const GasParams& params, const ElectronState& right, double c_r,
                                   double mach_r) {
    params.validate();
    right.validate();
    if (!(params.D > 0.0) || !(params.lambda > 0.0))
        throw std::domain_error("wave_coefficients: D = 0 or lambda = 0, the two-exponential profile degenerates");

    WaveCoefficients c;
    c.kappa_r = params.kappa(right.rho_e);
    c.eta_r = -c_r * mach_r / params.D;
    c.r_r = params.D / c.kappa_r;
    const double s = 1.0 + c.r_r;
    const double disc = s * s - 4.0 * c.r_r / params.gamma;  // >= 0 for gamma > 1
    const double root = std::sqrt(disc);
    c.delta_plus = 0.5 * c.eta_r * (s + root);
    c.delta_minus = 0.5 * c.eta_r * (s - root);
    return c;
}

ProfileConstants profile_constants(const WaveStates& states, const WaveCoefficients& coeffs) {
    // pe continuity:  rho_e^R (K+ + K-) = pe^L - pe^R
    // Te continuity:  (1 - d+/eta) K+ + (1 - d-/eta) K- = Te^L - Te^R
    const double rhoe_r = states.right.elec.rho_e;
    const double a11 = rhoe_r, a12 = rhoe_r;
    const double a21 = 1.0 - coeffs.delta_plus / coeffs.eta_r;
    const double a22 = 1.0 - coeffs.delta_minus / coeffs.eta_r;
    const double b1 = states.left.elec.pe - states.right.elec.pe;
    const double b2 = states.left.elec.Te() - states.right.elec.Te();

    const double det = a11 * a22 - a12 * a21;
    if (det == 0.0)
        throw std::domain_error("profile_constants: degenerate 2x2 system (delta+ == delta-)");
    return {(b1 * a22 - a12 * b2) / det, (a11 * b2 - b1 * a21) / det};
}

AnalyticProfile::AnalyticProfile(const GasParams& params, const WaveStates& states, double x0)
    : params_(params), states_(states), x0_(x0) {
    states_.validate(params.gamma);
    const double c_r = sound_speed(states.right.heavy.rho_h, states.right.heavy.p, params.gamma);
    coeffs_ = wave_coefficients(params, states.right.elec, c_r, states.mach_r);
    constants_ = profile_constants(states, coeffs_);
}

double AnalyticProfile::pe_xi(double xi) const {
    if (xi <= 0.0) return states_.left.elec.pe;
    return states_.right.elec.pe +
           states_.right.elec.rho_e * (constants_.k_plus * std::exp(coeffs_.delta_plus * xi) +
                                       constants_.k_minus * std::exp(coeffs_.delta_minus * xi));
}

double AnalyticProfile::te_xi(double xi) const {
    if (xi <= 0.0) return states_.left.elec.Te();
    return states_.right.elec.Te() +
           (1.0 - coeffs_.delta_plus / coeffs_.eta_r) * constants_.k_plus * std::exp(coeffs_.delta_plus * xi) +
           (1.0 - coeffs_.delta_minus / coeffs_.eta_r) * constants_.k_minus * std::exp(coeffs_.delta_minus * xi);
}

ElectronState AnalyticProfile::evaluate_xi(double xi) const {
    const double pe = pe_xi(xi);
    const double te = te_xi(xi);
    return {pe / te, pe};
}

ElectronState AnalyticProfile::evaluate(double x, double t) const {
    return evaluate_xi(x - x0_ - states_.sigma * t);
}

double AnalyticProfile::dpe_dxi_0plus() const {
    return states_.right.elec.rho_e *
           (coeffs_.delta_plus * constants_.k_plus + coeffs_.delta_minus * constants_.k_minus);
}

double AnalyticProfile::dte_dxi_0plus() const {
    return (1.0 - coeffs_.delta_plus / coeffs_.eta_r) * coeffs_.delta_plus * constants_.k_plus +
           (1.0 - coeffs_.delta_minus / coeffs_.eta_r) * coeffs_.delta_minus * constants_.k_minus;
}

CompatibilityResidual AnalyticProfile::compatibility_residual() const {
    // Jumps are (value at 0+) - (value at 0-); derivatives vanish on the left.
    const double jump_dpe = dpe_dxi_0plus();
    const double jump_u = states_.velocity_jump();
    CompatibilityResidual r;
    r.res_pe = params_.D * jump_dpe - pe_xi(0.0) * jump_u;
    r.res_te = dte_dxi_0plus();
    return r;
}

}  // namespace plasmatw
