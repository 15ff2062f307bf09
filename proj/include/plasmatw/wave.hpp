#pragma once

#include "plasmatw/core.hpp"

namespace plasmatw {

/// Coefficients of the linear ODE system governing the electron variables on
/// xi > 0: eta_r = -c_R M_R / D, r_r = D/kappa^R, and the two (negative)
/// decay eigenvalues delta±.
struct WaveCoefficients {
    double eta_r = 0.0;
    double r_r = 0.0;
    double kappa_r = 0.0;
    double delta_plus = 0.0;
    double delta_minus = 0.0;
};

WaveCoefficients wave_coefficients(const GasParams& params, const ElectronState& right, double c_r,
                                   double mach_r);

/// Integration constants K^{R±} from continuity of pe and Te at xi = 0.
struct ProfileConstants {
    double k_plus = 0.0;
    double k_minus = 0.0;
};

ProfileConstants profile_constants(const WaveStates& states, const WaveCoefficients& coeffs);

struct CompatibilityResidual {
    double res_pe = 0.0;  // D [pe'] - pe(0) [u]
    double res_te = 0.0;  // [Te']
};

/// Closed-form piecewise-smooth traveling wave of the decoupled electron
/// subsystem: the constant left state for xi <= 0 and a two-exponential decay
/// toward the right state for xi > 0.
class AnalyticProfile {
  public:
    AnalyticProfile(const GasParams& params, const WaveStates& states, double x0);

    const WaveStates& states() const { return states_; }
    const WaveCoefficients& coefficients() const { return coeffs_; }
    const GasParams& params() const { return params_; }
    double x0() const { return x0_; }
    double k_plus() const { return constants_.k_plus; }
    double k_minus() const { return constants_.k_minus; }

    double pe_xi(double xi) const;
    double te_xi(double xi) const;
    ElectronState evaluate_xi(double xi) const;
    ElectronState evaluate(double x, double t) const;

    /// One-sided analytic derivatives at xi = 0+ (the left-side derivatives
    /// vanish identically).
    double dpe_dxi_0plus() const;
    double dte_dxi_0plus() const;

    double shock_position(double t) const { return x0_ + states_.sigma * t; }

    CompatibilityResidual compatibility_residual() const;

  private:
    GasParams params_;
    WaveStates states_;
    double x0_;
    WaveCoefficients coeffs_;
    ProfileConstants constants_;
};

}  // namespace plasmatw
