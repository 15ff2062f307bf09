#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plasmatw/core.hpp"
#include "plasmatw/jump.hpp"

namespace plasmatw {

/// Constants obtained by integrating the coupled system once in the wave
/// variable: mass flux, momentum, total energy (including the electron
/// diffusive flux) and electron mass (including electron diffusion).
struct FirstIntegrals {
    double m = 0.0;       // rho_h (u - sigma)
    double c_mom = 0.0;   // m u + p
    double c_en = 0.0;    // (E + p) u - sigma E - (lambda Te' + g/(g-1) D pe')
    double c_emass = 0.0; // rho_e (u - sigma) - D pe'/Te
};

/// Point of the reduced traveling-wave ODE. Heavy density and total pressure
/// are recovered algebraically: rho_h = m/(u - sigma), p = c_mom - m u.
struct CoupledPoint {
    double pe = 0.0;
    double Te = 0.0;
    double u = 0.0;
};

struct CoupledJumpResult {
    double mach_r = 0.0;
    double pe_ratio = 0.0;
    double te_ratio = 0.0;
    CoupledPoint achieved_right;   // trailing-window state of the trajectory
    double residual = 0.0;         // relative max-norm over (pe, Te, rho_h, u)
    double ld_star = 0.0;          // span over which pe covers 99% of its variation
    double pe_left = 0.0;
    bool used_sub_shock = false;
    bool converged = false;
    std::string message;
};

struct TrajectoryPoint {
    double xi;
    CoupledPoint y;
};

struct CoupledTrajectory {
    std::vector<TrajectoryPoint> points;
    bool sub_shock_inserted = false;
    double sub_shock_xi = 0.0;
    bool converged = false;       // approached the right equilibrium line
    double max_cen_drift = 0.0;   // relative drift of the energy integral
    std::string message;
};

/// Traveling-wave problem of the fully coupled system for a prescribed right
/// state and Mach number. Integrals are evaluated at the right equilibrium.
class CoupledWaveProblem {
  public:
    CoupledWaveProblem(const PlasmaState& right, double mach_r, const GasParams& params);

    const FirstIntegrals& integrals() const { return integrals_; }
    double sigma() const { return sigma_; }
    const PlasmaState& right() const { return right_; }
    const GasParams& params() const { return params_; }

    /// Heavy left state of the 3-shock (standard RH of the mixture system)
    /// and the electron density pinned by the electron-mass integral.
    const HeavyState& left_heavy() const { return left_heavy_; }
    double left_rho_e() const { return left_rho_e_; }

    void recover_heavy(double u, double& rho_h, double& p) const;

    /// Reduced ODE right-hand side, d(pe, Te, u)/dxi.
    std::array<double, 3> rhs(const CoupledPoint& y) const;

    /// Heavy sonic function gamma p_h - m (u - sigma); the u' denominator.
    double sonic_denominator(const CoupledPoint& y) const;

    /// Analytic Jacobian at an equilibrium point (one eigenvalue is zero
    /// along the equilibrium line).
    std::array<std::array<double, 3>, 3> jacobian_at_equilibrium(const CoupledPoint& y) const;

    /// Transverse eigenvalue pair of the Jacobian (the zero root removed).
    std::array<double, 2> transverse_eigenvalues(const CoupledPoint& y) const;

    /// Conjugate state across a heavy-only sub-shock in the sigma frame
    /// (Prandtl relation); electron variables continuous across it.
    HeavyState heavy_conjugate(const HeavyState& h, double pe) const;

    /// Integrates from the left-family member with electron pressure pe_left;
    /// inserts the heavy sub-shock at departure when the left state is
    /// heavy-subsonic, otherwise leaves along the unstable eigendirection.
    CoupledTrajectory integrate(double pe_left, double span_multiplier = 60.0,
                                int max_output_points = 2000) const;

    /// Missing jump condition by bisection over pe_left.
    CoupledJumpResult shoot(double tolerance = 1e-9) const;

  private:
    struct Departure {
        CoupledPoint y0;
        bool sub_shock;
    };
    Departure departure_point(double pe_left) const;
    std::array<double, 2> trailing_mean(const std::vector<TrajectoryPoint>& pts) const;

    GasParams params_;
    PlasmaState right_;
    double mach_r_ = 0.0;
    double sigma_ = 0.0;
    FirstIntegrals integrals_;
    HeavyState left_heavy_;
    double left_rho_e_ = 0.0;
    double xi_scale_ = 1.0;  // slow decay length of the decoupled right state
};

/// Frozen-velocity reduction: with u held at the right-state value the
/// electron equations integrate to a linear 2x2 system in (pe, Te); its
/// Jacobian must reproduce the decoupled eigenvalues delta±.
std::array<double, 2> decoupled_frozen_rhs(double pe, double Te, const ElectronState& right_ref,
                                           double u_frozen, double sigma, const GasParams& params);

struct MachSweepRow {
    double mach = 0.0;
    bool coupled_ok = false;
    double pe_coupled = 0.0, te_coupled = 0.0;
    std::optional<JumpRatios> decoupled;  // empty outside the validity domain
    JumpRatios entropy;
    JumpRatios source;
    double residual = 0.0;
    double ld_star = 0.0;
    std::string message;
};

std::vector<MachSweepRow> mach_sweep(std::span<const double> mach_values, const PlasmaState& right,
                                     const GasParams& params);

}  // namespace plasmatw
