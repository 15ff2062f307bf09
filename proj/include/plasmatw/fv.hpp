#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "plasmatw/diagnostics.hpp"
#include "plasmatw/wave.hpp"

namespace plasmatw {

struct Grid1D {
    int n_cells = 0;
    double length = 0.0;

    double dx() const { return length / n_cells; }
    double x_center(int j) const { return (j + 0.5) * dx(); }
    double x_iface(int i) const { return i * dx(); }

    void validate() const {
        if (n_cells <= 0 || !(length > 0.0)) throw std::domain_error("Grid1D: need n_cells > 0 and length > 0");
    }
};

/// Conserved electron unknowns per cell: u1 = rho_e, u2 = rho_e e_e.
struct FieldState {
    std::vector<double> u1;
    std::vector<double> u2;
    double time = 0.0;
};

enum class SchemeKind : std::uint8_t { A, B, C };
enum class FluxKind : std::uint8_t { GodunovUpwind, LaxFriedrichs };

SchemeKind scheme_from_string(const std::string& s);
std::string to_string(SchemeKind);
FluxKind flux_from_string(const std::string& s);
std::string to_string(FluxKind);

struct SchemeConfig {
    SchemeKind scheme = SchemeKind::B;
    FluxKind flux = FluxKind::GodunovUpwind;
    double courant = 0.2;
    double fourier_constant = 1.25;
    // Half-width (in cells) of the window around the shock where the first
    // order correction terms are suppressed. 0 keeps them active everywhere;
    // capture quality degrades for narrow nonzero windows (see README).
    double correction_cutoff = 0.0;
    bool corrections = true;  // false selects the compatibility-only variant
    bool wave_at_shock_interfaces = true;

    void validate() const {
        if (!(courant > 0.0 && courant <= 1.0)) throw std::domain_error("SchemeConfig: courant in (0,1]");
        if (!(fourier_constant > 0.0)) throw std::domain_error("SchemeConfig: fourier_constant > 0");
        if (flux == FluxKind::LaxFriedrichs && scheme != SchemeKind::C)
            throw std::domain_error(
                "SchemeConfig: the Lax-Friedrichs flux needs a CFL-sized step; use it with scheme C");
    }
};

struct Timesteps {
    double dt_conv = 0.0;     // C dx / max(u + c)
    double dt_fourier = 0.0;  // fourier_constant dx^2 / max(D, kappa^R)
    // von Neumann bound of the explicit diffusion update, from the largest
    // eigenvalue of the quasi-linear diffusion matrix over both states
    double dt_diff_stable = 0.0;
};

Timesteps timesteps(const SchemeConfig& config, const Grid1D& grid, const WaveStates& states,
                    const GasParams& params);

/// Largest eigenvalue of the quasi-linear diffusion matrix at a state.
double diffusion_mu_max(const GasParams& params, double rho_e);

using FluxPair = std::array<double, 2>;

FluxPair convective_flux(FluxKind kind, const FluxPair& u_left, const FluxPair& u_right,
                         double u_interface, double dx, double dt);

FluxPair diffusive_flux(const GasParams& params, double dx, double u1_j, double u2_j, double u1_jp1,
                        double u2_jp1);

/// Exact time-integral form of the standard nonconservative term:
/// -(gamma-1) u2_j [u] tau_j / dx, with tau_j the time the shock spends in
/// cell j during the step.
double nc_standard(const WaveStates& states, double x0, const Grid1D& grid, int cell, double t_n,
                   double dt, double u2_j, double gamma);

/// Time the shock position spends inside cell j during [t_n, t_n + dt].
double shock_residence_time(const WaveStates& states, double x0, const Grid1D& grid, int cell,
                            double t_n, double dt);

/// Compatibility-based nonconservative term assembled from same-level fluxes.
double nc_compat(const FluxPair& fc_plus, const FluxPair& fc_minus, double T_j, double T_jm1,
                 double T_jp1, double fd1_plus, double fd1_minus, double dt, double dx, double gamma);

/// Adds the first-order consistency corrections to a nc_compat value; they
/// are dropped when `suppressed` is set by the cutoff detector.
double nc_corrected(double nc_compat_value, double u_j, double u1_j, double u1_jm1, double u2_j,
                    double u2_jm1, double T_j, double dt, double dx, double gamma, bool suppressed);

class PositivityError : public std::runtime_error {
  public:
    PositivityError(int cell, double time, const std::string& what_component)
        : std::runtime_error("positivity failure in cell " + std::to_string(cell) + " at t = " +
                             std::to_string(time) + " (" + what_component + ")"),
          cell_(cell),
          time_(time) {}
    int cell() const { return cell_; }
    double time() const { return time_; }

  private:
    int cell_;
    double time_;
};

class BoundaryProximityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Explicit finite-volume integrator for the electron subsystem with
/// prescribed heavy fields. Scheme A/B advance unsplit steps at the diffusive
/// timestep; scheme C composes Strang half-steps of sub-cycled diffusion
/// around one convective step at the CFL timestep.
class FvSolver {
  public:
    FvSolver(const SchemeConfig& config, const Grid1D& grid, const AnalyticProfile& profile);

    FieldState initial_state() const;

    /// One step of the configured scheme. Throws PositivityError if a cell
    /// goes nonpositive.
    void step(FieldState& field, double dt);

    const Timesteps& dts() const { return dts_; }
    /// Step actually used by run(): fourier-requested capped by the stability
    /// bound (and by convection) for A/B, convective CFL for C.
    double base_dt() const;

    long convective_sweeps() const { return convective_sweeps_; }
    long diffusive_sweeps() const { return diffusive_sweeps_; }
    double max_mass_budget_residual() const { return max_mass_budget_residual_; }

    const Grid1D& grid() const { return grid_; }
    const AnalyticProfile& profile() const { return profile_; }
    const SchemeConfig& config() const { return config_; }

  private:
    void unsplit_step(FieldState& field, double dt);
    void diffusion_step(FieldState& field, double dt);
    void convective_nc_step(FieldState& field, double dt);
    void compute_diffusive_fluxes(const FieldState& field);
    void compute_convective_fluxes(const FieldState& field, double t_sample, double dt);
    void load_ghosts(const FieldState& field);

    SchemeConfig config_;
    Grid1D grid_;
    AnalyticProfile profile_;
    GasParams params_;
    Timesteps dts_;

    // workspace, interface arrays sized n+1
    std::vector<double> T_;  // ghost-extended temperatures, size n+2
    std::vector<double> fc1_, fc2_, fd1_, fd2_;
    FluxPair ghost_left_{}, ghost_right_{};

    long convective_sweeps_ = 0;
    long diffusive_sweeps_ = 0;
    double max_mass_budget_residual_ = 0.0;
};

struct RunResult {
    FieldState field;
    ErrorReport report;
    long steps = 0;
    long convective_sweeps = 0;
    long diffusive_sweeps = 0;
    double dt_used = 0.0;
    double max_mass_budget_residual = 0.0;
};

/// Advances from the analytic initial data to t_final, truncating the last
/// step to land exactly on it. `on_output` is invoked at each requested
/// output time (and at t_final) with the current field.
RunResult run(const SchemeConfig& config, const Grid1D& grid, const AnalyticProfile& profile,
              double t_final, const std::vector<double>& output_times = {},
              const std::function<void(const FieldState&)>& on_output = {});

}  // namespace plasmatw
