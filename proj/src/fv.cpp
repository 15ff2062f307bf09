#include "plasmatw/fv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace plasmatw {

SchemeKind scheme_from_string(const std::string& s) {
    if (s == "A" || s == "a") return SchemeKind::A;
    if (s == "B" || s == "b") return SchemeKind::B;
    if (s == "C" || s == "c") return SchemeKind::C;
    throw std::invalid_argument("unknown scheme '" + s + "' (expected A, B or C)");
}

std::string to_string(SchemeKind k) {
    switch (k) {
        case SchemeKind::A: return "A";
        case SchemeKind::B: return "B";
        case SchemeKind::C: return "C";
    }
    return "?";
}

FluxKind flux_from_string(const std::string& s) {
    if (s == "godunov-upwind" || s == "godunov") return FluxKind::GodunovUpwind;
    if (s == "lax-friedrichs" || s == "lf") return FluxKind::LaxFriedrichs;
    throw std::invalid_argument("unknown flux '" + s + "' (expected godunov-upwind or lax-friedrichs)");
}

std::string to_string(FluxKind k) {
    return k == FluxKind::GodunovUpwind ? "godunov-upwind" : "lax-friedrichs";
}

double diffusion_mu_max(const GasParams& params, double rho_e) {
    // Quasi-linear diffusion matrix in (u1, u2):
    //   [ 0            D(gamma-1)/T ]
    //   [ -lambda T/rho_e   gamma (kappa + D) ]
    // trace = gamma (kappa + D), det = gamma D kappa; both eigenvalues real
    // and positive.
    const double kap = params.kappa(rho_e);
    const double tr = params.gamma * (params.D + kap);
    const double det = params.gamma * params.D * kap;
    return 0.5 * (tr + std::sqrt(std::max(tr * tr - 4.0 * det, 0.0)));
}

Timesteps timesteps(const SchemeConfig& config, const Grid1D& grid, const WaveStates& states,
                    const GasParams& params) {
    config.validate();
    grid.validate();
    const double dx = grid.dx();
    const double c_r = sound_speed(states.right.heavy.rho_h, states.right.heavy.p, params.gamma);
    const double c_l = sound_speed(states.left.heavy.rho_h, states.left.heavy.p, params.gamma);
    const double cmax = std::max(states.right.heavy.u + c_r, states.left.heavy.u + c_l);

    Timesteps t;
    t.dt_conv = config.courant * dx / cmax;
    const double kappa_r = params.kappa(states.right.elec.rho_e);
    t.dt_fourier = config.fourier_constant * dx * dx / std::max(params.D, kappa_r);
    const double mu = std::max(diffusion_mu_max(params, states.right.elec.rho_e),
                               diffusion_mu_max(params, states.left.elec.rho_e));
    t.dt_diff_stable = dx * dx / (2.0 * mu);
    return t;
}

FluxPair convective_flux(FluxKind kind, const FluxPair& u_left, const FluxPair& u_right,
                         double u_interface, double dx, double dt) {
    if (kind == FluxKind::GodunovUpwind) {
        const FluxPair& up = u_interface >= 0.0 ? u_left : u_right;
        return {u_interface * up[0], u_interface * up[1]};
    }
    const double a = dx / (2.0 * dt);
    return {0.5 * u_interface * (u_left[0] + u_right[0]) - a * (u_right[0] - u_left[0]),
            0.5 * u_interface * (u_left[1] + u_right[1]) - a * (u_right[1] - u_left[1])};
}

FluxPair diffusive_flux(const GasParams& params, double dx, double u1_j, double u2_j, double u1_jp1,
                        double u2_jp1) {
    const double g = params.gamma;
    const double T_j = (g - 1.0) * u2_j / u1_j;
    const double T_jp1 = (g - 1.0) * u2_jp1 / u1_jp1;
    const double T_half = 0.5 * (T_j + T_jp1);
    const double du2 = u2_jp1 - u2_j;
    return {params.D * (g - 1.0) / T_half * du2 / dx,
            (params.lambda * (T_jp1 - T_j) + params.D * g * du2) / dx};
}

double shock_residence_time(const WaveStates& states, double x0, const Grid1D& grid, int cell,
                            double t_n, double dt) {
    const double xs0 = shock_position(states, x0, t_n);
    const double xl = grid.x_iface(cell);
    const double xr = grid.x_iface(cell + 1);
    // shock trajectory is linear: entry/exit times of [xl, xr)
    const double t_in = t_n + (xl - xs0) / states.sigma;
    const double t_out = t_n + (xr - xs0) / states.sigma;
    const double lo = std::max(t_in, t_n);
    const double hi = std::min(t_out, t_n + dt);
    return std::max(0.0, hi - lo);
}

double nc_standard(const WaveStates& states, double x0, const Grid1D& grid, int cell, double t_n,
                   double dt, double u2_j, double gamma) {
    const double tau = shock_residence_time(states, x0, grid, cell, t_n, dt);
    if (tau == 0.0) return 0.0;
    const double jump_u = states.velocity_jump();  // u_r - u_l
    return -(gamma - 1.0) * u2_j * jump_u * tau / grid.dx();
}

double nc_compat(const FluxPair& fc_plus, const FluxPair& fc_minus, double T_j, double T_jm1,
                 double T_jp1, double fd1_plus, double fd1_minus, double dt, double dx, double gamma) {
    const double r = dt / dx;
    const double g1 = gamma / (gamma - 1.0);
    const double fncd_plus = 0.5 * g1 * (T_jp1 - T_j) * fd1_plus;
    const double fncd_minus = 0.5 * g1 * (T_jm1 - T_j) * fd1_minus;
    return r * (fc_plus[1] - fc_minus[1]) - g1 * T_j * r * (fc_plus[0] - fc_minus[0]) -
           r * (fncd_plus - fncd_minus);
}

double nc_corrected(double nc_compat_value, double u_j, double u1_j, double u1_jm1, double u2_j,
                    double u2_jm1, double T_j, double dt, double dx, double gamma, bool suppressed) {
    if (suppressed) return nc_compat_value;
    const double g1 = gamma / (gamma - 1.0);
    return nc_compat_value - dt * u_j * (u2_j - u2_jm1) / dx + dt * g1 * u_j * T_j * (u1_j - u1_jm1) / dx;
}

FvSolver::FvSolver(const SchemeConfig& config, const Grid1D& grid, const AnalyticProfile& profile)
    : config_(config), grid_(grid), profile_(profile), params_(profile.params()) {
    config_.validate();
    grid_.validate();
    dts_ = timesteps(config_, grid_, profile_.states(), params_);
    const int n = grid_.n_cells;
    T_.resize(n + 2);
    fc1_.resize(n + 1);
    fc2_.resize(n + 1);
    fd1_.resize(n + 1);
    fd2_.resize(n + 1);
}

FieldState FvSolver::initial_state() const {
    const int n = grid_.n_cells;
    FieldState f;
    f.u1.resize(n);
    f.u2.resize(n);
    f.time = 0.0;
    const double g = params_.gamma;
    for (int j = 0; j < n; ++j) {
        const ElectronState e = profile_.evaluate(grid_.x_center(j), 0.0);
        f.u1[j] = e.rho_e;
        f.u2[j] = e.pe / (g - 1.0);
    }
    return f;
}

double FvSolver::base_dt() const {
    if (config_.scheme == SchemeKind::C) return dts_.dt_conv;
    const double dt_diff = std::min(dts_.dt_fourier, 0.9 * dts_.dt_diff_stable);
    return std::min(dt_diff, 0.9 * dts_.dt_conv / config_.courant);  // CFL guard at courant 0.9
}

void FvSolver::load_ghosts(const FieldState& field) {
    const double g = params_.gamma;
    const double dx = grid_.dx();
    const ElectronState gl = profile_.evaluate(-0.5 * dx, field.time);
    const ElectronState gr = profile_.evaluate(grid_.length + 0.5 * dx, field.time);
    ghost_left_ = {gl.rho_e, gl.pe / (g - 1.0)};
    ghost_right_ = {gr.rho_e, gr.pe / (g - 1.0)};
}

void FvSolver::compute_diffusive_fluxes(const FieldState& field) {
    const int n = grid_.n_cells;
    const double g = params_.gamma;
    const double dx = grid_.dx();
    const double* u1 = field.u1.data();
    const double* u2 = field.u2.data();

    T_[0] = (g - 1.0) * ghost_left_[1] / ghost_left_[0];
    for (int j = 0; j < n; ++j) T_[j + 1] = (g - 1.0) * u2[j] / u1[j];
    T_[n + 1] = (g - 1.0) * ghost_right_[1] / ghost_right_[0];

    const double cD = params_.D * (g - 1.0);
    const double cDg = params_.D * g;
    const double lam = params_.lambda;

    // interface i sits between extended cells i and i+1 of T_
    {
        const double du2 = u2[0] - ghost_left_[1];
        fd1_[0] = cD / (0.5 * (T_[0] + T_[1])) * du2 / dx;
        fd2_[0] = (lam * (T_[1] - T_[0]) + cDg * du2) / dx;
    }
    for (int i = 1; i < n; ++i) {
        const double du2 = u2[i] - u2[i - 1];
        fd1_[i] = cD / (0.5 * (T_[i] + T_[i + 1])) * du2 / dx;
        fd2_[i] = (lam * (T_[i + 1] - T_[i]) + cDg * du2) / dx;
    }
    {
        const double du2 = ghost_right_[1] - u2[n - 1];
        fd1_[n] = cD / (0.5 * (T_[n] + T_[n + 1])) * du2 / dx;
        fd2_[n] = (lam * (T_[n + 1] - T_[n]) + cDg * du2) / dx;
    }
}

void FvSolver::compute_convective_fluxes(const FieldState& field, double t_sample, double dt) {
    const int n = grid_.n_cells;
    const double dx = grid_.dx();
    const double* u1 = field.u1.data();
    const double* u2 = field.u2.data();
    const WaveStates& w = profile_.states();
    const double xs = profile_.shock_position(t_sample);
    const double u_l = w.left.heavy.u;
    const double u_r = w.right.heavy.u;
    const double g = params_.gamma;

    auto cell_value = [&](int j) -> FluxPair {
        if (j < 0) return ghost_left_;
        if (j >= n) return ghost_right_;
        return {u1[j], u2[j]};
    };

    const int js = static_cast<int>(std::floor(xs / dx));
    for (int i = 0; i <= n; ++i) {
        const double x_i = grid_.x_iface(i);
        const double vel = x_i - xs < 0.0 ? u_l : u_r;
        FluxPair left = cell_value(i - 1);
        FluxPair right = cell_value(i);
        if (config_.wave_at_shock_interfaces && (i == js || i == js + 1)) {
            const ElectronState e = profile_.evaluate(x_i, t_sample);
            const FluxPair wave_state{e.rho_e, e.pe / (g - 1.0)};
            left = wave_state;
            right = wave_state;
        }
        const FluxPair f = convective_flux(config_.flux, left, right, vel, dx, dt);
        fc1_[i] = f[0];
        fc2_[i] = f[1];
    }
}

namespace {
inline void check_positive(const FieldState& f, double t) {
    const int n = static_cast<int>(f.u1.size());
    for (int j = 0; j < n; ++j) {
        if (!(f.u1[j] > 0.0)) throw PositivityError(j, t, "u1");
        if (!(f.u2[j] > 0.0)) throw PositivityError(j, t, "u2");
    }
}
}  // namespace

void FvSolver::unsplit_step(FieldState& field, double dt) {
    const int n = grid_.n_cells;
    const double dx = grid_.dx();
    const double g = params_.gamma;
    const double r = dt / dx;
    const WaveStates& w = profile_.states();
    const double t_n = field.time;

    load_ghosts(field);
    compute_diffusive_fluxes(field);
    compute_convective_fluxes(field, t_n, dt);

    const double mass_before = std::accumulate(field.u1.begin(), field.u1.end(), 0.0);

    double* u1 = field.u1.data();
    double* u2 = field.u2.data();

    if (config_.scheme == SchemeKind::A) {
        for (int j = 0; j < n; ++j) {
            const double nc = nc_standard(w, profile_.x0(), grid_, j, t_n, dt, u2[j], g);
            u1[j] += -r * (fc1_[j + 1] - fc1_[j]) + r * (fd1_[j + 1] - fd1_[j]);
            u2[j] += -r * (fc2_[j + 1] - fc2_[j]) + r * (fd2_[j + 1] - fd2_[j]) + nc;
        }
    } else {
        const double xs0 = profile_.shock_position(t_n);
        const double xs1 = profile_.shock_position(t_n + dt);
        const double cutoff = config_.correction_cutoff * dx;
        for (int j = 0; j < n; ++j) {
            const double T_j = T_[j + 1];
            double nc = nc_compat({fc1_[j + 1], fc2_[j + 1]}, {fc1_[j], fc2_[j]}, T_j, T_[j], T_[j + 2],
                                  fd1_[j + 1], fd1_[j], dt, dx, g);
            if (config_.corrections) {
                const double xc = grid_.x_center(j);
                const bool suppressed = cutoff > 0.0 && (std::abs(xc - xs0) <= cutoff ||
                                                         std::abs(xc - xs1) <= cutoff);
                const double u_j = prescribed_velocity(w, profile_.x0(), xc, t_n);
                const double u1m = j > 0 ? u1[j - 1] : ghost_left_[0];
                const double u2m = j > 0 ? u2[j - 1] : ghost_left_[1];
                nc = nc_corrected(nc, u_j, u1[j], u1m, u2[j], u2m, T_j, dt, dx, g, suppressed);
            }
            u1[j] += -r * (fc1_[j + 1] - fc1_[j]) + r * (fd1_[j + 1] - fd1_[j]);
            u2[j] += -r * (fc2_[j + 1] - fc2_[j]) + r * (fd2_[j + 1] - fd2_[j]) + nc;
        }
    }
    ++convective_sweeps_;
    ++diffusive_sweeps_;

    const double mass_after = std::accumulate(field.u1.begin(), field.u1.end(), 0.0);
    const double boundary = dt * ((fc1_[n] - fc1_[0]) - (fd1_[n] - fd1_[0])) / dx;
    max_mass_budget_residual_ =
        std::max(max_mass_budget_residual_, std::abs(mass_after - mass_before + boundary));

    field.time = t_n + dt;
    check_positive(field, field.time);
}

void FvSolver::diffusion_step(FieldState& field, double dt) {
    const int n = grid_.n_cells;
    const double r = dt / grid_.dx();

    load_ghosts(field);
    compute_diffusive_fluxes(field);

    double* u1 = field.u1.data();
    double* u2 = field.u2.data();
    for (int j = 0; j < n; ++j) {
        u1[j] += r * (fd1_[j + 1] - fd1_[j]);
        u2[j] += r * (fd2_[j + 1] - fd2_[j]);
    }
    ++diffusive_sweeps_;
    field.time += dt;
    check_positive(field, field.time);
}

void FvSolver::convective_nc_step(FieldState& field, double dt) {
    const int n = grid_.n_cells;
    const double dx = grid_.dx();
    const double g = params_.gamma;
    const double r = dt / dx;
    const WaveStates& w = profile_.states();
    const double t_start = field.time;
    const double t_mid = t_start + 0.5 * dt;

    load_ghosts(field);
    compute_diffusive_fluxes(field);  // enters the nonconservative expression only
    compute_convective_fluxes(field, t_mid, dt);

    const double mass_before = std::accumulate(field.u1.begin(), field.u1.end(), 0.0);

    double* u1 = field.u1.data();
    double* u2 = field.u2.data();
    const double xs0 = profile_.shock_position(t_start);
    const double xs1 = profile_.shock_position(t_start + dt);
    const double cutoff = config_.correction_cutoff * dx;

    for (int j = 0; j < n; ++j) {
        const double T_j = T_[j + 1];
        double nc = nc_compat({fc1_[j + 1], fc2_[j + 1]}, {fc1_[j], fc2_[j]}, T_j, T_[j], T_[j + 2],
                              fd1_[j + 1], fd1_[j], dt, dx, g);
        if (config_.corrections) {
            const double xc = grid_.x_center(j);
            const bool suppressed =
                cutoff > 0.0 && (std::abs(xc - xs0) <= cutoff || std::abs(xc - xs1) <= cutoff);
            const double u_j = prescribed_velocity(w, profile_.x0(), xc, t_mid);
            const double u1m = j > 0 ? u1[j - 1] : ghost_left_[0];
            const double u2m = j > 0 ? u2[j - 1] : ghost_left_[1];
            nc = nc_corrected(nc, u_j, u1[j], u1m, u2[j], u2m, T_j, dt, dx, g, suppressed);
        }
        u1[j] += -r * (fc1_[j + 1] - fc1_[j]);
        u2[j] += -r * (fc2_[j + 1] - fc2_[j]) + nc;
    }
    ++convective_sweeps_;

    const double mass_after = std::accumulate(field.u1.begin(), field.u1.end(), 0.0);
    const double boundary = dt * (fc1_[n] - fc1_[0]) / dx;
    max_mass_budget_residual_ =
        std::max(max_mass_budget_residual_, std::abs(mass_after - mass_before + boundary));

    check_positive(field, t_start + dt);
}

void FvSolver::step(FieldState& field, double dt) {
    if (config_.scheme != SchemeKind::C) {
        unsplit_step(field, dt);
        return;
    }
    // Strang composition Y^{dt/2} X^{dt} Y^{dt/2}; Y is sub-cycled at the
    // diffusive stability limit.
    const double t_start = field.time;
    const double dt_diff = std::min(std::min(dts_.dt_fourier, 0.9 * dts_.dt_diff_stable), 0.5 * dt);
    const long n_sub = std::max(1L, static_cast<long>(std::ceil(0.5 * dt / dt_diff)));
    const double sub = 0.5 * dt / n_sub;

    for (long k = 0; k < n_sub; ++k) diffusion_step(field, sub);
    field.time = t_start;  // X samples the prescribed fields over [t, t+dt]
    convective_nc_step(field, dt);
    field.time = t_start + 0.5 * dt;
    for (long k = 0; k < n_sub; ++k) diffusion_step(field, sub);
    field.time = t_start + dt;
}

RunResult run(const SchemeConfig& config, const Grid1D& grid, const AnalyticProfile& profile,
              double t_final, const std::vector<double>& output_times,
              const std::function<void(const FieldState&)>& on_output) {
    FvSolver solver(config, grid, profile);
    FieldState field = solver.initial_state();

    std::vector<double> outputs = output_times;
    std::sort(outputs.begin(), outputs.end());
    std::size_t next_output = 0;

    const double dt_base = solver.base_dt();
    const double margin = 5.0 * grid.dx();
    RunResult result;

    while (field.time < t_final) {
        const double xs = profile.shock_position(field.time);
        if (xs > grid.length - margin || xs < margin)
            throw BoundaryProximityError("wave within 5 cells of the domain boundary at t = " +
                                         std::to_string(field.time));

        double dt = std::min(dt_base, t_final - field.time);
        while (next_output < outputs.size() && outputs[next_output] <= field.time + 1e-14) {
            if (on_output) on_output(field);
            ++next_output;
        }
        if (next_output < outputs.size()) dt = std::min(dt, outputs[next_output] - field.time);

        solver.step(field, dt);
        ++result.steps;
    }
    if (on_output) on_output(field);

    result.report = error_split(field, profile, grid);
    result.convective_sweeps = solver.convective_sweeps();
    result.diffusive_sweeps = solver.diffusive_sweeps();
    result.dt_used = dt_base;
    result.max_mass_budget_residual = solver.max_mass_budget_residual();
    result.field = std::move(field);
    return result;
}

}  // namespace plasmatw
