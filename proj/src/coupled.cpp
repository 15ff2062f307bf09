#include "plasmatw/coupled.hpp"

#include <algorithm>
#include <cmath>

#include "plasmatw/dop853.hpp"
#include "plasmatw/wave.hpp"

namespace plasmatw {

namespace {

// Quadratic coefficients of F_E(u) = E(u-sigma) + p u with the heavy state
// recovered from the mass and momentum integrals:
//   F_E(u) = a u^2 + b u + c,
//   a = -m (gamma+1) / (2 (gamma-1)),
//   b = (gamma c_mom + m sigma) / (gamma - 1),
//   c = -c_mom sigma / (gamma - 1).
struct EnergyQuadratic {
    double a, b, c;
    double value(double u) const { return (a * u + b) * u + c; }
    double derivative(double u) const { return 2.0 * a * u + b; }
};

EnergyQuadratic energy_quadratic(double m, double c_mom, double sigma, double gamma) {
    return {-m * (gamma + 1.0) / (2.0 * (gamma - 1.0)),
            (gamma * c_mom + m * sigma) / (gamma - 1.0),
            -c_mom * sigma / (gamma - 1.0)};
}

}  // namespace

CoupledWaveProblem::CoupledWaveProblem(const PlasmaState& right, double mach_r,
                                       const GasParams& params)
    : params_(params), right_(right), mach_r_(mach_r) {
    params_.validate();
    right_.heavy.validate();
    right_.elec.validate();
    if (!(params_.D > 0.0) || !(params_.lambda > 0.0))
        throw std::domain_error("CoupledWaveProblem: D and lambda must be positive");
    if (!(mach_r > 1.0)) throw std::domain_error("CoupledWaveProblem: mach_r must be > 1");

    const double g = params_.gamma;
    const auto rh = rh_3shock(right.heavy, mach_r, g);
    sigma_ = rh.sigma;
    left_heavy_ = rh.left;

    const HeavyState& r = right.heavy;
    integrals_.m = r.rho_h * (r.u - sigma_);
    integrals_.c_mom = integrals_.m * r.u + r.p;
    const double E_r = r.total_energy(g);
    integrals_.c_en = (E_r + r.p) * r.u - sigma_ * E_r;
    integrals_.c_emass = right.elec.rho_e * (r.u - sigma_);
    left_rho_e_ = integrals_.c_emass / (left_heavy_.u - sigma_);

    // slow decoupled decay length at the right state sets the xi span
    const double c_r = sound_speed(r.rho_h, r.p, g);
    const WaveCoefficients wc = wave_coefficients(params_, right.elec, c_r, mach_r);
    xi_scale_ = 1.0 / std::abs(wc.delta_minus);
}

void CoupledWaveProblem::recover_heavy(double u, double& rho_h, double& p) const {
    rho_h = integrals_.m / (u - sigma_);
    p = integrals_.c_mom - integrals_.m * u;
}

std::array<double, 3> CoupledWaveProblem::rhs(const CoupledPoint& y) const {
    const double g = params_.gamma;
    const double w = y.u - sigma_;
    double rho_h, p;
    recover_heavy(y.u, rho_h, p);

    const double pep = (y.pe * w - y.Te * integrals_.c_emass) / params_.D;
    const double E = 0.5 * rho_h * y.u * y.u + p / (g - 1.0);
    const double FE = (E + p) * y.u - sigma_ * E;
    const double tep = (FE - integrals_.c_en - g / (g - 1.0) * params_.D * pep) / params_.lambda;
    const double den = g * (p - y.pe) - integrals_.m * w;
    const double up = pep * w / den;
    return {pep, tep, up};
}

double CoupledWaveProblem::sonic_denominator(const CoupledPoint& y) const {
    double rho_h, p;
    recover_heavy(y.u, rho_h, p);
    return params_.gamma * (p - y.pe) - integrals_.m * (y.u - sigma_);
}

std::array<std::array<double, 3>, 3> CoupledWaveProblem::jacobian_at_equilibrium(
    const CoupledPoint& y) const {
    const double g = params_.gamma;
    const double w = y.u - sigma_;
    const double den = sonic_denominator(y);
    const EnergyQuadratic q = energy_quadratic(integrals_.m, integrals_.c_mom, sigma_, g);

    const std::array<double, 3> g1 = {w / params_.D, -integrals_.c_emass / params_.D,
                                      y.pe / params_.D};
    const double cfac = -(g / (g - 1.0)) * params_.D / params_.lambda;
    std::array<std::array<double, 3>, 3> J;
    J[0] = g1;
    J[1] = {cfac * g1[0], cfac * g1[1], cfac * g1[2] + q.derivative(y.u) / params_.lambda};
    J[2] = {w / den * g1[0], w / den * g1[1], w / den * g1[2]};
    return J;
}

std::array<double, 2> CoupledWaveProblem::transverse_eigenvalues(const CoupledPoint& y) const {
    // rows 1 and 3 of the Jacobian are proportional, so one eigenvalue is 0
    // and the others come from trace and the (2,3) principal minor.
    const auto J = jacobian_at_equilibrium(y);
    const double tr = J[0][0] + J[1][1] + J[2][2];
    const double prod = J[1][1] * J[2][2] - J[1][2] * J[2][1];
    const double disc = tr * tr - 4.0 * prod;
    if (disc < 0.0) return {0.5 * tr, 0.5 * tr};
    const double root = std::sqrt(disc);
    return {0.5 * (tr + root), 0.5 * (tr - root)};
}

HeavyState CoupledWaveProblem::heavy_conjugate(const HeavyState& h, double pe) const {
    const double g = params_.gamma;
    const double ph = h.p - pe;
    const double w = h.u - sigma_;
    const double enthalpy = g * ph / ((g - 1.0) * h.rho_h) + 0.5 * w * w;
    const double cstar2 = 2.0 * (g - 1.0) * enthalpy / (g + 1.0);
    const double w0 = cstar2 / w;  // Prandtl relation
    HeavyState out;
    out.rho_h = h.rho_h * w / w0;
    out.u = sigma_ + w0;
    out.p = ph + h.rho_h * w * (w - w0) + pe;  // total pressure, pe continuous
    return out;
}

CoupledWaveProblem::Departure CoupledWaveProblem::departure_point(double pe_left) const {
    const double g = params_.gamma;
    const double ph_l = left_heavy_.p - pe_left;
    if (!(pe_left > 0.0) || !(ph_l > 0.0))
        throw std::domain_error("departure_point: pe_left outside (0, p_left)");
    const double Te_l = pe_left / left_rho_e_;
    const double w = left_heavy_.u - sigma_;
    const double ch2 = g * ph_l / left_heavy_.rho_h;

    Departure d;
    if (w * w < ch2) {
        // heavy-subsonic left state: the wave leaves it through the sub-shock
        const HeavyState h0 = heavy_conjugate(left_heavy_, pe_left);
        d.y0 = {pe_left, Te_l, h0.u};
        d.sub_shock = true;
        return d;
    }
    // heavy-supersonic: smooth departure along the unstable eigendirection
    const CoupledPoint eq{pe_left, Te_l, left_heavy_.u};
    const auto J = jacobian_at_equilibrium(eq);
    const auto ev = transverse_eigenvalues(eq);
    const double lam = std::max(ev[0], ev[1]);
    if (!(lam > 0.0))
        throw std::domain_error("departure_point: no unstable direction at a heavy-supersonic left state");
    // null vector of (J - lam I) from the largest cross product of its rows
    std::array<std::array<double, 3>, 3> A = J;
    for (int i = 0; i < 3; ++i) A[i][i] -= lam;
    auto cross = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
        return std::array<double, 3>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                                     a[0] * b[1] - a[1] * b[0]};
    };
    std::array<std::array<double, 3>, 3> cand = {cross(A[0], A[1]), cross(A[0], A[2]),
                                                 cross(A[1], A[2])};
    auto norm2 = [](const std::array<double, 3>& v) {
        return v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    };
    std::array<double, 3> v = cand[0];
    for (const auto& c : cand)
        if (norm2(c) > norm2(v)) v = c;
    const std::array<double, 3> scale = {pe_left, Te_l, std::abs(left_heavy_.u) + 1.0};
    double vmax = 0.0;
    for (int i = 0; i < 3; ++i) vmax = std::max(vmax, std::abs(v[i] / scale[i]));
    if (vmax == 0.0) throw std::runtime_error("departure_point: degenerate eigenvector");
    for (int i = 0; i < 3; ++i) v[i] /= vmax;
    if (v[0] > 0.0)
        for (auto& c : v) c = -c;  // head toward the lower-pe right state
    d.y0 = {pe_left + 1e-7 * v[0], Te_l + 1e-7 * v[1], left_heavy_.u + 1e-7 * v[2]};
    d.sub_shock = false;
    return d;
}

CoupledTrajectory CoupledWaveProblem::integrate(double pe_left, double span_multiplier,
                                                int max_output_points) const {
    const double g = params_.gamma;
    const double span = span_multiplier * xi_scale_;
    const double pe_cap = 50.0 * pe_left;
    const double te_cap = 50.0 * pe_left / left_rho_e_;

    if (!(pe_left > 0.0) || !(left_heavy_.p - pe_left > 0.0))
        throw std::domain_error("integrate: pe_left outside the admissible family (0, p_left)");

    CoupledTrajectory traj;
    Departure dep;
    try {
        dep = departure_point(pe_left);
    } catch (const std::exception& e) {
        traj.message = e.what();
        return traj;
    }
    traj.sub_shock_inserted = dep.sub_shock;
    traj.sub_shock_xi = 0.0;

    // Extended state (pe, Te, u, q) with q the total electron diffusive flux;
    // the energy integral c_en = F_E - q is then a genuine invariant of the
    // integration and its drift measures integrator error.
    const EnergyQuadratic fe = energy_quadratic(integrals_.m, integrals_.c_mom, sigma_, g);
    auto ext_rhs = [&](double /*xi*/, std::span<const double> y, std::span<double> dy) {
        const double pe = y[0], Te = y[1], u = y[2], q = y[3];
        const double w = u - sigma_;
        double rho_h, p;
        recover_heavy(u, rho_h, p);
        const double pep = (pe * w - Te * integrals_.c_emass) / params_.D;
        const double tep = (q - g / (g - 1.0) * params_.D * pep) / params_.lambda;
        const double den = g * (p - pe) - integrals_.m * w;
        const double up = pep * w / den;
        const double pp = -integrals_.m * up;
        const double rhop = -integrals_.m * up / (w * w);
        const double E = 0.5 * rho_h * u * u + p / (g - 1.0);
        const double Ep = 0.5 * rhop * u * u + rho_h * u * up + pp / (g - 1.0);
        dy[0] = pep;
        dy[1] = tep;
        dy[2] = up;
        dy[3] = Ep * w + E * up + pp * u + p * up;
    };

    std::array<double, 4> y0{dep.y0.pe, dep.y0.Te, dep.y0.u, 0.0};
    y0[3] = fe.value(dep.y0.u) - integrals_.c_en;  // consistent q at departure

    Dop853Options opts;
    opts.rtol = 1e-10;
    opts.atol = 1e-12;
    opts.max_step = span / 50.0;
    Dop853 stepper(ext_rhs, 0.0, std::span<const double>(y0), opts);

    traj.points.push_back({0.0, dep.y0});
    double den_prev = sonic_denominator(dep.y0);
    const double cen_scale = std::abs(integrals_.c_en) + 1e-30;

    int restarts = 0;
    while (stepper.t() < span) {
        if (!stepper.step()) {
            traj.message = "integrator stalled";
            return traj;
        }
        const auto y = stepper.y();
        if (!std::isfinite(y[0] + y[1] + y[2] + y[3]) || y[0] <= 0.0 || y[1] <= 0.0 ||
            y[0] > pe_cap || y[1] > te_cap || y[2] >= sigma_) {
            traj.message = "trajectory left the admissible region";
            return traj;
        }
        const CoupledPoint pt{y[0], y[1], y[2]};
        const double den_new = sonic_denominator(pt);
        if (den_prev * den_new < 0.0 && restarts < 3) {
            // locate the sonic crossing with the dense output and jump over it
            auto dense = stepper.dense();
            double lo = stepper.t_prev(), hi = stepper.t();
            std::array<double, 4> ymid{};
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                dense.eval(mid, ymid);
                const double dmid = sonic_denominator({ymid[0], ymid[1], ymid[2]});
                (dmid * den_prev > 0.0 ? lo : hi) = mid;
            }
            dense.eval(lo, ymid);
            double rho_h, p;
            recover_heavy(ymid[2], rho_h, p);
            const HeavyState pre{rho_h, ymid[2], p};
            const HeavyState post = heavy_conjugate(pre, ymid[0]);
            const double q_jump = fe.value(post.u) - fe.value(pre.u);
            std::array<double, 4> ynew{ymid[0], ymid[1], post.u, ymid[3] + q_jump};
            traj.sub_shock_inserted = true;
            traj.sub_shock_xi = lo;
            stepper.restart(lo, std::span<const double>(ynew));
            den_prev = sonic_denominator({ynew[0], ynew[1], ynew[2]});
            ++restarts;
            continue;
        }
        den_prev = den_new;

        // energy-integral drift
        const double cen = fe.value(y[2]) - y[3];
        traj.max_cen_drift =
            std::max(traj.max_cen_drift, std::abs(cen - integrals_.c_en) / cen_scale);

        traj.points.push_back({stepper.t(), pt});
        if (static_cast<int>(traj.points.size()) > 4 * max_output_points) {
            // thin by half, keeping the tail dense enough
            std::vector<TrajectoryPoint> thinned;
            thinned.reserve(traj.points.size() / 2 + 1);
            for (std::size_t i = 0; i < traj.points.size(); i += 2) thinned.push_back(traj.points[i]);
            thinned.push_back(traj.points.back());
            traj.points = std::move(thinned);
        }
    }

    // settled when the trailing window is flat relative to the total variation
    const auto tail = trailing_mean(traj.points);
    const double pe_tail = tail[0];
    double tail_var = 0.0;
    const std::size_t k0 = traj.points.size() - traj.points.size() / 5;
    for (std::size_t i = k0; i < traj.points.size(); ++i)
        tail_var = std::max(tail_var, std::abs(traj.points[i].y.pe - pe_tail));
    const double total_var = std::abs(pe_left - pe_tail) + 1e-30;
    traj.converged = tail_var < 1e-6 * total_var + 1e-14;
    return traj;
}

std::array<double, 2> CoupledWaveProblem::trailing_mean(
    const std::vector<TrajectoryPoint>& pts) const {
    const std::size_t n = pts.size();
    const std::size_t k = std::max<std::size_t>(1, n / 5);
    double pe = 0.0, te = 0.0;
    for (std::size_t i = n - k; i < n; ++i) {
        pe += pts[i].y.pe;
        te += pts[i].y.Te;
    }
    return {pe / k, te / k};
}

CoupledJumpResult CoupledWaveProblem::shoot(double tolerance) const {
    CoupledJumpResult res;
    res.mach_r = mach_r_;

    const double pe_r = right_.elec.pe;
    const double te_r = right_.elec.Te();

    auto objective = [&](double pe_left, CoupledTrajectory* out) -> std::optional<double> {
        CoupledTrajectory traj = integrate(pe_left);
        if (traj.points.size() < 10 || !traj.converged) return std::nullopt;
        const auto tail = trailing_mean(traj.points);
        if (out) *out = std::move(traj);
        return tail[0] - pe_r;
    };

    // scan the admissible family for a sign change
    const double lo_scan = pe_r * 1.0001;
    const double hi_scan = 0.995 * left_heavy_.p;
    const int n_scan = 40;
    double a = 0.0, b = 0.0, fa = 0.0;
    bool have_prev = false, bracketed = false;
    double prev_c = 0.0, prev_f = 0.0;
    std::string scan_log;
    for (int i = 0; i < n_scan; ++i) {
        const double c = lo_scan + (hi_scan - lo_scan) * i / (n_scan - 1.0);
        const auto f = objective(c, nullptr);
        if (!f) {
            scan_log += "x";
            have_prev = false;
            continue;
        }
        scan_log += (*f > 0.0 ? '+' : '-');
        if (have_prev && prev_f * (*f) <= 0.0) {
            a = prev_c;
            b = c;
            fa = prev_f;
            bracketed = true;
            break;
        }
        have_prev = true;
        prev_c = c;
        prev_f = *f;
    }
    if (!bracketed) {
        res.message = "no sign change over the scanned left family (signs: " + scan_log + ")";
        return res;
    }

    for (int it = 0; it < 200 && (b - a) > tolerance * pe_r; ++it) {
        const double mid = 0.5 * (a + b);
        const auto fm = objective(mid, nullptr);
        if (!fm) {
            // shrink toward the bracket end that already integrated cleanly
            b = mid;
            continue;
        }
        if (fa * (*fm) <= 0.0) {
            b = mid;
        } else {
            a = mid;
            fa = *fm;
        }
    }

    const double pe_left = 0.5 * (a + b);
    CoupledTrajectory traj;
    const auto f_final = objective(pe_left, &traj);
    if (!f_final) {
        res.message = "final trajectory did not settle";
        return res;
    }

    res.pe_left = pe_left;
    res.pe_ratio = pe_left / pe_r;
    res.te_ratio = (pe_left / left_rho_e_) / te_r;
    res.used_sub_shock = traj.sub_shock_inserted;

    const auto tail = trailing_mean(traj.points);
    const CoupledPoint& last = traj.points.back().y;
    res.achieved_right = {tail[0], tail[1], last.u};
    double rho_tail, p_tail;
    recover_heavy(last.u, rho_tail, p_tail);
    const double g = params_.gamma;
    const double u_scale = std::abs(right_.heavy.u) + sound_speed(right_.heavy.rho_h, right_.heavy.p, g);
    res.residual = std::max(
        {std::abs(tail[0] - pe_r) / pe_r, std::abs(tail[1] - te_r) / te_r,
         std::abs(rho_tail - right_.heavy.rho_h) / right_.heavy.rho_h,
         std::abs(last.u - right_.heavy.u) / u_scale});

    // effective width: xi by which pe has covered 99% of its total variation
    const double total = pe_left - tail[0];
    res.ld_star = traj.points.back().xi;
    for (const auto& pt : traj.points) {
        if (std::abs(pt.y.pe - tail[0]) <= 0.01 * std::abs(total)) {
            res.ld_star = pt.xi;
            break;
        }
    }
    res.converged = true;
    return res;
}

std::array<double, 2> decoupled_frozen_rhs(double pe, double Te, const ElectronState& right_ref,
                                           double u_frozen, double sigma, const GasParams& params) {
    const double g = params.gamma;
    const double w = u_frozen - sigma;
    const double dpe = pe - right_ref.pe;
    const double dte = Te - right_ref.Te();
    return {w / params.D * (dpe - right_ref.rho_e * dte),
            w / params.lambda * (-dpe + g * right_ref.rho_e / (g - 1.0) * dte)};
}

std::vector<MachSweepRow> mach_sweep(std::span<const double> mach_values, const PlasmaState& right,
                                     const GasParams& params) {
    std::vector<MachSweepRow> rows;
    rows.reserve(mach_values.size());
    for (double mach : mach_values) {
        MachSweepRow row;
        row.mach = mach;
        row.entropy = jump_entropy(mach, params.gamma);
        row.source = jump_source(mach, params.gamma);
        const double den = (1.0 - params.gamma) * mach * mach + 2.0 * params.gamma;
        if (den > 0.0) row.decoupled = jump_decoupled(mach, params.gamma);
        try {
            CoupledWaveProblem prob(right, mach, params);
            const CoupledJumpResult r = prob.shoot();
            row.coupled_ok = r.converged;
            row.pe_coupled = r.pe_ratio;
            row.te_coupled = r.te_ratio;
            row.residual = r.residual;
            row.ld_star = r.ld_star;
            row.message = r.message;
        } catch (const std::exception& e) {
            row.message = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace plasmatw
