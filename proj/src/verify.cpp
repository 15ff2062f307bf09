#include "plasmatw/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "plasmatw/cases.hpp"
#include "plasmatw/coupled.hpp"
#include "plasmatw/diagnostics.hpp"
#include "plasmatw/fv.hpp"
#include "plasmatw/io.hpp"
#include "plasmatw/jump.hpp"
#include "plasmatw/wave.hpp"

namespace plasmatw::verify {

namespace {

struct Check {
    std::ostringstream detail;
    bool pass = true;

    void expect(bool ok, const std::string& what) {
        pass &= ok;
        detail << (ok ? "  ok: " : "  FAIL: ") << what << "\n";
    }
    void expect_close(double got, double want, double rel_tol, const std::string& what) {
        const double rel = std::abs(got - want) / std::abs(want);
        std::ostringstream os;
        os << what << ": got " << got << ", want " << want << " (rel " << rel << ", tol " << rel_tol
           << ")";
        expect(rel <= rel_tol, os.str());
    }
    void expect_below(double got, double bound, const std::string& what) {
        std::ostringstream os;
        os << what << ": " << got << " <= " << bound;
        expect(got <= bound, os.str());
    }
};

double plateau_mean_pe(const RunResult& r, const AnalyticProfile& prof, const Grid1D& grid) {
    const double g = prof.params().gamma;
    const double xs = prof.shock_position(r.field.time);
    const int js = static_cast<int>(std::floor(xs / grid.dx()));
    const int lo = std::max(0, js - 60), hi = std::max(1, js - 10);
    double sum = 0.0;
    for (int j = lo; j < hi; ++j) sum += (g - 1.0) * r.field.u2[j];
    return sum / (hi - lo);
}

double plateau_deviation(const RunResult& r, const AnalyticProfile& prof, const Grid1D& grid) {
    const double pe_l = prof.states().left.elec.pe;
    return std::abs(plateau_mean_pe(r, prof, grid) - pe_l) / pe_l;
}

/// Wave position from the largest pe gradient magnitude.
double wave_position(const RunResult& r, const GasParams& gas, const Grid1D& grid) {
    std::vector<double> pe(r.field.u2.size());
    for (std::size_t j = 0; j < pe.size(); ++j) pe[j] = (gas.gamma - 1.0) * r.field.u2[j];
    const auto grad = gradient_centered(pe, grid.dx());
    std::size_t best = 0;
    for (std::size_t j = 1; j < grad.size(); ++j)
        if (std::abs(grad[j]) > std::abs(grad[best])) best = j;
    return grid.x_center(static_cast<int>(best));
}

/// Largest mismatch of the centered e_e gradient against the sampled exact
/// profile, within a window around the shock.
double gradient_probe(const RunResult& r, const AnalyticProfile& prof, const Grid1D& grid,
                      int half_window = 15) {
    const double g = prof.params().gamma;
    const int n = grid.n_cells;
    std::vector<double> ee_num(n), ee_exact(n);
    for (int j = 0; j < n; ++j) {
        ee_num[j] = r.field.u2[j] / r.field.u1[j];
        ee_exact[j] = prof.evaluate(grid.x_center(j), r.field.time).ee(g);
    }
    const auto g_num = gradient_centered(ee_num, grid.dx());
    const auto g_exact = gradient_centered(ee_exact, grid.dx());
    const double xs = prof.shock_position(r.field.time);
    const int js = static_cast<int>(std::floor(xs / grid.dx()));
    double probe = 0.0;
    for (int j = std::max(1, js - half_window); j < std::min(n - 1, js + half_window); ++j)
        probe = std::max(probe, std::abs(g_num[j] - g_exact[j]));
    return probe;
}

RunResult run_case(const CaseSpec& spec, SchemeKind scheme, bool corrections = true,
                   FluxKind flux = FluxKind::GodunovUpwind, double courant = -1.0) {
    SchemeConfig cfg = spec.scheme_config(scheme);
    cfg.corrections = corrections;
    cfg.flux = flux;
    if (courant > 0.0) cfg.courant = courant;
    return run(cfg, spec.grid(), spec.profile(), spec.t_final);
}

struct SweepPoint {
    double nodes_per_ld = 0.0;
    ErrorReport report;
};

std::vector<SweepPoint> diffusion_sweep(SchemeKind scheme, bool corrections,
                                        const std::vector<double>& ds) {
    std::vector<SweepPoint> out(ds.size());
    parallel_for_indexed(static_cast<int>(ds.size()), [&](int i) {
        const CaseSpec spec = case_for_diffusion(ds[i]);
        const AnalyticProfile prof = spec.profile();
        const double ju = std::abs(prof.states().velocity_jump());
        SchemeConfig cfg = spec.scheme_config(scheme);
        cfg.corrections = corrections;
        const RunResult r = run(cfg, spec.grid(), prof, spec.t_final);
        out[i].nodes_per_ld = spec.gas.D / ju / spec.grid().dx();
        out[i].report = r.report;
    });
    return out;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, i / (n - 1.0));
    return v;
}

// ---------------------------------------------------------------------------

CriterionResult jump_formula_check() {
    Check c;
    const double g = 5.0 / 3.0;
    const JumpRatios jr = jump_decoupled(1.1832, g);
    c.expect_close(jr.pe_ratio, 1.5556, 1e-3, "pe ratio");
    c.expect_close(jr.te_ratio, 1.2222, 1e-3, "Te ratio");
    c.expect_close(jr.rhoe_ratio, 1.2727, 1e-3, "rho_e ratio");
    // quoted left-state values carry 3-4 digit rounding, hence 2e-3
    c.expect_close(0.1 * jr.pe_ratio, 0.1556, 2e-3, "pe^L from pe^R = 0.1");
    c.expect_close(0.01 * jr.rhoe_ratio, 0.01274, 2e-3, "rho_e^L from rho_e^R = 0.01");
    const auto rh = rh_3shock({1.0, 0.2, 1.0}, 1.1832, g);
    c.expect_close(rh.left.rho_h, 1.274, 2e-3, "rho_h^L");
    return {1, "jump formulas", c.pass, c.detail.str()};
}

CriterionResult validity_singularity_check() {
    Check c;
    const double g = 5.0 / 3.0;
    const double m_star = std::sqrt(2.0 * g / (g - 1.0));

    bool threw_at = false, threw_above = false, ok_below = false;
    try {
        jump_decoupled(m_star - 1e-9, g);
        ok_below = true;
    } catch (const std::domain_error&) {
    }
    try {
        jump_decoupled(m_star, g);
    } catch (const std::domain_error&) {
        threw_at = true;
    }
    try {
        jump_decoupled(m_star + 0.3, g);
    } catch (const std::domain_error&) {
        threw_above = true;
    }
    c.expect(ok_below, "valid just below sqrt(2g/(g-1))");
    c.expect(threw_at && threw_above, "domain error at and above the bound");

    bool ordered = true;
    for (int i = 1; i <= 20; ++i) {
        const double m = 1.0 + 0.5 * i / 20.0;  // samples in (1, 1.5]
        const double dec = jump_decoupled(m, g).te_ratio;
        const double ent = jump_entropy(m, g).te_ratio;
        const double src = jump_source(m, g).te_ratio;
        ordered &= dec > ent && ent > src && src == 1.0;
    }
    c.expect(ordered, "Te-ratio ordering decoupled > entropy > source at 20 Mach samples");
    return {2, "validity singularity", c.pass, c.detail.str()};
}

CriterionResult profile_integrity_check() {
    Check c;
    const CaseSpec hd = builtin_case("caseHD");
    const AnalyticProfile prof = hd.profile();
    const CompatibilityResidual r = prof.compatibility_residual();
    c.expect_below(std::abs(r.res_pe), 1e-10, "|D [pe'] - pe(0) [u]|");
    c.expect_below(std::abs(r.res_te), 1e-10, "|[Te']|");

    // machine-precision statements on the natural derivative scales
    const double te_scale = std::abs(prof.coefficients().eta_r * prof.states().right.elec.Te());
    c.expect_below(std::abs(prof.dte_dxi_0plus()) / te_scale, 1e-12, "Te'(0+) relative residual");
    const double pe_scale = std::abs(prof.pe_xi(0.0) * prof.states().velocity_jump());
    c.expect_below(std::abs(r.res_pe) / pe_scale, 1e-12, "pressure-gradient relative residual");
    return {3, "analytic profile integrity", c.pass, c.detail.str()};
}

CriterionResult over_resolved_check() {
    Check c;
    const CaseSpec hd = builtin_case("caseHD");
    const AnalyticProfile prof = hd.profile();
    const RunResult r = run_case(hd, SchemeKind::A);

    const double pos = wave_position(r, hd.gas, hd.grid()) / hd.length;
    c.expect_close(pos, 0.373, 5e-3, "wave position fraction");  // within ~4 cells
    c.expect_below(r.report.linf_rel, 0.04, "Linf relative pe error");
    c.expect_below(plateau_deviation(r, prof, hd.grid()), 5e-3, "post-shock plateau offset");
    return {4, "over-resolved capture", c.pass, c.detail.str()};
}

CriterionResult under_resolved_check() {
    Check c;
    const CaseSpec hd = builtin_case("caseHD");
    const CaseSpec wd = builtin_case("caseWD");
    const RunResult r_hd = run_case(hd, SchemeKind::A);
    const RunResult r_wd = run_case(wd, SchemeKind::A);

    const double plat_hd = plateau_deviation(r_hd, hd.profile(), hd.grid());
    const double plat_wd = plateau_deviation(r_wd, wd.profile(), wd.grid());
    c.expect(plat_wd > 5e-3, "artificial plateau offset present (dev " + format_double(plat_wd) + ")");
    c.expect(plat_wd > 5.0 * plat_hd,
             "plateau offset at least 5x the over-resolved one (hd " + format_double(plat_hd) + ")");

    const double probe_hd = gradient_probe(r_hd, hd.profile(), hd.grid());
    const double probe_wd = gradient_probe(r_wd, wd.profile(), wd.grid());
    c.expect(probe_wd > 5.0 * probe_hd, "gradient spike at the discontinuity (wd " +
                                            format_double(probe_wd) + " vs hd " +
                                            format_double(probe_hd) + ")");
    return {5, "under-resolved failure mode", c.pass, c.detail.str()};
}

CriterionResult corrected_scheme_check() {
    Check c;
    const CaseSpec wd = builtin_case("caseWD");
    const RunResult r_a = run_case(wd, SchemeKind::A);
    const RunResult r_b = run_case(wd, SchemeKind::B);
    const double plat_a = plateau_deviation(r_a, wd.profile(), wd.grid());
    const double plat_b = plateau_deviation(r_b, wd.profile(), wd.grid());
    c.expect(plat_b * 5.0 <= plat_a, "corrected scheme captures the left plateau (A " +
                                         format_double(plat_a) + ", B " + format_double(plat_b) + ")");

    // sweep shapes: the compatibility formulation alone loses accuracy as the
    // wave gets resolved, adding the corrections keeps it improving
    const auto ds = log_spaced(1e-3, 1e-1, 8);
    const auto uncorrected = diffusion_sweep(SchemeKind::B, false, ds);
    const auto corrected = diffusion_sweep(SchemeKind::B, true, ds);

    double min_unc = 1e300;
    for (const auto& p : uncorrected) min_unc = std::min(min_unc, p.report.l2_full);
    const double last_unc = uncorrected.back().report.l2_full;
    c.expect(last_unc >= 1.3 * min_unc,
             "uncorrected error grows toward high resolution (end " + format_double(last_unc) +
                 ", min " + format_double(min_unc) + ")");

    bool monotone = true;
    std::string series;
    for (std::size_t i = 0; i < corrected.size(); ++i) {
        if (i) monotone &= corrected[i].report.l2_full <= 1.05 * corrected[i - 1].report.l2_full;
        series += " " + format_double(corrected[i].report.l2_full);
    }
    c.expect(monotone, "corrected error decreases over the sweep (" + series + ")");
    return {6, "scheme B fix", c.pass, c.detail.str()};
}

CriterionResult convergence_slopes_check() {
    Check c;
    const auto ds = log_spaced(1e-3, 1e-1, 12);
    const auto pts = diffusion_sweep(SchemeKind::A, true, ds);

    std::vector<double> x, down, up;
    for (const auto& p : pts) {
        x.push_back(p.nodes_per_ld);
        down.push_back(p.report.l2_downstream);
        up.push_back(p.report.l2_upstream);
    }
    const SlopeFit fd = slope_fit(x, down);
    const SlopeFit fu = slope_fit(x, up);

    // decay exponents with absolute tolerances; fitted slopes are negative
    auto match = [&](double got, double want, double tol, const std::string& what) {
        std::ostringstream os;
        os << what << ": got " << std::abs(got) << ", want " << want << " +- " << tol;
        c.expect(std::abs(std::abs(got) - want) <= tol, os.str());
    };
    match(fd.slope_low, 0.3324, 0.15, "downstream low-resolution slope");
    match(fd.slope_high, 1.314, 0.15, "downstream high-resolution slope");
    match(fu.slope_low, 0.2541, 0.10, "upstream low-resolution slope");
    match(fu.slope_high, 0.3846, 0.10, "upstream high-resolution slope");
    return {7, "convergence slopes", c.pass, c.detail.str()};
}

CriterionResult solar_case_check() {
    Check c;
    const CaseSpec s1 = builtin_case("solar-n1000");
    const CaseSpec s5 = builtin_case("solar-n5000");

    SchemeConfig defaults;  // fourier_constant 1.25
    const Timesteps t1 = timesteps(defaults, s1.grid(), s1.wave_states(), s1.gas);
    const Timesteps t5 = timesteps(defaults, s5.grid(), s5.wave_states(), s5.gas);
    c.expect_close(t1.dt_fourier, 0.4095, 2e-3, "requested diffusive step, N=1000");
    c.expect_close(t5.dt_fourier, 0.0164, 2e-3, "requested diffusive step, N=5000");

    // the long N=5000 runs and the N=1000 run, in parallel
    RunResult r1, a5, b5, c02, c04;
    std::vector<std::function<void()>> jobs = {
        [&] { r1 = run_case(s1, SchemeKind::B); },
        [&] { a5 = run_case(s5, SchemeKind::A); },
        [&] { b5 = run_case(s5, SchemeKind::B); },
        [&] { c02 = run_case(s5, SchemeKind::C, true, FluxKind::GodunovUpwind, 0.2); },
        [&] { c04 = run_case(s5, SchemeKind::C, true, FluxKind::GodunovUpwind, 0.4); },
    };
    parallel_for_indexed(static_cast<int>(jobs.size()), [&](int i) { jobs[i](); });

    c.expect(std::abs(r1.field.time - s1.t_final) < 1e-9, "N=1000 run reaches t_final");
    c.expect(std::abs(a5.field.time - s5.t_final) < 1e-9 &&
                 std::abs(b5.field.time - s5.t_final) < 1e-9,
             "N=5000 runs reach t_final");

    const double amp_a = a5.report.te_linf_rel;
    const double amp_b = b5.report.te_linf_rel;
    c.expect(amp_a >= 5.0 * amp_b, "electron-temperature error amplitude reduced at least 5x (A " +
                                       format_double(amp_a) + ", B " + format_double(amp_b) + ")");

    const double amp_c2 = c02.report.te_linf_rel;
    const double amp_c4 = c04.report.te_linf_rel;
    c.expect(amp_c2 <= amp_b, "split scheme at courant 0.2 at least as accurate as B (C " +
                                  format_double(amp_c2) + ")");
    c.expect(c02.convective_sweeps * 20 <= b5.convective_sweeps,
             "at least 20x fewer convective sweeps (" + std::to_string(c02.convective_sweeps) +
                 " vs " + std::to_string(b5.convective_sweeps) + ")");
    c.expect(amp_c4 >= 2.0 * amp_c2, "courant 0.4 artefact (C0.4 " + format_double(amp_c4) +
                                         " vs C0.2 " + format_double(amp_c2) + ")");
    return {8, "solar case", c.pass, c.detail.str()};
}

CriterionResult coupled_check() {
    Check c;
    const GasParams gas{5.0 / 3.0, 0.1, 1e-3};
    const PlasmaState right{{1.0, 0.2, 1.0}, {0.01, 0.1}};

    {
        const CoupledWaveProblem prob(right, 1.1832, gas);
        const CoupledJumpResult res = prob.shoot();
        c.expect(res.converged, "shooting converges at M = 1.1832");
        const CoupledTrajectory traj = prob.integrate(res.pe_left);
        c.expect_below(traj.max_cen_drift, 1e-8, "energy-integral drift");
    }

    {
        const WaveStates w = make_wave_states(right.heavy, right.elec, 1.1832, gas);
        const WaveCoefficients wc =
            wave_coefficients(gas, right.elec, sound_speed(1.0, 1.0, gas.gamma), 1.1832);
        const double pe0 = right.elec.pe, te0 = right.elec.Te();
        const double hp = 1e-7 * pe0, ht = 1e-7 * te0;
        auto f = [&](double pe, double te) {
            return decoupled_frozen_rhs(pe, te, right.elec, right.heavy.u, w.sigma, gas);
        };
        const auto fp1 = f(pe0 + hp, te0), fm1 = f(pe0 - hp, te0);
        const auto fp2 = f(pe0, te0 + ht), fm2 = f(pe0, te0 - ht);
        const double j11 = (fp1[0] - fm1[0]) / (2 * hp), j12 = (fp2[0] - fm2[0]) / (2 * ht);
        const double j21 = (fp1[1] - fm1[1]) / (2 * hp), j22 = (fp2[1] - fm2[1]) / (2 * ht);
        const double tr = j11 + j22, det = j11 * j22 - j12 * j21;
        const double root = std::sqrt(tr * tr - 4.0 * det);
        c.expect_close(0.5 * (tr - root), wc.delta_plus, 1e-8, "delta+ from the frozen Jacobian");
        c.expect_close(0.5 * (tr + root), wc.delta_minus, 1e-8, "delta- from the frozen Jacobian");
    }

    for (double mach : {1.05, 1.1832}) {
        const CoupledWaveProblem prob(right, mach, gas);
        const CoupledJumpResult res = prob.shoot();
        c.expect(res.converged, "shooting converges at M = " + format_double(mach));
        const JumpRatios dec = jump_decoupled(mach, gas.gamma);
        c.expect_close(res.pe_ratio, dec.pe_ratio, 0.05, "coupled vs decoupled pe ratio");
        c.expect_close(res.te_ratio, dec.te_ratio, 0.05, "coupled vs decoupled Te ratio");
    }

    for (double mach : {2.0, std::sqrt(5.0), 2.5}) {
        const CoupledWaveProblem prob(right, mach, gas);
        const CoupledJumpResult res = prob.shoot();
        c.expect(res.converged && std::isfinite(res.pe_ratio) && res.pe_ratio > 1.0,
                 "finite coupled ratios at M = " + format_double(mach));
    }
    return {9, "coupled ODE", c.pass, c.detail.str()};
}

CriterionResult property_suite_check() {
    Check c;
    const CaseSpec wd = builtin_case("caseWD");

    for (SchemeKind sk : {SchemeKind::A, SchemeKind::B, SchemeKind::C}) {
        SchemeConfig cfg = wd.scheme_config(sk);
        Grid1D small{400, wd.length};
        FvSolver solver(cfg, small, wd.profile());
        FieldState f = solver.initial_state();
        for (int i = 0; i < 50; ++i) solver.step(f, solver.base_dt());
        c.expect_below(solver.max_mass_budget_residual(), 1e-12,
                       "electron-mass budget, scheme " + to_string(sk));
    }

    {
        bool ok = true;
        for (double pe : {1e-6, 0.1, 3.7, 1e4}) {
            for (double rhoe : {1e-8, 0.01, 2.0}) {
                const ElectronState e{rhoe, pe};
                ok &= std::abs(e.Te() * e.rho_e - e.pe) <= 1e-15 * pe;
                ok &= std::abs((wd.gas.gamma - 1.0) * e.ee(wd.gas.gamma) * e.rho_e - e.pe) <=
                      1e-15 * pe;
            }
        }
        c.expect(ok, "EOS round trips at machine precision");
    }

    {
        auto render = [&]() {
            const RunResult r = run_case(wd, SchemeKind::B);
            CsvWriter csv({"x", "u1", "u2"});
            for (int j = 0; j < wd.n_cells; ++j) {
                const double row[3] = {wd.grid().x_center(j), r.field.u1[j], r.field.u2[j]};
                csv.add_row(row);
            }
            return csv.str();
        };
        const std::string a = render();
        const std::string b = render();
        c.expect(a == b && fnv1a64(a) == fnv1a64(b), "deterministic byte-identical CSV payloads");
    }

    {
        const AnalyticProfile prof = wd.profile();
        const RunResult r_a = run_case(wd, SchemeKind::A);
        const RunResult r_b = run_case(wd, SchemeKind::B);
        const RunResult r_cg = run_case(wd, SchemeKind::C, true, FluxKind::GodunovUpwind);
        const RunResult r_cl = run_case(wd, SchemeKind::C, true, FluxKind::LaxFriedrichs);
        const double pa = plateau_mean_pe(r_a, prof, wd.grid());
        const double pb = plateau_mean_pe(r_b, prof, wd.grid());
        const double pg = plateau_mean_pe(r_cg, prof, wd.grid());
        const double pl = plateau_mean_pe(r_cl, prof, wd.grid());
        const double gap = std::abs(pa - pb);
        c.expect(std::abs(pg - pl) <= 2.0 * gap,
                 "godunov and lax-friedrichs plateaus agree within 2x the scheme gap (|" +
                     format_double(pg) + " - " + format_double(pl) + "| vs gap " +
                     format_double(gap) + ")");
    }
    return {10, "property suite", c.pass, c.detail.str()};
}

}  // namespace

std::vector<int> criterion_ids() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}; }

std::string criterion_name(int id) {
    switch (id) {
        case 1: return "jump formulas";
        case 2: return "validity singularity";
        case 3: return "analytic profile integrity";
        case 4: return "over-resolved capture";
        case 5: return "under-resolved failure mode";
        case 6: return "scheme B fix";
        case 7: return "convergence slopes";
        case 8: return "solar case";
        case 9: return "coupled ODE";
        case 10: return "property suite";
    }
    throw std::invalid_argument("unknown criterion id " + std::to_string(id));
}

CriterionResult run_criterion(int id) {
    switch (id) {
        case 1: return jump_formula_check();
        case 2: return validity_singularity_check();
        case 3: return profile_integrity_check();
        case 4: return over_resolved_check();
        case 5: return under_resolved_check();
        case 6: return corrected_scheme_check();
        case 7: return convergence_slopes_check();
        case 8: return solar_case_check();
        case 9: return coupled_check();
        case 10: return property_suite_check();
    }
    throw std::invalid_argument("unknown criterion id " + std::to_string(id));
}

int run_all(bool stop_on_failure) {
    int failures = 0;
    for (int id : criterion_ids()) {
        const CriterionResult r = run_criterion(id);
        std::printf("[%s] criterion %d (%s)\n%s", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
        std::fflush(stdout);
        if (!r.pass) {
            ++failures;
            if (stop_on_failure) break;
        }
    }
    return failures;
}

}  // namespace plasmatw::verify
