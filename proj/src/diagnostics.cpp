#include "plasmatw/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "plasmatw/fv.hpp"

namespace plasmatw {

ErrorReport error_split(const FieldState& field, const AnalyticProfile& profile, const Grid1D& grid) {
    const int n = grid.n_cells;
    const double dx = grid.dx();
    const double g = profile.params().gamma;
    const double xs = profile.shock_position(field.time);

    ErrorReport rep;
    rep.shock_cell = std::clamp(static_cast<int>(std::floor(xs / dx)), 0, n - 1);
    rep.rel_err_field.resize(n);

    double s2_down = 0.0, s2_up = 0.0, s2_te = 0.0, s2_rhoe = 0.0;
    for (int j = 0; j < n; ++j) {
        const ElectronState exact = profile.evaluate(grid.x_center(j), field.time);
        const double pe_num = (g - 1.0) * field.u2[j];
        const double te_num = (g - 1.0) * field.u2[j] / field.u1[j];
        const double err = pe_num - exact.pe;
        const double rel = err / exact.pe;
        rep.rel_err_field[j] = rel;
        rep.linf = std::max(rep.linf, std::abs(err));
        rep.linf_rel = std::max(rep.linf_rel, std::abs(rel));
        rep.te_linf_rel = std::max(rep.te_linf_rel, std::abs((te_num - exact.Te()) / exact.Te()));
        (j <= rep.shock_cell ? s2_down : s2_up) += err * err;
        const double te_err = te_num - exact.Te();
        s2_te += te_err * te_err;
        const double rhoe_err = field.u1[j] - exact.rho_e;
        s2_rhoe += rhoe_err * rhoe_err;
    }
    rep.l2_downstream = std::sqrt(dx * s2_down);
    rep.l2_upstream = std::sqrt(dx * s2_up);
    rep.l2_full = std::sqrt(dx * (s2_down + s2_up));
    rep.l2_te_full = std::sqrt(dx * s2_te);
    rep.l2_rhoe_full = std::sqrt(dx * s2_rhoe);
    return rep;
}

std::vector<double> gradient_centered(std::span<const double> values, double dx) {
    const int n = static_cast<int>(values.size());
    if (n < 3) throw std::domain_error("gradient_centered: need at least 3 values");
    std::vector<double> grad(n);
    grad[0] = (values[1] - values[0]) / dx;
    for (int j = 1; j < n - 1; ++j) grad[j] = (values[j + 1] - values[j - 1]) / (2.0 * dx);
    grad[n - 1] = (values[n - 1] - values[n - 2]) / dx;
    return grad;
}

namespace {

struct LinFit {
    double slope, intercept, sse;
};

LinFit least_squares(std::span<const double> x, std::span<const double> y, int lo, int hi) {
    const int m = hi - lo;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = lo; i < hi; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = m * sxx - sx * sx;
    if (det == 0.0) throw std::domain_error("slope_fit: degenerate abscissae");
    LinFit f;
    f.slope = (m * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / m;
    f.sse = 0.0;
    for (int i = lo; i < hi; ++i) {
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        f.sse += r * r;
    }
    return f;
}

}  // namespace

double slope_fit_single(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::domain_error("slope_fit: need >= 2 points");
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return least_squares(lx, ly, 0, static_cast<int>(x.size())).slope;
}

SlopeFit slope_fit(std::span<const double> x, std::span<const double> y) {
    const int n = static_cast<int>(x.size());
    if (n != static_cast<int>(y.size()) || n < 6)
        throw std::domain_error("slope_fit: need >= 6 points (>= 3 per regime)");
    std::vector<double> lx(n), ly(n);
    for (int i = 0; i < n; ++i) {
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    SlopeFit best;
    bool first = true;
    for (int k = 3; k <= n - 3; ++k) {
        const LinFit lo = least_squares(lx, ly, 0, k);
        const LinFit hi = least_squares(lx, ly, k, n);
        const double sse = lo.sse + hi.sse;
        if (first || sse < best.sse) {
            first = false;
            best.slope_low = lo.slope;
            best.slope_high = hi.slope;
            best.break_index = k;
            best.break_x = std::sqrt(x[k - 1] * x[k]);
            best.sse = sse;
        }
    }
    return best;
}

}  // namespace plasmatw
