#pragma once

#include <span>
#include <vector>

#include "plasmatw/wave.hpp"

namespace plasmatw {

struct Grid1D;
struct FieldState;

/// Discrete error norms against the analytic profile, split at the shock
/// cell. Downstream is the post-shock side (left of the shock); the shock
/// cell itself is assigned downstream.
struct ErrorReport {
    double l2_downstream = 0.0;
    double l2_upstream = 0.0;
    double l2_full = 0.0;
    double linf = 0.0;           // max |pe_num - pe_exact|
    double linf_rel = 0.0;       // max relative pe error
    double te_linf_rel = 0.0;    // max relative Te error
    double l2_te_full = 0.0;
    double l2_rhoe_full = 0.0;
    int shock_cell = -1;
    std::vector<double> rel_err_field;  // per-cell relative pe error
};

ErrorReport error_split(const FieldState& field, const AnalyticProfile& profile, const Grid1D& grid);

/// Centered differences in the interior, first-order one-sided at the ends.
std::vector<double> gradient_centered(std::span<const double> values, double dx);

/// Two-regime least-squares fit in log-log coordinates with breakpoint
/// detection. Slopes are reported as fitted (signed) exponents.
struct SlopeFit {
    double slope_low = 0.0;   // regime of smaller abscissae
    double slope_high = 0.0;  // regime of larger abscissae
    double break_x = 0.0;
    int break_index = 0;
    double sse = 0.0;
};

SlopeFit slope_fit(std::span<const double> x, std::span<const double> y);
double slope_fit_single(std::span<const double> x, std::span<const double> y);

}  // namespace plasmatw
