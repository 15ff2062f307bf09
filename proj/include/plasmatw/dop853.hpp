#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "plasmatw/dop853_tableau.hpp"

namespace plasmatw {

struct Dop853Options {
    double rtol = 1e-10;
    double atol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    double first_step = 0.0;  // 0 selects automatically
    long max_steps = 2'000'000;
};

/// Dense-output segment of one accepted step: degree-7 interpolant evaluated
/// with the alternating x/(1-x) Horner recurrence.
class Dop853Dense {
  public:
    Dop853Dense() = default;
    Dop853Dense(double t_old, double h, std::vector<std::array<double, 8>> f_by_component)
        : t_old_(t_old), h_(h), f_(std::move(f_by_component)) {}

    double t_old() const { return t_old_; }
    double t_new() const { return t_old_ + h_; }

    void eval(double t, std::span<double> out) const {
        const double x = (t - t_old_) / h_;
        for (std::size_t c = 0; c < f_.size(); ++c) {
            const auto& F = f_[c];
            double y = 0.0;
            for (int i = 0; i < 7; ++i) {
                y += F[6 - i + 1];  // F rows 1..7 hold the polynomial, F[0] = y_old
                y *= (i % 2 == 0) ? x : 1.0 - x;
            }
            out[c] = y + F[0];
        }
    }

  private:
    double t_old_ = 0.0;
    double h_ = 0.0;
    // per component: {y_old, F0..F6}
    std::vector<std::array<double, 8>> f_;
};

/// Explicit Runge-Kutta 8(5,3) stepper (DOP853) with optional dense output.
/// RHS signature: rhs(double t, std::span<const double> y, std::span<double> dydt).
template <class RHS>
class Dop853 {
  public:
    Dop853(RHS rhs, double t0, std::span<const double> y0, const Dop853Options& opts = {})
        : rhs_(std::move(rhs)), opts_(opts), n_(y0.size()), t_(t0), y_(y0.begin(), y0.end()) {
        k_.assign(16, std::vector<double>(n_));
        y_stage_.resize(n_);
        y_new_.resize(n_);
        y_prev_ = y_;
        rhs_(t_, y_, k_[0]);
        h_ = opts_.first_step > 0.0 ? opts_.first_step : select_initial_step();
    }

    /// Re-initializes at a new point, keeping the RHS and options.
    void restart(double t0, std::span<const double> y0) {
        t_ = t0;
        y_.assign(y0.begin(), y0.end());
        y_prev_ = y_;
        t_prev_ = t0;
        f_new_is_k0_ = false;
        swapped_back_ = false;
        rhs_(t_, y_, k_[0]);
        ++n_rhs_;
        h_ = opts_.first_step > 0.0 ? opts_.first_step : select_initial_step();
    }

    double t() const { return t_; }
    double t_prev() const { return t_prev_; }
    std::span<const double> y() const { return y_; }
    std::span<const double> y_prev() const { return y_prev_; }
    long n_steps() const { return n_steps_; }
    long n_rhs() const { return n_rhs_; }

    /// Advances one accepted step. Returns false when the step size
    /// underflows or the step budget is exhausted.
    bool step() {
        constexpr double safety = 0.9, min_factor = 0.2, max_factor = 10.0;
        constexpr double error_exponent = -1.0 / 8.0;

        double h = std::min(h_, opts_.max_step);
        bool rejected = false;
        for (;;) {
            if (!(h > std::abs(t_) * 1e-15 + 1e-300) || n_steps_ >= opts_.max_steps) return false;

            const double t_new = t_ + h;
            // stages 1..11
            for (int s = 1; s < dop853_detail::n_stages; ++s) {
                for (std::size_t c = 0; c < n_; ++c) {
                    double acc = 0.0;
                    for (int j = 0; j < s; ++j) acc += dop853_detail::A[s][j] * k_[j][c];
                    y_stage_[c] = y_[c] + h * acc;
                }
                rhs_(t_ + dop853_detail::C[s] * h, y_stage_, k_[s]);
                ++n_rhs_;
            }
            for (std::size_t c = 0; c < n_; ++c) {
                double acc = 0.0;
                for (int j = 0; j < dop853_detail::n_stages; ++j) acc += dop853_detail::B[j] * k_[j][c];
                y_new_[c] = y_[c] + h * acc;
            }
            rhs_(t_new, y_new_, k_[12]);  // f_new, reused as the error stage
            ++n_rhs_;

            double err5n2 = 0.0, err3n2 = 0.0;
            for (std::size_t c = 0; c < n_; ++c) {
                const double scale =
                    opts_.atol + opts_.rtol * std::max(std::abs(y_[c]), std::abs(y_new_[c]));
                double e5 = 0.0, e3 = 0.0;
                for (int j = 0; j < 13; ++j) {
                    e5 += dop853_detail::E5[j] * k_[j][c];
                    e3 += dop853_detail::E3[j] * k_[j][c];
                }
                e5 /= scale;
                e3 /= scale;
                err5n2 += e5 * e5;
                err3n2 += e3 * e3;
            }
            double error_norm = 0.0;
            if (err5n2 != 0.0 || err3n2 != 0.0)
                error_norm = h * err5n2 / std::sqrt((err5n2 + 0.01 * err3n2) * static_cast<double>(n_));

            if (error_norm < 1.0) {
                double factor = error_norm == 0.0
                                    ? max_factor
                                    : std::min(max_factor, safety * std::pow(error_norm, error_exponent));
                if (rejected) factor = std::min(1.0, factor);
                t_prev_ = t_;
                y_prev_ = y_;
                h_prev_ = h;
                t_ = t_new;
                std::swap(y_, y_new_);
                std::swap(k_[0], k_[12]);  // FSAL-style reuse of f_new
                f_new_is_k0_ = true;
                h_ = std::min(h * factor, opts_.max_step);
                ++n_steps_;
                return true;
            }
            h *= std::max(min_factor, safety * std::pow(error_norm, error_exponent));
            rejected = true;
        }
    }

    /// Dense interpolant of the last accepted step (three extra stages).
    Dop853Dense dense() {
        const double h = h_prev_;
        // stages 13..15 on top of the stored K. k_[0] currently holds f_new;
        // restore the layout scipy uses: K[12] = f_new, K[0] = f_old.
        if (f_new_is_k0_) {
            std::swap(k_[0], k_[12]);
            f_new_is_k0_ = false;
            swapped_back_ = true;
        }
        for (int s = 13; s < 16; ++s) {
            for (std::size_t c = 0; c < n_; ++c) {
                double acc = 0.0;
                for (int j = 0; j < s; ++j) acc += dop853_detail::A[s][j] * k_[j][c];
                y_stage_[c] = y_prev_[c] + h * acc;
            }
            rhs_(t_prev_ + dop853_detail::C[s] * h, y_stage_, k_[s]);
            ++n_rhs_;
        }
        std::vector<std::array<double, 8>> F(n_);
        for (std::size_t c = 0; c < n_; ++c) {
            const double delta = y_[c] - y_prev_[c];
            F[c][0] = y_prev_[c];
            F[c][1] = delta;
            F[c][2] = h * k_[0][c] - delta;
            F[c][3] = 2.0 * delta - h * (k_[12][c] + k_[0][c]);
            for (int i = 0; i < 4; ++i) {
                double acc = 0.0;
                for (int j = 0; j < 16; ++j) acc += dop853_detail::D[i][j] * k_[j][c];
                F[c][4 + i] = h * acc;
            }
        }
        if (swapped_back_) {  // put f_new back into k_[0] for the next step
            std::swap(k_[0], k_[12]);
            f_new_is_k0_ = true;
            swapped_back_ = false;
        }
        return Dop853Dense(t_prev_, h, std::move(F));
    }

  private:
    double select_initial_step() {
        // Hairer's starting-step heuristic, eighth-order error estimator.
        std::vector<double> scale(n_), y1(n_), f1(n_);
        double d0 = 0.0, d1 = 0.0;
        for (std::size_t c = 0; c < n_; ++c) {
            scale[c] = opts_.atol + opts_.rtol * std::abs(y_[c]);
            d0 += (y_[c] / scale[c]) * (y_[c] / scale[c]);
            d1 += (k_[0][c] / scale[c]) * (k_[0][c] / scale[c]);
        }
        d0 = std::sqrt(d0 / n_);
        d1 = std::sqrt(d1 / n_);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        for (std::size_t c = 0; c < n_; ++c) y1[c] = y_[c] + h0 * k_[0][c];
        rhs_(t_ + h0, y1, f1);
        ++n_rhs_;
        double d2 = 0.0;
        for (std::size_t c = 0; c < n_; ++c) {
            const double d = (f1[c] - k_[0][c]) / scale[c];
            d2 += d * d;
        }
        d2 = std::sqrt(d2 / n_) / h0;
        double h1;
        if (d1 <= 1e-15 && d2 <= 1e-15)
            h1 = std::max(1e-6, h0 * 1e-3);
        else
            h1 = std::pow(0.01 / std::max(d1, d2), 1.0 / 8.0);
        return std::min({100.0 * h0, h1, opts_.max_step});
    }

    RHS rhs_;
    Dop853Options opts_;
    std::size_t n_;
    double t_, t_prev_ = 0.0, h_ = 0.0, h_prev_ = 0.0;
    std::vector<double> y_, y_prev_, y_new_, y_stage_;
    std::vector<std::vector<double>> k_;
    bool f_new_is_k0_ = false, swapped_back_ = false;
    long n_steps_ = 0, n_rhs_ = 0;
};

}  // namespace plasmatw
