// Adaptive Dormand-Prince 5(4) integration for the small linear systems this
// project needs: amplitude equations A'' = (2m/hbar^2) V A, the Airy and
// Weber equations on their stable directions, and the scaled modified Bessel
// equation. Instead of a dense-output interpolant, the stepper can be forced
// to land exactly on a caller-supplied list of output points; for these cheap
// 2D systems that is both simpler and more accurate.
//
// Error control is per component against sc_i = atol + rtol * max(|y0_i|,
// |y1_i|). When atol scales with the initial data the integration is exactly
// homogeneous in the initial data, which keeps linear-ODE scaling properties
// bit-exact.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "freewave/errors.hpp"

namespace freewave {

using OdeState = Eigen::Vector2d;
using OdeRhs = std::function<OdeState(double, const OdeState&)>;

struct OdeOptions {
    double rtol = 1e-11;
    double atol = 1e-14;
    double initial_step = 0.0;    // 0 means auto
    long max_steps = 2'000'000;
};

namespace detail {

// Dormand-Prince RK5(4)7M tableau.
inline constexpr double A21 = 1.0 / 5.0;
inline constexpr double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0;
inline constexpr double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0;
inline constexpr double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0,
                        A53 = 64448.0 / 6561.0, A54 = -212.0 / 729.0;
inline constexpr double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0,
                        A63 = 46732.0 / 5247.0, A64 = 49.0 / 176.0,
                        A65 = -5103.0 / 18656.0;
inline constexpr double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0,
                        B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0;
inline constexpr double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0,
                        E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0;
inline constexpr double C2 = 1.0 / 5.0, C3 = 3.0 / 10.0, C4 = 4.0 / 5.0, C5 = 8.0 / 9.0;

}  // namespace detail

class DormandPrince {
public:
    DormandPrince(OdeRhs rhs, OdeOptions opt = {}) : rhs_(std::move(rhs)), opt_(opt) {}

    /// Advance (t_, y_) from (t0, y0) to t_end. Direction is inferred from
    /// the sign of t_end - t0; t_end == t0 is a no-op.
    void integrate(double t0, const OdeState& y0, double t_end) {
        t_ = t0;
        y_ = y0;
        k1_ = rhs_(t_, y_);
        fresh_k1_ = true;
        advance_to(t_end);
    }

    /// Integrate from (t0, y0) through every point in `points` (strictly
    /// monotone, starting after t0), invoking observe(t, y) at each.
    void integrate_through(double t0, const OdeState& y0, const std::vector<double>& points,
                           const std::function<void(double, const OdeState&)>& observe) {
        t_ = t0;
        y_ = y0;
        k1_ = rhs_(t_, y_);
        fresh_k1_ = true;
        for (double tp : points) {
            advance_to(tp);
            observe(t_, y_);
        }
    }

    double t() const { return t_; }
    const OdeState& y() const { return y_; }

private:
    void advance_to(double t_end) {
        const double dir = (t_end >= t_) ? 1.0 : -1.0;
        if (t_end == t_) return;
        double h = opt_.initial_step != 0.0 ? std::abs(opt_.initial_step)
                                            : std::abs(t_end - t_) / 100.0;
        h = std::min(h, std::abs(t_end - t_));
        long steps = 0;
        while (dir * (t_end - t_) > 0.0) {
            if (++steps > opt_.max_steps)
                throw StepFailureError("step limit exceeded before reaching target");
            h = std::min(h, std::abs(t_end - t_));
            const double hs = dir * h;

            if (!fresh_k1_) {
                k1_ = rhs_(t_, y_);
                fresh_k1_ = true;
            }
            using namespace detail;
            const OdeState k2 = rhs_(t_ + C2 * hs, y_ + hs * (A21 * k1_));
            const OdeState k3 = rhs_(t_ + C3 * hs, y_ + hs * (A31 * k1_ + A32 * k2));
            const OdeState k4 = rhs_(t_ + C4 * hs, y_ + hs * (A41 * k1_ + A42 * k2 + A43 * k3));
            const OdeState k5 =
                rhs_(t_ + C5 * hs, y_ + hs * (A51 * k1_ + A52 * k2 + A53 * k3 + A54 * k4));
            const OdeState k6 = rhs_(
                t_ + hs, y_ + hs * (A61 * k1_ + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5));
            const OdeState y_new =
                y_ + hs * (B1 * k1_ + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
            const OdeState k7 = rhs_(t_ + hs, y_new);
            const OdeState err_vec =
                hs * (E1 * k1_ + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);

            double err = 0.0;
            for (int i = 0; i < 2; ++i) {
                const double sc =
                    opt_.atol + opt_.rtol * std::max(std::abs(y_[i]), std::abs(y_new[i]));
                const double e = err_vec[i] / sc;
                err += e * e;
            }
            err = std::sqrt(err / 2.0);

            if (err <= 1.0) {
                t_ += hs;
                y_ = y_new;
                k1_ = k7;  // FSAL
                fresh_k1_ = true;
            } else {
                fresh_k1_ = true;  // k1 unchanged at (t_, y_)
            }
            const double fac =
                (err == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h *= fac;
            if (!(h > 0.0) || !std::isfinite(h))
                throw StepFailureError("step size underflow");
        }
    }

    OdeRhs rhs_;
    OdeOptions opt_;
    double t_ = 0.0;
    OdeState y_ = OdeState::Zero();
    OdeState k1_ = OdeState::Zero();
    bool fresh_k1_ = false;
};

/// One-call helper: integrate y' = f(t, y) from (t0, y0) to t1.
inline OdeState ode_integrate(const OdeRhs& rhs, double t0, const OdeState& y0, double t1,
                              OdeOptions opt = {}) {
    DormandPrince dp(rhs, opt);
    dp.integrate(t0, y0, t1);
    return dp.y();
}

}  // namespace freewave
