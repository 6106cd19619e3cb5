// The two closed-form free-particle actions and the free Hamilton-Jacobi
// residual that certifies them.
//
// Separable:      S(x,t) = k x - k^2 t / (2m)
// Non-separable:  S(x,t) = m (x-x0)^2 / (2 (t-t0)),  valid only for t > t0
//
// Residuals are assembled from analytic derivatives of the closed forms;
// finite-difference recomputation of S' lives in the tests, not here.
#pragma once

#include <variant>

#include "freewave/field.hpp"
#include "freewave/grid.hpp"

namespace freewave {

struct SeparableAction {
    double k = 1.0;
};

struct NonSeparableAction {
    double x0 = 0.0;
    double t0 = 0.0;
};

struct FreeAction {
    std::variant<SeparableAction, NonSeparableAction> variant;
    Units units;

    bool separable() const { return std::holds_alternative<SeparableAction>(variant); }
    const SeparableAction& as_separable() const { return std::get<SeparableAction>(variant); }
    const NonSeparableAction& as_non_separable() const {
        return std::get<NonSeparableAction>(variant);
    }

    /// Throws TimeDomainError when t is outside the action's domain.
    void require_time(double t) const;
};

FreeAction make_separable_action(double k, Units units = {});
FreeAction make_non_separable_action(double x0, double t0, Units units = {});

/// S(x, t), exact closed form.
double eval_action(const FreeAction& a, double x, double t);

/// dS/dt at (x, t), exact closed form.
double action_time_derivative(const FreeAction& a, double x, double t);

/// p = dS/dx sampled analytically on the grid (never by finite differences).
RealField momentum_field(const FreeAction& a, const Grid1D& grid, double t);

/// (S')^2/(2m) + dS/dt with both terms analytic; identically zero (to
/// rounding) for every FreeAction in its domain.
RealField hj_residual(const FreeAction& a, const Grid1D& grid, double t);

/// Core of hj_residual over arbitrary derivative fields; exposed so tests
/// can feed deliberately wrong actions through the same arithmetic.
RealField hj_residual_fields(const RealField& s_x, const RealField& s_t, double mass);

}  // namespace freewave
