#include "freewave/actions.hpp"

#include <cmath>

#include "freewave/errors.hpp"

namespace freewave {

void FreeAction::require_time(double t) const {
    if (!std::isfinite(t)) throw InvalidArgumentError("time must be finite");
    if (!separable()) {
        const auto& ns = as_non_separable();
        if (!(t > ns.t0))
            throw TimeDomainError("non-separable action requires t > t0");
    }
}

FreeAction make_separable_action(double k, Units units) {
    units.validate();
    if (!std::isfinite(k)) throw InvalidArgumentError("k must be finite");
    return FreeAction{SeparableAction{k}, units};
}

FreeAction make_non_separable_action(double x0, double t0, Units units) {
    units.validate();
    if (!std::isfinite(x0) || !std::isfinite(t0))
        throw InvalidArgumentError("x0 and t0 must be finite");
    return FreeAction{NonSeparableAction{x0, t0}, units};
}

double eval_action(const FreeAction& a, double x, double t) {
    a.require_time(t);
    const double m = a.units.mass;
    if (a.separable()) {
        const double k = a.as_separable().k;
        return k * x - k * k * t / (2.0 * m);
    }
    const auto& ns = a.as_non_separable();
    const double dxv = x - ns.x0;
    return m * dxv * dxv / (2.0 * (t - ns.t0));
}

double action_time_derivative(const FreeAction& a, double x, double t) {
    a.require_time(t);
    const double m = a.units.mass;
    if (a.separable()) {
        const double k = a.as_separable().k;
        return -k * k / (2.0 * m);
    }
    const auto& ns = a.as_non_separable();
    const double dxv = x - ns.x0;
    const double dt = t - ns.t0;
    return -m * dxv * dxv / (2.0 * dt * dt);
}

RealField momentum_field(const FreeAction& a, const Grid1D& grid, double t) {
    a.require_time(t);
    const double m = a.units.mass;
    if (a.separable())
        return RealField::constant(grid, a.as_separable().k);
    const auto& ns = a.as_non_separable();
    return RealField::sample(grid, [&](double x) { return m * (x - ns.x0) / (t - ns.t0); });
}

RealField hj_residual_fields(const RealField& s_x, const RealField& s_t, double mass) {
    if (!s_x.grid.same_as(s_t.grid))
        throw InvalidArgumentError("hj_residual_fields: grids differ");
    RealField out(s_x.grid,
                  (s_x.values.array().square() / (2.0 * mass) + s_t.values.array()).matrix());
    out.require_finite("hj residual");
    return out;
}

RealField hj_residual(const FreeAction& a, const Grid1D& grid, double t) {
    RealField s_x = momentum_field(a, grid, t);
    RealField s_t = RealField::sample(grid, [&](double x) {
        return action_time_derivative(a, x, t);
    });
    return hj_residual_fields(s_x, s_t, a.units.mass);
}

}  // namespace freewave
