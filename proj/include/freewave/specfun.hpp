// Special functions needed by the amplitude catalog: Airy Ai, modified
// Bessel K_nu for the handful of orders the catalog uses, and the parabolic
// cylinder function D_{-1/2}.
//
// Everything is built in-house from three ingredients, with switchover
// points documented per function:
//   - ascending (Maclaurin) series where they are numerically stable,
//   - large-argument asymptotic expansions with optimal truncation,
//   - integration of the defining ODE along its stable direction to bridge
//     the band where neither expansion reaches full accuracy.
// Independent quadrature/series oracles for these functions live in the test
// suite only.
#pragma once

namespace freewave::specfun {

/// Airy function of the first kind.
///
/// Switchovers: Maclaurin series on [-5.5, 4.5]; asymptotic expansion for
/// u >= 9; on (4.5, 9) the Airy equation w'' = u w is integrated backward
/// from asymptotic data at u = 9 (Ai is dominant going down, so this is the
/// stable direction and keeps the relative error near rounding); for
/// u < -5.5 the same equation is integrated from series data at u = -5 (the
/// oscillatory direction is well conditioned). Absolute error <= 1e-10 on
/// |u| <= 12; beyond +12 the value underflows toward zero, which callers
/// accept.
double airy_ai(double u);

/// Derivative Ai'(u), same construction and range as airy_ai.
double airy_ai_prime(double u);

/// Modified Bessel function K_nu(x) for x > 0 and the orders used here
/// (0, 1, 1/4, 3/4; other nu in [0, 1.5] work but are untested).
///
/// Switchovers: ascending series for x <= 4 (log form at integer nu,
/// reflection form otherwise); asymptotic expansion for x >= 16; in between,
/// the exponentially scaled Bessel equation is integrated downward from
/// x = 16, the direction in which K is the dominant solution.
double bessel_k(double nu, double x);

/// K_1(x): relative error <= 1e-9 on [1e-3, 30]. Domain error for x <= 0.
double bessel_k1(double x);

/// Parabolic cylinder function D_{-1/2}(u).
///
/// For u > 0 via the identity D_{-1/2}(u) = sqrt(u/(2 pi)) K_{1/4}(u^2/4);
/// for u <= 0 by integrating the Weber equation w'' = (u^2/4) w from
/// identity data at u = 1 (D_{-1/2} is dominant toward -inf, so the
/// integration is stable). Relative error <= 1e-7 on [-6, 6].
double parabolic_cylinder_dmhalf(double u);

/// d/du D_{-1/2}(u), via -(u/2) sqrt(u/(2 pi)) K_{3/4}(u^2/4) for u > 0 and
/// the same ODE sweep for u <= 0.
double parabolic_cylinder_dmhalf_prime(double u);

}  // namespace freewave::specfun
