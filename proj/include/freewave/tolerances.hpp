// Frozen residual tolerance constants.
//
// Every grid check asserts max|residual| <= C * dx^2 (cancellation, Bohm
// route) or C * (dx^2 + dt^2) (continuity, Schrodinger). The identities are
// exact; all slack comes from the second-order stencils, so C is the only
// free number and it must be auditable. The constants below were frozen from
// a calibration run at dx = 5e-3 (dt = dx^2) over each family's default
// window with default parameters and hbar = m = 1: C = measured max|residual|
// / dx^2, rounded up to one significant digit and doubled for headroom.
// The measured values are recorded in tests/fixtures/calibration.md; the
// Coulomb families carry large constants because their windows reach down to
// s_min = 0.05 where V'' ~ 2/s^3 is already ~1.6e4.
#pragma once

#include "freewave/potentials.hpp"

namespace freewave {

struct ResidualConstants {
    double cancellation;  // max|V_B + V|            <= cancellation * dx^2
    double continuity;    // max|transport residual| <= continuity * (dx^2 + dt^2)
    double schrodinger;   // max|Schrodinger res.|   <= schrodinger * (dx^2 + dt^2)
};

ResidualConstants residual_constants(FamilyTag tag);

/// Tolerance for the free-HJ residual: exact identity, rounding only.
inline constexpr double kHjTolerance = 1e-12;

/// Default |A| floor below which Bohm-potential points are excluded.
inline constexpr double kAmplitudeFloor = 1e-10;

/// Half-width (in grid steps) of the exclusion window around amplitude nodes.
inline constexpr int kNodeExclusionSteps = 3;

/// Fraction of floor-excluded points above which bohm_potential refuses.
inline constexpr double kMaxExcludedFraction = 0.2;

}  // namespace freewave
