#include "freewave/tolerances.hpp"

namespace freewave {

// Frozen from the calibration run recorded in tests/fixtures/calibration.md
// (dx in {2e-2, 1e-2, 5e-3}, dt = dx^2, default windows/parameters, hbar =
// m = 1): each constant is the measured plateau rounded up with ~3x
// headroom. The Coulomb families are large because their windows reach down
// to s_min = 0.05 where V'' ~ 2/s^3; the harmonic-z pair is large because
// the parabolic cylinder amplitude reaches e^{u^2/4} ~ 3e3 at the window
// edge and the transport flux is not normalized.
ResidualConstants residual_constants(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::constant_force: return {20.0, 6.0, 2.5};
        case FamilyTag::delta_trap: return {1.0, 1.0, 1.0};  // grid checks skipped
        case FamilyTag::moving_coulomb: return {12000.0, 400.0, 4500.0};
        case FamilyTag::cosine_wave: return {1.0, 160.0, 8.0};
        case FamilyTag::harmonic_z: return {40.0, 2.0e9, 1.0e5};
        case FamilyTag::poschl_teller: return {4.0, 6.0, 3.0};
        case FamilyTag::modified_harmonic_z: return {60.0, 1.5, 1.5};
        case FamilyTag::modified_poschl_teller: return {1.0, 1.5, 1.5};
        case FamilyTag::time_decreasing_force: return {20.0, 10.0, 5.0};
        case FamilyTag::decaying_harmonic: return {40.0, 8.0e9, 3.0e5};
        case FamilyTag::coulomb_like: return {12000.0, 30.0, 4500.0};
        case FamilyTag::modified_decaying_harmonic: return {60.0, 2.0, 1.0};
    }
    return {20.0, 20.0, 20.0};
}

}  // namespace freewave
