// Catalog of external potentials admitting free-classical propagation, each
// with its laboratory form V(x,t) and its reduced profile.
//
// The first eight families ride the separable action and reduce through
// z = x - (k/m) t; the last four ride the non-separable action and reduce
// through y = (x-x0)/(t-t0) with V(x,t) = V_red(y)/(t-t0)^2. A family
// permanently carries the parameters of its action variant.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "freewave/actions.hpp"
#include "freewave/grid.hpp"

namespace freewave {

enum class FamilyTag {
    constant_force,
    delta_trap,
    moving_coulomb,
    cosine_wave,
    harmonic_z,
    poschl_teller,
    modified_harmonic_z,
    modified_poschl_teller,
    time_decreasing_force,
    decaying_harmonic,
    coulomb_like,
    modified_decaying_harmonic,
};

enum class AmplitudeAvailability { closed_form, ode_only, analytic_piecewise };

// Parameter structs; defaults are the hbar = m = 1 reference configuration.
struct ConstantForceParams { double F = 1.0; };                 // V(z) = -F z
struct DeltaTrapParams { double gamma = 1.0; double beta = 1.0; };  // V(z) = -gamma delta(z)
struct MovingCoulombParams { double alpha = 1.0; };             // V(z) = alpha / z
struct CosineWaveParams { double gamma = 1.0; double kappa = 1.0; };  // V(z) = gamma cos(kappa z)
struct HarmonicZParams { double omega = 1.0; };                 // V(z) = m w^2 z^2 / 2
struct PoschlTellerParams { double gamma = 1.0; };              // V(z) = -gamma sech^2 z
struct ModifiedHarmonicZParams { double omega = 1.0; };         // m w^2 z^2/2 - hbar w/2
struct ModifiedPoschlTellerParams {};                           // -(hbar^2/m) sech^2 z + hbar^2/2m
struct TimeDecreasingForceParams { double F0 = 1.0; };          // Vred(y) = -F0 y
struct DecayingHarmonicParams { double omega0 = 1.0; };         // Vred(y) = m w0^2 y^2 / 2
struct CoulombLikeParams { double Z0 = 1.0; };                  // Vred(y) = Z0 / y
struct ModifiedDecayingHarmonicParams { double omega0 = 1.0; }; // m w0^2 y^2/2 - hbar w0/2

using FamilyParams =
    std::variant<ConstantForceParams, DeltaTrapParams, MovingCoulombParams, CosineWaveParams,
                 HarmonicZParams, PoschlTellerParams, ModifiedHarmonicZParams,
                 ModifiedPoschlTellerParams, TimeDecreasingForceParams, DecayingHarmonicParams,
                 CoulombLikeParams, ModifiedDecayingHarmonicParams>;

struct PotentialFamily {
    FamilyParams params;
    FreeAction action;  // variant is fixed by the family (checked at construction)

    FamilyTag tag() const;
    const Units& units() const { return action.units; }
    bool separable() const { return action.separable(); }
};

/// Build a family around its action, validating parameters and that the
/// action variant is the one the family requires.
PotentialFamily make_family(const FamilyParams& params, const FreeAction& action);

/// Reduced coordinate map (x,t) -> z or y for a family's action.
struct ReducedCoordinate {
    const FreeAction* action;
    double map(double x, double t) const;
};

ReducedCoordinate reduced_coordinate(const PotentialFamily& p);

/// V(z) or V_red(y) at reduced coordinate s.
/// Throws SingularityError at s = 0 for the Coulomb families and
/// NotAFunctionError for DeltaTrap (distributional; use the jump check).
double reduced_profile(const PotentialFamily& p, double s);

/// Laboratory potential V(x, t).
double eval_potential(const PotentialFamily& p, double x, double t);

// --- catalog -----------------------------------------------------------

struct ParamSpec {
    std::string name;
    double default_value;
};

struct CatalogEntry {
    FamilyTag tag;
    std::string name;  // snake_case tag string, stable
    std::vector<ParamSpec> params;
    bool separable;
    AmplitudeAvailability availability;
};

/// The 12 families in stable order with machine-readable parameter schemas.
const std::vector<CatalogEntry>& catalog();

const CatalogEntry& catalog_entry(FamilyTag tag);
const CatalogEntry& catalog_entry(const std::string& name);
std::string family_name(FamilyTag tag);
std::string availability_name(AmplitudeAvailability a);

/// Default reduced-coordinate intervals used by the verification sweeps.
/// `cancel` avoids amplitude nodes so the Bohm-potential division stays
/// clean; `wide` is used by the division-free residuals. Empty for
/// DeltaTrap, whose grid checks are replaced by the exact jump identity.
struct Window {
    double lo = 0.0;
    double hi = 0.0;
};
std::optional<Window> cancel_window(FamilyTag tag);
std::optional<Window> wide_window(FamilyTag tag);

}  // namespace freewave
