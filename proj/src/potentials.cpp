#include "freewave/potentials.hpp"

#include <cmath>

#include "freewave/errors.hpp"

namespace freewave {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double sech(double x) { return 1.0 / std::cosh(x); }

void require_finite_param(double v, const char* name) {
    if (!std::isfinite(v))
        throw InvalidArgumentError(std::string(name) + " must be finite");
}

void require_nonzero(double v, const char* name) {
    require_finite_param(v, name);
    if (v == 0.0) throw InvalidArgumentError(std::string(name) + " must be nonzero");
}

void require_positive(double v, const char* name) {
    require_finite_param(v, name);
    if (!(v > 0.0)) throw InvalidArgumentError(std::string(name) + " must be > 0");
}

}  // namespace

FamilyTag PotentialFamily::tag() const {
    return static_cast<FamilyTag>(params.index());
}

PotentialFamily make_family(const FamilyParams& params, const FreeAction& action) {
    const auto tag = static_cast<FamilyTag>(params.index());
    const bool wants_separable = tag < FamilyTag::time_decreasing_force;
    if (wants_separable != action.separable())
        throw VariantMismatchError("family " + family_name(tag) + " requires the " +
                                   (wants_separable ? "separable" : "non-separable") +
                                   " action variant");
    std::visit(overloaded{
                   [](const ConstantForceParams& p) { require_nonzero(p.F, "F"); },
                   [](const DeltaTrapParams& p) {
                       require_positive(p.gamma, "gamma");
                       require_finite_param(p.beta, "beta");
                   },
                   [](const MovingCoulombParams& p) { require_positive(p.alpha, "alpha"); },
                   [](const CosineWaveParams& p) {
                       require_nonzero(p.gamma, "gamma");
                       require_nonzero(p.kappa, "kappa");
                   },
                   [](const HarmonicZParams& p) { require_positive(p.omega, "omega"); },
                   [](const PoschlTellerParams& p) { require_positive(p.gamma, "gamma"); },
                   [](const ModifiedHarmonicZParams& p) { require_positive(p.omega, "omega"); },
                   [](const ModifiedPoschlTellerParams&) {},
                   [](const TimeDecreasingForceParams& p) { require_nonzero(p.F0, "F0"); },
                   [](const DecayingHarmonicParams& p) { require_positive(p.omega0, "omega0"); },
                   [](const CoulombLikeParams& p) { require_positive(p.Z0, "Z0"); },
                   [](const ModifiedDecayingHarmonicParams& p) {
                       require_positive(p.omega0, "omega0");
                   },
               },
               params);
    return PotentialFamily{params, action};
}

double ReducedCoordinate::map(double x, double t) const {
    action->require_time(t);
    if (action->separable()) {
        const double k = action->as_separable().k;
        return x - k * t / action->units.mass;
    }
    const auto& ns = action->as_non_separable();
    return (x - ns.x0) / (t - ns.t0);
}

ReducedCoordinate reduced_coordinate(const PotentialFamily& p) {
    return ReducedCoordinate{&p.action};
}

double reduced_profile(const PotentialFamily& p, double s) {
    if (!std::isfinite(s)) throw InvalidArgumentError("reduced coordinate must be finite");
    const Units& u = p.units();
    const double m = u.mass, hbar = u.hbar;
    return std::visit(
        overloaded{
            [&](const ConstantForceParams& q) { return -q.F * s; },
            [&](const DeltaTrapParams&) -> double {
                throw NotAFunctionError(
                    "delta trap profile is distributional; use the jump-condition check");
            },
            [&](const MovingCoulombParams& q) {
                if (s == 0.0) throw SingularityError("Coulomb profile at s = 0");
                return q.alpha / s;
            },
            [&](const CosineWaveParams& q) { return q.gamma * std::cos(q.kappa * s); },
            [&](const HarmonicZParams& q) {
                return 0.5 * m * q.omega * q.omega * s * s;
            },
            [&](const PoschlTellerParams& q) {
                const double c = sech(s);
                return -q.gamma * c * c;
            },
            [&](const ModifiedHarmonicZParams& q) {
                return 0.5 * m * q.omega * q.omega * s * s - 0.5 * hbar * q.omega;
            },
            [&](const ModifiedPoschlTellerParams&) {
                const double c = sech(s);
                return -(hbar * hbar / m) * c * c + hbar * hbar / (2.0 * m);
            },
            [&](const TimeDecreasingForceParams& q) { return -q.F0 * s; },
            [&](const DecayingHarmonicParams& q) {
                return 0.5 * m * q.omega0 * q.omega0 * s * s;
            },
            [&](const CoulombLikeParams& q) {
                if (s == 0.0) throw SingularityError("Coulomb-like profile at s = 0");
                return q.Z0 / s;
            },
            [&](const ModifiedDecayingHarmonicParams& q) {
                return 0.5 * m * q.omega0 * q.omega0 * s * s - 0.5 * hbar * q.omega0;
            },
        },
        p.params);
}

double eval_potential(const PotentialFamily& p, double x, double t) {
    const double s = reduced_coordinate(p).map(x, t);
    if (p.separable()) return reduced_profile(p, s);
    const double dt = t - p.action.as_non_separable().t0;
    return reduced_profile(p, s) / (dt * dt);
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        {FamilyTag::constant_force, "constant_force", {{"F", 1.0}}, true,
         AmplitudeAvailability::closed_form},
        {FamilyTag::delta_trap, "delta_trap", {{"gamma", 1.0}, {"beta", 1.0}}, true,
         AmplitudeAvailability::analytic_piecewise},
        {FamilyTag::moving_coulomb, "moving_coulomb", {{"alpha", 1.0}}, true,
         AmplitudeAvailability::closed_form},
        {FamilyTag::cosine_wave, "cosine_wave", {{"gamma", 1.0}, {"kappa", 1.0}}, true,
         AmplitudeAvailability::ode_only},
        {FamilyTag::harmonic_z, "harmonic_z", {{"omega", 1.0}}, true,
         AmplitudeAvailability::closed_form},
        {FamilyTag::poschl_teller, "poschl_teller", {{"gamma", 1.0}}, true,
         AmplitudeAvailability::ode_only},
        {FamilyTag::modified_harmonic_z, "modified_harmonic_z", {{"omega", 1.0}}, true,
         AmplitudeAvailability::closed_form},
        {FamilyTag::modified_poschl_teller, "modified_poschl_teller", {}, true,
         AmplitudeAvailability::closed_form},
        {FamilyTag::time_decreasing_force, "time_decreasing_force", {{"F0", 1.0}}, false,
         AmplitudeAvailability::closed_form},
        {FamilyTag::decaying_harmonic, "decaying_harmonic", {{"omega0", 1.0}}, false,
         AmplitudeAvailability::closed_form},
        {FamilyTag::coulomb_like, "coulomb_like", {{"Z0", 1.0}}, false,
         AmplitudeAvailability::closed_form},
        {FamilyTag::modified_decaying_harmonic, "modified_decaying_harmonic",
         {{"omega0", 1.0}}, false, AmplitudeAvailability::closed_form},
    };
    return entries;
}

const CatalogEntry& catalog_entry(FamilyTag tag) {
    return catalog()[static_cast<size_t>(tag)];
}

const CatalogEntry& catalog_entry(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return e;
    throw ConfigError("unknown family '" + name + "'");
}

std::string family_name(FamilyTag tag) { return catalog_entry(tag).name; }

std::string availability_name(AmplitudeAvailability a) {
    switch (a) {
        case AmplitudeAvailability::closed_form: return "closed-form";
        case AmplitudeAvailability::ode_only: return "ode-only";
        case AmplitudeAvailability::analytic_piecewise: return "analytic-piecewise";
    }
    return "unknown";
}

std::optional<Window> cancel_window(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::constant_force: return Window{-6.0, 1.5};
        case FamilyTag::delta_trap: return std::nullopt;
        case FamilyTag::moving_coulomb: return Window{0.05, 5.0};
        case FamilyTag::cosine_wave: return Window{-2.0, 2.0};
        case FamilyTag::harmonic_z: return Window{-4.0, 4.0};
        case FamilyTag::poschl_teller: return Window{-1.1, 1.1};
        case FamilyTag::modified_harmonic_z: return Window{-5.0, 5.0};
        case FamilyTag::modified_poschl_teller: return Window{-5.0, 5.0};
        case FamilyTag::time_decreasing_force: return Window{-6.0, 1.5};
        case FamilyTag::decaying_harmonic: return Window{-4.0, 4.0};
        case FamilyTag::coulomb_like: return Window{0.05, 5.0};
        case FamilyTag::modified_decaying_harmonic: return Window{-5.0, 5.0};
    }
    return std::nullopt;
}

std::optional<Window> wide_window(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::constant_force: return Window{-8.0, 2.0};
        case FamilyTag::time_decreasing_force: return Window{-8.0, 2.0};
        default: return cancel_window(tag);
    }
}

}  // namespace freewave
