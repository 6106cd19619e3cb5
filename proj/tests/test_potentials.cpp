#include <doctest.h>

#include <cmath>

#include "freewave/potentials.hpp"
#include "freewave/verify.hpp"

using namespace freewave;

TEST_CASE("catalog has 12 entries with the documented availabilities") {
    const auto& cat = catalog();
    REQUIRE(cat.size() == 12);
    CHECK(catalog_entry("cosine_wave").availability == AmplitudeAvailability::ode_only);
    CHECK(catalog_entry("modified_poschl_teller").availability ==
          AmplitudeAvailability::closed_form);
    CHECK(catalog_entry("delta_trap").availability == AmplitudeAvailability::analytic_piecewise);
    int separable_count = 0;
    for (const auto& e : cat) separable_count += e.separable ? 1 : 0;
    CHECK(separable_count == 8);
}

TEST_CASE("reduced_profile closed forms") {
    CHECK(reduced_profile(default_family(FamilyTag::constant_force), 2.0) ==
          doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(reduced_profile(default_family(FamilyTag::poschl_teller), 0.0) ==
          doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(reduced_profile(default_family(FamilyTag::modified_poschl_teller), 0.0) ==
          doctest::Approx(-0.5).epsilon(1e-15));
    CHECK_THROWS_AS(reduced_profile(default_family(FamilyTag::moving_coulomb), 0.0),
                    SingularityError);
    CHECK_THROWS_AS(reduced_profile(default_family(FamilyTag::delta_trap), 0.5),
                    NotAFunctionError);
}

TEST_CASE("eval_potential maps through the reduced coordinate") {
    // constant force, k = 1, m = 1 at (x=3, t=1): z = 2 -> V = -2
    CHECK(eval_potential(default_family(FamilyTag::constant_force), 3.0, 1.0) ==
          doctest::Approx(-2.0).epsilon(1e-14));

    // decaying harmonic at (x=2, t=2): y = 1 -> (1/4)(1/2) = 0.125
    CHECK(eval_potential(default_family(FamilyTag::decaying_harmonic), 2.0, 2.0) ==
          doctest::Approx(0.125).epsilon(1e-14));

    // coulomb-like at (x=1, t=2): y = 1/2 -> (1/4) * 2 = 0.5
    CHECK(eval_potential(default_family(FamilyTag::coulomb_like), 1.0, 2.0) ==
          doctest::Approx(0.5).epsilon(1e-14));

    CHECK_THROWS_AS(eval_potential(default_family(FamilyTag::coulomb_like), 1.0, -1.0),
                    TimeDomainError);
}

TEST_CASE("separable families are translation invariant in z") {
    for (FamilyTag tag : {FamilyTag::constant_force, FamilyTag::moving_coulomb,
                          FamilyTag::cosine_wave, FamilyTag::harmonic_z,
                          FamilyTag::poschl_teller, FamilyTag::modified_harmonic_z,
                          FamilyTag::modified_poschl_teller}) {
        CAPTURE(family_name(tag));
        const PotentialFamily p = default_family(tag);
        for (double ddt : {0.1, 0.7, 3.0}) {
            const double x = 1.3, t = 0.4;  // z = 0.9, away from the Coulomb pole
            const double v1 = eval_potential(p, x, t);
            const double v2 = eval_potential(p, x + ddt, t + ddt);  // k/m = 1
            CHECK(std::abs(v1 - v2) <= 1e-12 * std::max(1.0, std::abs(v1)));
        }
    }
}

TEST_CASE("non-separable families scale as (t-t0)^-2 at fixed y") {
    for (FamilyTag tag : {FamilyTag::time_decreasing_force, FamilyTag::decaying_harmonic,
                          FamilyTag::coulomb_like, FamilyTag::modified_decaying_harmonic}) {
        CAPTURE(family_name(tag));
        const PotentialFamily p = default_family(tag);
        const double y = 0.8;
        const double t1 = 1.0, t2 = 3.5;
        const double v1 = eval_potential(p, y * t1, t1) * t1 * t1;
        const double v2 = eval_potential(p, y * t2, t2) * t2 * t2;
        CHECK(std::abs(v1 - v2) <= 1e-12 * std::max(1.0, std::abs(v1)));
    }
}

TEST_CASE("modified harmonic differs from harmonic by -hbar w / 2") {
    const PotentialFamily h = default_family(FamilyTag::harmonic_z);
    const PotentialFamily mh = default_family(FamilyTag::modified_harmonic_z);
    for (double s : {-3.0, -0.2, 0.0, 1.7, 4.0}) {
        CHECK(reduced_profile(mh, s) - reduced_profile(h, s) ==
              doctest::Approx(-0.5).epsilon(1e-14));
    }
}

TEST_CASE("family construction validates the action variant and parameters") {
    CHECK_THROWS_AS(make_family(ConstantForceParams{1.0}, make_non_separable_action(0.0, 0.0)),
                    VariantMismatchError);
    CHECK_THROWS_AS(make_family(CoulombLikeParams{1.0}, make_separable_action(1.0)),
                    VariantMismatchError);
    CHECK_THROWS_AS(make_family(PoschlTellerParams{-1.0}, make_separable_action(1.0)),
                    InvalidArgumentError);
    CHECK_THROWS_AS(make_family(ConstantForceParams{0.0}, make_separable_action(1.0)),
                    InvalidArgumentError);
}
