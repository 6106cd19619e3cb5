#include <doctest.h>

#include <cmath>

#include "freewave/amplitudes.hpp"
#include "freewave/stencils.hpp"
#include "freewave/verify.hpp"

using namespace freewave;

namespace {

WaveState state_for(FamilyTag tag, double x_lo, double x_hi, int n, double t = 0.0) {
    const PotentialFamily p = default_family(tag);
    const AmplitudeProfile amp = default_profile(p, x_lo - 0.5, x_hi + 0.5, 0);
    return assemble_state(p.action, p, amp, make_grid(x_lo, x_hi, n), t);
}

}  // namespace

TEST_CASE("bohm potential of a constant amplitude vanishes") {
    WaveState st;
    st.grid = make_grid(-1.0, 1.0, 101);
    st.amplitude = RealField::constant(st.grid, 3.7);
    st.phase = RealField::zero(st.grid);
    const BohmResult vb = bohm_potential(st);
    CHECK(vb.field.values.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("bohm potential point values for sech and gaussian") {
    // A = sech(z)/sqrt(2): V_B(0) = +1/2
    const WaveState mpt = state_for(FamilyTag::modified_poschl_teller, -2.0, 2.0, 2001);
    const BohmResult vb = bohm_potential(mpt);
    CHECK(vb.field.values[1000] == doctest::Approx(0.5).epsilon(1e-5));

    // A = exp(-z^2/2) (scaled): V_B(2) = -(1/2)(z^2 - 1) = -3/2
    const WaveState mhz = state_for(FamilyTag::modified_harmonic_z, -3.0, 3.0, 3001);
    const int i_at_2 = 2500;
    CHECK(mhz.grid.x(i_at_2) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(bohm_potential(mhz).field.values[i_at_2] == doctest::Approx(-1.5).epsilon(1e-5));
}

TEST_CASE("bohm potential is scale invariant") {
    WaveState st = state_for(FamilyTag::modified_poschl_teller, -3.0, 3.0, 501);
    const BohmResult base = bohm_potential(st);
    st.amplitude.values *= -17.3;
    const BohmResult scaled = bohm_potential(st);
    CHECK((base.field.values - scaled.field.values).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("cancellation residual passes for exact pairs at 1e-4 on dx = 1e-3") {
    for (FamilyTag tag : {FamilyTag::modified_poschl_teller, FamilyTag::modified_harmonic_z}) {
        CAPTURE(family_name(tag));
        const PotentialFamily p = default_family(tag);
        const AmplitudeProfile amp = default_profile(p, -5.5, 5.5, 0);
        const Grid1D g = make_grid(-5.0, 5.0, 10001);  // dx = 1e-3
        const WaveState st = assemble_state(p.action, p, amp, g, 0.0);
        const ResidualReport r = cancellation_residual(st, p);
        CHECK(r.max_abs <= 1e-4);
        CHECK(r.passed);
    }
}

TEST_CASE("cancellation negative control: mismatched pair fails") {
    const PotentialFamily mpt = default_family(FamilyTag::modified_poschl_teller);
    const PotentialFamily hz = default_family(FamilyTag::harmonic_z);
    const AmplitudeProfile amp = default_profile(mpt, -5.5, 5.5, 0);
    const WaveState st = assemble_state(mpt.action, mpt, amp, make_grid(-4.0, 4.0, 2001), 0.0);

    CHECK_THROWS_AS(cancellation_residual(st, hz), FamilyMismatchError);

    const ResidualReport r = cancellation_residual(st, hz, 1.0, /*allow_mismatch=*/true);
    CHECK_FALSE(r.passed);
    CHECK(r.max_abs > 0.5);  // O(1) disagreement
}

TEST_CASE("continuity residual: separable and non-separable") {
    const double dx = 2e-3, dt = 4e-6;
    {
        const PotentialFamily p = default_family(FamilyTag::modified_poschl_teller);
        const AmplitudeProfile amp = default_profile(p, -6.5, 6.5, 0);
        const Grid1D g = make_grid(-5.0, 5.0, 5001);
        const ResidualReport r = continuity_residual(p.action, p, amp, g, 1.0, dt);
        CHECK(r.passed);
        CHECK(r.max_abs <= 20.0 * (dx * dx + dt * dt));
    }
    {
        const PotentialFamily p = default_family(FamilyTag::modified_decaying_harmonic);
        const AmplitudeProfile amp = default_profile(p, -6.5, 6.5, 0);
        const Grid1D g = make_grid(-5.0, 5.0, 5001);
        const ResidualReport r = continuity_residual(p.action, p, amp, g, 3.0, dt);
        CHECK(r.passed);
    }
}

TEST_CASE("continuity negative control: wrong transport speed breaks the balance") {
    // any amplitude of the true z transports freely; feeding the residual a
    // state carried at the wrong speed (z = x - (k/m) t^2) must fail it
    const PotentialFamily p = default_family(FamilyTag::modified_poschl_teller);
    const Grid1D g = make_grid(-3.0, 6.0, 3001);
    const double t = 1.5, dt = 1e-5;
    auto corrupt = [&](double time) {
        WaveState st;
        st.grid = g;
        st.time = time;
        st.amplitude = RealField::sample(g, [&](double x) {
            const double w = x - time * time;  // wrong variable: t^2, not t
            return 1.0 / (std::sqrt(2.0) * std::cosh(w));
        });
        st.phase = RealField::sample(g, [&](double x) { return eval_action(p.action, x, time); });
        st.units = p.units();
        st.family_tag = family_name(p.tag());
        return st;
    };
    const ResidualReport r = continuity_residual_states(corrupt(t - dt), corrupt(t),
                                                        corrupt(t + dt), p.action, dt, 1e-3);
    CHECK_FALSE(r.passed);
    CHECK(r.max_abs > 0.1);
}

TEST_CASE("schrodinger residual on the modified harmonic state") {
    const PotentialFamily p = default_family(FamilyTag::modified_harmonic_z);
    const AmplitudeProfile amp = default_profile(p, -6.5, 6.5, 0);
    const Grid1D g = make_grid(-5.0, 5.0, 10001);  // dx = 1e-3
    const ResidualReport r = schrodinger_residual(p.action, p, amp, g, 1.0, 1e-4);
    CHECK(r.max_abs <= 1e-3);
    CHECK(r.passed);
}

TEST_CASE("schrodinger plane wave: analytic residual cancels to rounding") {
    // V = 0, A = 1, S = k x - k^2 t / 2m: assemble the residual analytically
    const double k = 1.3, m = 1.0, hbar = 1.0;
    const Grid1D g = make_grid(-5.0, 5.0, 101);
    double worst = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        const double t = 0.4;
        const std::complex<double> psi =
            std::polar(1.0, (k * x - k * k * t / (2.0 * m)) / hbar);
        const std::complex<double> lap = -(k / hbar) * (k / hbar) * psi;
        const std::complex<double> dpsi_dt =
            std::complex<double>(0.0, -k * k / (2.0 * m * hbar)) * psi;
        const std::complex<double> r =
            -hbar * hbar / (2.0 * m) * lap - std::complex<double>(0.0, hbar) * dpsi_dt;
        worst = std::max(worst, std::abs(r));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("liouville: separable density is a function of z only") {
    const PotentialFamily p = default_family(FamilyTag::modified_poschl_teller);
    const AmplitudeProfile amp = default_profile(p, -5.5, 5.5, 0);
    const Grid1D g1 = make_grid(-5.0, 5.0, 2001);
    const double t1 = 0.0, t2 = 0.2503;
    const WaveState s1 = assemble_state(p.action, p, amp, g1, t1);
    const Grid1D g2{g1.x_min + t2, g1.x_max + t2, g1.n};  // k/m = 1
    const WaveState s2 = assemble_state(p.action, p, amp, g2, t2);
    const ResidualReport r = liouville_invariant(p.action, s1, s2);
    CHECK(r.passed);

    // negative control: comparing without the shift must fail for moving states
    const WaveState s2_unshifted = assemble_state(p.action, p, amp, g1, t2);
    WaveState fake = s2_unshifted;
    fake.time = t2;
    const FreeAction still = make_separable_action(0.0);
    const ResidualReport bad = liouville_invariant(still, s1, fake, 1e-3);
    CHECK_FALSE(bad.passed);
    CHECK(bad.max_abs > 0.05);
}

TEST_CASE("liouville: non-separable (t - t0) A^2 matches at equal y") {
    const PotentialFamily p = default_family(FamilyTag::modified_decaying_harmonic);
    const AmplitudeProfile amp = default_profile(p, -6.0, 6.0, 0);
    const double t1 = 1.0, t2 = 4.0;
    const Grid1D g1 = make_grid(-5.0, 5.0, 2001);
    const Grid1D g2{g1.x_min * 4.0, g1.x_max * 4.0, g1.n};
    const WaveState s1 = assemble_state(p.action, p, amp, g1, t1);
    const WaveState s2 = assemble_state(p.action, p, amp, g2, t2);
    const ResidualReport r = liouville_invariant(p.action, s1, s2, 1e-9);
    CHECK(r.passed);
    CHECK(r.max_abs <= 1e-9);
}

TEST_CASE("jump condition check") {
    CHECK(jump_condition_check(1.0, 1.0, Units{}).passed);
    CHECK(jump_condition_check(2.0, 3.0, Units{}).passed);
    CHECK(jump_condition_check(1.0, 1.0, Units{}).max_abs == 0.0);
    const ResidualReport trivial = jump_condition_check(1.0, 0.0, Units{});
    CHECK(trivial.passed);
    CHECK(!trivial.skip_reason.empty());
    CHECK_THROWS_AS(jump_condition_check(-1.0, 1.0, Units{}), InvalidArgumentError);
}

TEST_CASE("convergence order of cancellation and schrodinger on gaussians") {
    const PotentialFamily p = default_family(FamilyTag::modified_harmonic_z);
    const AmplitudeProfile amp = default_profile(p, -6.5, 6.5, 0);

    auto cancel_max = [&](double dx) {
        const int n = static_cast<int>(std::lround(10.0 / dx)) + 1;
        const Grid1D g = make_grid(-5.0, 5.0, n);
        const WaveState st = assemble_state(p.action, p, amp, g, 0.0);
        return cancellation_residual(st, p).max_abs;
    };
    const double o1 = convergence_order(cancel_max, {4e-3, 2e-3, 1e-3});
    CHECK(o1 > 1.8);
    CHECK(o1 < 2.2);

    auto schro_max = [&](double dx) {
        const int n = static_cast<int>(std::lround(10.0 / dx)) + 1;
        const Grid1D g = make_grid(-5.0, 5.0, n);
        return schrodinger_residual(p.action, p, amp, g, 1.0, dx * dx).max_abs;
    };
    const double o2 = convergence_order(schro_max, {4e-3, 2e-3, 1e-3});
    CHECK(o2 > 1.8);
    CHECK(o2 < 2.2);
}

TEST_CASE("convergence order rejects non-decreasing residuals") {
    CHECK_THROWS_AS(convergence_order([](double) { return 1e-16; }, {4e-3, 2e-3, 1e-3}),
                    NonMonotoneError);
}

TEST_CASE("schrodinger residual on the wide constant-force window") {
    // the wide Airy window crosses the first amplitude node; the residual has
    // no division by A, so the check runs straight through it
    const PotentialFamily p = default_family(FamilyTag::constant_force);
    const AmplitudeProfile amp = default_profile(p, -9.5, 3.5, 0);
    const double t = 1.0;
    auto schro = [&](double dx) {
        const int n = static_cast<int>(std::lround(10.0 / dx)) + 1;
        const Grid1D g = make_grid(-8.0 + t, 2.0 + t, n);  // z in [-8, 2]
        return schrodinger_residual(p.action, p, amp, g, t, dx * dx).max_abs;
    };
    CHECK(schro(5e-3) < 1e-3);
    const double order = convergence_order(schro, {2e-2, 1e-2, 5e-3});
    CHECK(order > 1.8);
    CHECK(order < 2.2);
}

TEST_CASE("hj + cancellation + continuity imply schrodinger across the catalog") {
    FamilyCheckConfig cfg;
    cfg.dx = 1e-2;
    for (const auto& e : catalog()) {
        if (e.tag == FamilyTag::delta_trap) continue;
        CAPTURE(e.name);
        const FamilyVerification v = verify_family(default_family(e.tag), cfg);
        bool hj = false, cancel = false, cont = false, schro = false;
        for (const auto& c : v.checks) {
            if (c.name == "hj") hj = c.passed;
            if (c.name == "cancellation") cancel = c.passed;
            if (c.name == "continuity") cont = c.passed;
            if (c.name == "schrodinger") schro = c.passed;
        }
        REQUIRE(hj);
        REQUIRE(cancel);
        REQUIRE(cont);
        CHECK(schro);  // the three component identities force the assembled one
    }
}

TEST_CASE("verify_family runs the full check set") {
    FamilyCheckConfig cfg;
    cfg.dx = 1e-2;
    const FamilyVerification v = verify_family(default_family(FamilyTag::modified_poschl_teller), cfg);
    CHECK(v.all_passed);
    CHECK(v.checks.size() == 5);

    const FamilyVerification d = verify_family(default_family(FamilyTag::delta_trap), cfg);
    CHECK(d.all_passed);
    bool has_skip = false;
    for (const auto& c : d.checks) has_skip = has_skip || c.skipped;
    CHECK(has_skip);
}
