#include <doctest.h>

#include <cmath>

#include "freewave/actions.hpp"
#include "freewave/stencils.hpp"

using namespace freewave;

TEST_CASE("eval_action closed forms") {
    const FreeAction sep = make_separable_action(1.0);
    CHECK(eval_action(sep, 2.0, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(eval_action(sep, 0.0, 2.0) == doctest::Approx(-1.0).epsilon(1e-15));

    const FreeAction ns = make_non_separable_action(0.0, 0.0);
    CHECK(eval_action(ns, 2.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));

    const FreeAction ns1 = make_non_separable_action(0.0, 1.0);
    CHECK_THROWS_AS(eval_action(ns1, 0.0, 1.0), TimeDomainError);
    CHECK_THROWS_AS(eval_action(ns1, 0.0, 0.5), TimeDomainError);
}

TEST_CASE("momentum_field") {
    const Grid1D g = make_grid(-5.0, 5.0, 101);

    const FreeAction sep = make_separable_action(3.0);
    const RealField p1 = momentum_field(sep, g, 0.7);
    CHECK((p1.values.array() - 3.0).abs().maxCoeff() == 0.0);

    const FreeAction ns = make_non_separable_action(0.0, 0.0);
    const RealField p2 = momentum_field(ns, g, 2.0);
    CHECK(p2.values[g.n - 1] == doctest::Approx(2.5).epsilon(1e-14));  // x=5 -> m x / t

    Units u2;
    u2.mass = 2.0;
    const FreeAction ns2 = make_non_separable_action(1.0, 0.0, u2);
    const Grid1D g2 = make_grid(0.0, 2.0, 9);
    const RealField p3 = momentum_field(ns2, g2, 2.0);
    CHECK(p3.values[4] == doctest::Approx(0.0).epsilon(1e-15));  // x = 1 = x0
}

TEST_CASE("momentum constant along characteristics") {
    const FreeAction ns = make_non_separable_action(0.5, 0.25);
    const double y = 1.3;  // characteristic label
    for (double t : {1.0, 2.0, 7.5}) {
        const double x = 0.5 + y * (t - 0.25);
        const Grid1D g = make_grid(x - 0.1, x + 0.1, 9);
        const RealField p = momentum_field(ns, g, t);
        CHECK(std::abs(p.values[4] - y) < 1e-12);  // m = 1
    }
}

TEST_CASE("hj_residual vanishes for both variants") {
    const Grid1D g = make_grid(-10.0, 10.0, 501);

    const FreeAction sep = make_separable_action(1.7);
    CHECK(hj_residual(sep, g, 0.3).values.cwiseAbs().maxCoeff() <= 1e-12);

    const FreeAction ns = make_non_separable_action(0.5, 0.0);
    CHECK(hj_residual(ns, g, 2.0).values.cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("hj negative control: S = x^2 is not a free action") {
    const Grid1D g = make_grid(0.0, 2.0, 21);
    const RealField s_x = RealField::sample(g, [](double x) { return 2.0 * x; });  // S' of x^2
    const RealField s_t = RealField::zero(g);
    const RealField r = hj_residual_fields(s_x, s_t, 1.0);
    const int i_at_1 = 10;
    CHECK(r.values[i_at_1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("finite-difference S' matches momentum_field to O(dx^2)") {
    const FreeAction ns = make_non_separable_action(0.3, 0.1);
    auto err = [&](int n) {
        const Grid1D g = make_grid(-4.0, 6.0, n);
        const RealField s = RealField::sample(g, [&](double x) { return eval_action(ns, x, 1.4); });
        const RealField ds = d1(s);
        const RealField p = momentum_field(ns, g, 1.4);
        return (ds.values - p.values).cwiseAbs().maxCoeff();
    };
    // quadratic S: the centered stencil is exact up to rounding
    CHECK(err(401) < 1e-10);

    const FreeAction sep = make_separable_action(2.2);
    const Grid1D g = make_grid(-4.0, 6.0, 301);
    const RealField s =
        RealField::sample(g, [&](double x) { return eval_action(sep, x, 0.9); });
    CHECK((d1(s).values - momentum_field(sep, g, 0.9).values).cwiseAbs().maxCoeff() < 1e-11);
}
