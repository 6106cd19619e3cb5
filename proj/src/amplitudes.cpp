#include "freewave/amplitudes.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "freewave/errors.hpp"
#include "freewave/ode.hpp"
#include "freewave/specfun.hpp"
#include "freewave/stencils.hpp"

namespace freewave {

namespace {

constexpr double kPi = 3.14159265358979323846;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double sech(double x) { return 1.0 / std::cosh(x); }

// Legendre P_n(x) and derivative by the three-term recurrence.
void legendre_pn(int n, double x, double& p, double& dp) {
    double pm = 1.0, pc = x;
    if (n == 0) {
        p = 1.0;
        dp = 0.0;
        return;
    }
    for (int k = 1; k < n; ++k) {
        const double pn = ((2.0 * k + 1.0) * x * pc - k * pm) / (k + 1.0);
        pm = pc;
        pc = pn;
    }
    p = pc;
    // (1-x^2) P_n' = n (P_{n-1} - x P_n)
    const double om = 1.0 - x * x;
    dp = (om > 0.0) ? n * (pm - x * pc) / om : 0.0;
}

void closed_form_pair(const PotentialFamily& p, double s, const AmplitudeSeeds& seeds,
                      double& value, double& deriv) {
    const Units& u = p.units();
    const double m = u.mass, hbar = u.hbar;
    std::visit(
        overloaded{
            [&](const ConstantForceParams& q) {
                const double c = std::cbrt(2.0 * m * q.F / (hbar * hbar));
                value = specfun::airy_ai(-c * s);
                deriv = -c * specfun::airy_ai_prime(-c * s);
            },
            [&](const DeltaTrapParams& q) {
                const double slope = m * q.gamma * q.beta / (hbar * hbar);
                value = slope * std::abs(s) - q.beta;
                deriv = (s >= 0.0) ? slope : -slope;  // one-sided at s = 0
            },
            [&](const MovingCoulombParams& q) {
                if (!(s > 0.0))
                    throw SingularityError("Coulomb amplitude requires s > 0");
                const double w = 2.0 * std::sqrt(2.0 * m * q.alpha * s) / hbar;
                value = 0.5 * w * specfun::bessel_k1(w);
                deriv = -(2.0 * m * q.alpha / (hbar * hbar)) * specfun::bessel_k(0.0, w);
            },
            [&](const CosineWaveParams&) -> void {
                throw NoClosedFormError(
                    "cosine-wave amplitudes solve a Mathieu equation with no closed form here; "
                    "use the ODE route");
            },
            [&](const HarmonicZParams& q) {
                const double c = std::sqrt(2.0 * m * q.omega / hbar);
                value = specfun::parabolic_cylinder_dmhalf(c * s);
                deriv = c * specfun::parabolic_cylinder_dmhalf_prime(c * s);
            },
            [&](const PoschlTellerParams& q) {
                const double n = poschl_teller_degree(q.gamma, u);
                const double nr = std::round(n);
                if (std::abs(n - nr) > 1e-9 || nr < 0.0)
                    throw NoClosedFormError(
                        "Poschl-Teller degree n = " + std::to_string(n) +
                        " is not a nonnegative integer; use the ODE route");
                if (seeds.a2 != 0.0)
                    throw NoClosedFormError(
                        "Legendre Q part has no polynomial form; use the ODE route");
                double pn, dpn;
                const double th = std::tanh(s);
                legendre_pn(static_cast<int>(nr), th, pn, dpn);
                const double sech2 = 1.0 - th * th;
                value = seeds.a1 * pn;
                deriv = seeds.a1 * dpn * sech2;
            },
            [&](const ModifiedHarmonicZParams& q) {
                const double c = m * q.omega / hbar;
                const double pref = std::pow(c / kPi, 0.25);
                value = pref * std::exp(-0.5 * c * s * s);
                deriv = -c * s * value;
            },
            [&](const ModifiedPoschlTellerParams&) {
                value = sech(s) / std::sqrt(2.0);
                deriv = -std::tanh(s) * value;
            },
            [&](const TimeDecreasingForceParams& q) {
                const double c = std::cbrt(2.0 * m * q.F0 / (hbar * hbar));
                value = specfun::airy_ai(-c * s);
                deriv = -c * specfun::airy_ai_prime(-c * s);
            },
            [&](const DecayingHarmonicParams& q) {
                const double c = std::sqrt(2.0 * m * q.omega0 / hbar);
                value = specfun::parabolic_cylinder_dmhalf(c * s);
                deriv = c * specfun::parabolic_cylinder_dmhalf_prime(c * s);
            },
            [&](const CoulombLikeParams& q) {
                if (!(s > 0.0))
                    throw SingularityError("Coulomb-like amplitude requires s > 0");
                const double w = 2.0 * std::sqrt(2.0 * m * q.Z0 * s) / hbar;
                value = 0.5 * w * specfun::bessel_k1(w);
                deriv = -(2.0 * m * q.Z0 / (hbar * hbar)) * specfun::bessel_k(0.0, w);
            },
            [&](const ModifiedDecayingHarmonicParams& q) {
                const double c = m * q.omega0 / hbar;
                const double pref = std::pow(c / kPi, 0.25);
                value = pref * std::exp(-0.5 * c * s * s);
                deriv = -c * s * value;
            },
        },
        p.params);
}

int auto_samples(double lo, double hi) {
    const int n = static_cast<int>(std::ceil((hi - lo) / 0.002)) + 1;
    return std::clamp(n, 101, 20001);
}

}  // namespace

std::string amplitude_source_name(AmplitudeSource s) {
    switch (s) {
        case AmplitudeSource::closed_form: return "closed-form";
        case AmplitudeSource::ode_oracle: return "ode-oracle";
        case AmplitudeSource::analytic_piecewise: return "analytic-piecewise";
    }
    return "unknown";
}

double poschl_teller_degree(double gamma, const Units& units) {
    const double r = 8.0 * units.mass * gamma / (units.hbar * units.hbar);
    return 0.5 * (std::sqrt(1.0 + r) - 1.0);
}

double closed_form_amplitude(const PotentialFamily& p, double s, const AmplitudeSeeds& seeds) {
    double v, d;
    closed_form_pair(p, s, seeds, v, d);
    return v;
}

double closed_form_amplitude_deriv(const PotentialFamily& p, double s,
                                   const AmplitudeSeeds& seeds) {
    double v, d;
    closed_form_pair(p, s, seeds, v, d);
    return d;
}

double AmplitudeProfile::eval(double s) const {
    if (s < s_grid.x_min - 1e-12 || s > s_grid.x_max + 1e-12)
        throw RangeError("reduced coordinate outside amplitude profile range");
    if (source != AmplitudeSource::ode_oracle)
        return closed_form_amplitude(family, s, seeds);
    // cubic Hermite between samples; exact at nodes
    const double h = s_grid.dx();
    int i = static_cast<int>(std::floor((s - s_grid.x_min) / h));
    i = std::clamp(i, 0, s_grid.n - 2);
    const double th = (s - s_grid.x(i)) / h;
    const double h00 = (1.0 + 2.0 * th) * (1.0 - th) * (1.0 - th);
    const double h10 = th * (1.0 - th) * (1.0 - th);
    const double h01 = th * th * (3.0 - 2.0 * th);
    const double h11 = th * th * (th - 1.0);
    return h00 * values[i] + h * h10 * derivs[i] + h01 * values[i + 1] + h * h11 * derivs[i + 1];
}

double AmplitudeProfile::eval_deriv(double s) const {
    if (s < s_grid.x_min - 1e-12 || s > s_grid.x_max + 1e-12)
        throw RangeError("reduced coordinate outside amplitude profile range");
    if (source != AmplitudeSource::ode_oracle)
        return closed_form_amplitude_deriv(family, s, seeds);
    const double h = s_grid.dx();
    int i = static_cast<int>(std::floor((s - s_grid.x_min) / h));
    i = std::clamp(i, 0, s_grid.n - 2);
    const double th = (s - s_grid.x(i)) / h;
    const double g00 = 6.0 * th * (th - 1.0) / h;
    const double g10 = (3.0 * th - 1.0) * (th - 1.0);
    const double g01 = -g00;
    const double g11 = th * (3.0 * th - 2.0);
    return g00 * values[i] + g10 * derivs[i] + g01 * values[i + 1] + g11 * derivs[i + 1];
}

SampledSolution integrate_linear_second_order(const std::function<double(double)>& coeff,
                                              double s_start, double s_end, double a0, double da0,
                                              double tol, int n_samples) {
    if (!(tol >= 1e-12 && tol <= 1e-4))
        throw InvalidArgumentError("ode tolerance must lie in [1e-12, 1e-4]");
    if (s_start == s_end) throw InvalidArgumentError("empty integration interval");
    const double lo = std::min(s_start, s_end), hi = std::max(s_start, s_end);
    if (n_samples == 0) n_samples = auto_samples(lo, hi);
    if (n_samples < 8) throw InvalidArgumentError("need at least 8 profile samples");
    const Grid1D sg = make_grid(lo, hi, n_samples);

    auto rhs = [&coeff](double s, const OdeState& y) {
        return OdeState(y[1], coeff(s) * y[0]);
    };
    const double scale0 = std::max({std::abs(a0), std::abs(da0), 1e-30});
    OdeOptions opt;
    opt.rtol = tol;
    opt.atol = tol * 1e-3 * scale0;

    Eigen::VectorXd vals(n_samples), ders(n_samples);
    const bool forward = s_end > s_start;
    std::vector<double> targets;
    targets.reserve(static_cast<size_t>(n_samples));
    std::vector<int> idx;
    idx.reserve(static_cast<size_t>(n_samples));
    int written = 0;
    for (int j = 0; j < n_samples; ++j) {
        const int gi = forward ? j : n_samples - 1 - j;
        const double sp = sg.x(gi);
        if (sp == s_start) {  // the seed point itself
            vals[gi] = a0;
            ders[gi] = da0;
            ++written;
        } else {
            targets.push_back(sp);
            idx.push_back(gi);
        }
    }
    DormandPrince dp(rhs, opt);
    size_t next = 0;
    dp.integrate_through(s_start, OdeState(a0, da0), targets,
                         [&](double, const OdeState& y) {
                             vals[idx[next]] = y[0];
                             ders[idx[next]] = y[1];
                             ++next;
                             ++written;
                         });
    if (written != n_samples) throw StepFailureError("profile sampling incomplete");

    SampledSolution out;
    out.s_grid = sg;
    out.values = std::move(vals);
    out.derivs = std::move(ders);
    if (!out.values.allFinite() || !out.derivs.allFinite())
        throw NonFiniteError("ODE profile contains NaN/Inf");
    return out;
}

AmplitudeProfile integrate_amplitude_ode(const PotentialFamily& p, double s_start, double s_end,
                                         double a0, double da0, double tol, int n_samples) {
    if (p.tag() == FamilyTag::delta_trap)
        throw NotAFunctionError("delta trap amplitude is piecewise-analytic, not an ODE profile");
    const bool coulomb =
        p.tag() == FamilyTag::moving_coulomb || p.tag() == FamilyTag::coulomb_like;
    if (coulomb && (std::min(s_start, s_end) <= 0.0))
        throw SingularityError("integration interval touches the Coulomb pole at s = 0");

    const double c = 2.0 * p.units().mass / (p.units().hbar * p.units().hbar);
    SampledSolution sol = integrate_linear_second_order(
        [&p, c](double s) { return c * reduced_profile(p, s); }, s_start, s_end, a0, da0, tol,
        n_samples);

    AmplitudeProfile prof;
    prof.source = AmplitudeSource::ode_oracle;
    prof.family = p;
    prof.seeds.a0 = a0;
    prof.seeds.da0 = da0;
    prof.s_grid = sol.s_grid;
    prof.values = std::move(sol.values);
    prof.derivs = std::move(sol.derivs);
    return prof;
}

AmplitudeProfile closed_form_profile(const PotentialFamily& p, double s_lo, double s_hi,
                                     int n_samples, const AmplitudeSeeds& seeds) {
    if (!(s_hi > s_lo)) throw InvalidArgumentError("profile window empty");
    if (n_samples == 0) n_samples = auto_samples(s_lo, s_hi);
    const Grid1D sg = make_grid(s_lo, s_hi, n_samples);
    AmplitudeProfile prof;
    prof.source = catalog_entry(p.tag()).availability == AmplitudeAvailability::analytic_piecewise
                      ? AmplitudeSource::analytic_piecewise
                      : AmplitudeSource::closed_form;
    prof.family = p;
    prof.seeds = seeds;
    prof.s_grid = sg;
    prof.values.resize(n_samples);
    prof.derivs.resize(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        double v, d;
        closed_form_pair(p, sg.x(i), seeds, v, d);
        prof.values[i] = v;
        prof.derivs[i] = d;
    }
    if (!prof.values.allFinite()) throw NonFiniteError("closed-form profile contains NaN/Inf");
    return prof;
}

AmplitudeProfile default_profile(const PotentialFamily& p, double s_lo, double s_hi,
                                 int n_samples, const AmplitudeSeeds& seeds, double ode_tol) {
    const auto availability = catalog_entry(p.tag()).availability;
    if (availability != AmplitudeAvailability::ode_only)
        return closed_form_profile(p, s_lo, s_hi, n_samples, seeds);

    // ODE route, anchored at s = 0 (or the window edge nearest zero).
    if (n_samples == 0) n_samples = auto_samples(s_lo, s_hi);
    const Grid1D sg = make_grid(s_lo, s_hi, n_samples);
    double anchor = 0.0;
    if (anchor < s_lo) anchor = s_lo;
    if (anchor > s_hi) anchor = s_hi;

    const double coeff = 2.0 * p.units().mass / (p.units().hbar * p.units().hbar);
    auto rhs = [&p, coeff](double s, const OdeState& y) {
        return OdeState(y[1], coeff * reduced_profile(p, s) * y[0]);
    };
    const double scale0 = std::max({std::abs(seeds.a0), std::abs(seeds.da0), 1e-30});
    OdeOptions opt;
    opt.rtol = ode_tol;
    opt.atol = ode_tol * 1e-3 * scale0;

    Eigen::VectorXd vals(n_samples), ders(n_samples);
    std::vector<double> right, left;
    std::vector<int> right_idx, left_idx;
    for (int i = 0; i < n_samples; ++i) {
        const double sp = sg.x(i);
        if (sp == anchor) {
            vals[i] = seeds.a0;
            ders[i] = seeds.da0;
        } else if (sp > anchor) {
            right.push_back(sp);
            right_idx.push_back(i);
        } else {
            left.push_back(sp);
            left_idx.push_back(i);
        }
    }
    std::reverse(left.begin(), left.end());
    std::reverse(left_idx.begin(), left_idx.end());

    OdeState y0(seeds.a0, seeds.da0);
    if (!right.empty()) {
        DormandPrince dp(rhs, opt);
        size_t j = 0;
        dp.integrate_through(anchor, y0, right, [&](double, const OdeState& y) {
            vals[right_idx[j]] = y[0];
            ders[right_idx[j]] = y[1];
            ++j;
        });
    }
    if (!left.empty()) {
        DormandPrince dp(rhs, opt);
        size_t j = 0;
        dp.integrate_through(anchor, y0, left, [&](double, const OdeState& y) {
            vals[left_idx[j]] = y[0];
            ders[left_idx[j]] = y[1];
            ++j;
        });
    }

    AmplitudeProfile prof;
    prof.source = AmplitudeSource::ode_oracle;
    prof.family = p;
    prof.seeds = seeds;
    prof.s_grid = sg;
    prof.values = std::move(vals);
    prof.derivs = std::move(ders);
    if (!prof.values.allFinite() || !prof.derivs.allFinite())
        throw NonFiniteError("ODE amplitude profile contains NaN/Inf");
    return prof;
}

ComplexField WaveState::psi() const {
    const double hbar = units.hbar;
    ComplexField out(grid, ComplexField::Vector(grid.n));
    for (int i = 0; i < grid.n; ++i) {
        out.values[i] = std::polar(amplitude.values[i], phase.values[i] / hbar);
    }
    out.require_finite("psi");
    return out;
}

RealField WaveState::density() const {
    return RealField(grid, amplitude.values.array().square().matrix());
}

WaveState assemble_state(const FreeAction& a, const PotentialFamily& p,
                         const AmplitudeProfile& amp, const Grid1D& grid, double t) {
    if (a.separable() != p.separable())
        throw VariantMismatchError("action variant does not match the family's variant");
    if (a.separable()) {
        if (a.as_separable().k != p.action.as_separable().k)
            throw VariantMismatchError("action k differs from the family's action");
    } else {
        const auto &x = a.as_non_separable(), &y = p.action.as_non_separable();
        if (x.x0 != y.x0 || x.t0 != y.t0)
            throw VariantMismatchError("action (x0, t0) differs from the family's action");
    }
    a.require_time(t);

    const ReducedCoordinate rc = reduced_coordinate(p);
    double scale = 1.0;
    if (!a.separable()) scale = 1.0 / std::sqrt(t - a.as_non_separable().t0);

    RealField amplitude(grid, RealField::Vector(grid.n));
    RealField phase(grid, RealField::Vector(grid.n));
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        amplitude.values[i] = scale * amp.eval(rc.map(x, t));
        phase.values[i] = eval_action(a, x, t);
    }
    amplitude.require_finite("amplitude");
    phase.require_finite("phase");

    WaveState st;
    st.grid = grid;
    st.time = t;
    st.amplitude = std::move(amplitude);
    st.phase = std::move(phase);
    st.units = a.units;
    st.family_tag = family_name(p.tag());
    return st;
}

NormalizeResult normalize_if_integrable(const WaveState& state) {
    const auto& v = state.amplitude.values;
    const double peak = v.cwiseAbs().maxCoeff();
    const double tail = std::max(std::abs(v[0]), std::abs(v[state.grid.n - 1]));
    NormalizeResult res{state, false};
    if (peak <= 0.0) return res;
    if (tail > 1e-8 * peak) return res;  // tails not captured: not normalizable here
    const double norm = l2_norm(state.amplitude);
    if (!(norm > 0.0) || !std::isfinite(norm)) return res;
    res.state.amplitude.values /= norm;
    res.state.normalized = true;
    res.normalized = true;
    return res;
}

}  // namespace freewave
