// Amplitude production for the catalog: closed forms where the literature
// gives one, and integration of the reduced equation
//     A'' = (2m/hbar^2) V_red(s) A
// as a universal, independent second route. Profiles evaluate exactly at
// their sample nodes; between nodes, ODE-sourced profiles use cubic Hermite
// interpolation on the stored (value, derivative) pairs while closed-form
// profiles just call the formula.
#pragma once

#include <functional>
#include <string>

#include <Eigen/Core>

#include "freewave/field.hpp"
#include "freewave/potentials.hpp"

namespace freewave {

enum class AmplitudeSource { closed_form, ode_oracle, analytic_piecewise };

std::string amplitude_source_name(AmplitudeSource s);

/// Free constants the catalog leaves open: ODE initial data (a0, da0) and
/// the Legendre pair weights for the Poschl-Teller closed form.
struct AmplitudeSeeds {
    double a0 = 1.0;
    double da0 = 0.0;
    double a1 = 1.0;
    double a2 = 0.0;
};

/// The reduced-coordinate degree n = (sqrt(1 + 8 m gamma / hbar^2) - 1)/2 of
/// the Poschl-Teller Legendre solution.
double poschl_teller_degree(double gamma, const Units& units);

/// The paper-form amplitude profile value at reduced coordinate s.
/// Poschl-Teller is exposed only when its degree is a nonnegative integer
/// and a2 == 0 (P_n is then a polynomial in tanh s); CosineWave always
/// raises NoClosedFormError (Mathieu amplitudes are ODE-only here).
double closed_form_amplitude(const PotentialFamily& p, double s,
                             const AmplitudeSeeds& seeds = {});

/// d/ds of closed_form_amplitude; used for ODE seeding and the jump check.
double closed_form_amplitude_deriv(const PotentialFamily& p, double s,
                                   const AmplitudeSeeds& seeds = {});

struct AmplitudeProfile {
    AmplitudeSource source = AmplitudeSource::closed_form;
    PotentialFamily family;
    AmplitudeSeeds seeds;
    Grid1D s_grid;              // uniform reduced-coordinate samples
    Eigen::VectorXd values;     // A at samples
    Eigen::VectorXd derivs;     // dA/ds at samples

    double s_min() const { return s_grid.x_min; }
    double s_max() const { return s_grid.x_max; }

    /// Amplitude at reduced coordinate s in [s_min, s_max].
    double eval(double s) const;
    double eval_deriv(double s) const;

    RealField as_field() const { return RealField(s_grid, values); }
};

/// Integrate the reduced amplitude equation from data (a0, da0) at s_start
/// to s_end (either direction), sampling onto a uniform grid of n_samples
/// points (0 = choose automatically). tol is the local error tolerance,
/// clamped to [1e-12, 1e-4] by precondition.
AmplitudeProfile integrate_amplitude_ode(const PotentialFamily& p, double s_start, double s_end,
                                         double a0, double da0, double tol, int n_samples = 0);

struct SampledSolution {
    Grid1D s_grid;
    Eigen::VectorXd values;
    Eigen::VectorXd derivs;
};

/// Engine behind integrate_amplitude_ode: solves A'' = coeff(s) A from data
/// at s_start and samples onto a uniform grid. Exposed so tests can drive it
/// with arbitrary coefficients (e.g. the zero-potential identity A'' = 0).
SampledSolution integrate_linear_second_order(const std::function<double(double)>& coeff,
                                              double s_start, double s_end, double a0, double da0,
                                              double tol, int n_samples = 0);

/// Closed-form (or piecewise) profile sampled on [s_lo, s_hi].
AmplitudeProfile closed_form_profile(const PotentialFamily& p, double s_lo, double s_hi,
                                     int n_samples, const AmplitudeSeeds& seeds = {});

/// The profile a family gets by default: closed form when available,
/// otherwise the ODE route seeded with (a0, da0) at s = 0 (or at the window
/// edge nearest zero when 0 is outside the window).
AmplitudeProfile default_profile(const PotentialFamily& p, double s_lo, double s_hi,
                                 int n_samples, const AmplitudeSeeds& seeds = {},
                                 double ode_tol = 1e-11);

/// Sampled wave state at one time: real amplitude and phase, psi assembled
/// on demand. family_tag records provenance for mismatch detection.
struct WaveState {
    Grid1D grid;
    double time = 0.0;
    RealField amplitude;
    RealField phase;
    Units units;
    std::string family_tag;
    bool normalized = false;

    ComplexField psi() const;
    RealField density() const;  // A^2 pointwise
};

/// Map every grid point through the family's reduced coordinate, evaluate
/// the profile there (with the 1/sqrt(t-t0) scaling for non-separable
/// families), and pair it with the action phase.
WaveState assemble_state(const FreeAction& a, const PotentialFamily& p,
                         const AmplitudeProfile& amp, const Grid1D& grid, double t);

struct NormalizeResult {
    WaveState state;
    bool normalized = false;  // false means the grid did not capture the tails
};

/// Rescale to unit L2 norm when both tails have decayed below 1e-8 of the
/// peak; otherwise return the state unchanged and flag it not normalizable.
NormalizeResult normalize_if_integrable(const WaveState& state);

}  // namespace freewave
