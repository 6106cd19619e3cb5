#include "freewave/propagate.hpp"

#include <cmath>
#include <complex>
#include <cstdio>

#include "freewave/errors.hpp"
#include "freewave/stencils.hpp"

namespace freewave {

namespace {

using cplx = std::complex<double>;

// Thomas solve of (diag, off) tridiagonal system with constant off-diagonal;
// rhs is overwritten with the solution.
void solve_tridiagonal(const Eigen::VectorXcd& diag, cplx off, Eigen::VectorXcd& rhs) {
    const int n = static_cast<int>(diag.size());
    Eigen::VectorXcd c(n);
    c[0] = off / diag[0];
    rhs[0] /= diag[0];
    for (int i = 1; i < n; ++i) {
        const cplx denom = diag[i] - off * c[i - 1];
        if (denom == cplx(0.0, 0.0)) throw StepFailureError("singular tridiagonal solve");
        c[i] = off / denom;
        rhs[i] = (rhs[i] - off * rhs[i - 1]) / denom;
    }
    for (int i = n - 2; i >= 0; --i) rhs[i] -= c[i] * rhs[i + 1];
}

}  // namespace

ComplexField cn_step(const ComplexField& psi, const PotentialFamily& p, double t, double dt,
                     const Units& units, bool zero_potential) {
    if (!(dt > 0.0)) throw InvalidArgumentError("cn_step requires dt > 0");
    psi.require_finite("psi");
    const Grid1D& g = psi.grid;
    const int m = g.n - 2;  // interior points; walls held at zero
    if (m < 1) throw InvalidArgumentError("grid too small for interior evolution");

    const double h = g.dx();
    const double kin = units.hbar * units.hbar / (2.0 * units.mass * h * h);
    const double t_mid = t + 0.5 * dt;
    const cplx lambda(0.0, 0.5 * dt / units.hbar);  // i dt / (2 hbar)

    // H psi = kin (2 psi_i - psi_{i-1} - psi_{i+1}) + V_i psi_i
    // Left matrix:  I + lambda H  -> diagonal 1 + lambda (2 kin + V), off -lambda kin
    // Right vector: (I - lambda H) psi
    Eigen::VectorXcd diag(m), rhs(m);
    const cplx off_left = -lambda * kin;
    for (int i = 0; i < m; ++i) {
        const double x = g.x(i + 1);
        const double v = zero_potential ? 0.0 : eval_potential(p, x, t_mid);
        const cplx hdiag = 2.0 * kin + v;
        diag[i] = 1.0 + lambda * hdiag;
        const cplx left = (i > 0) ? psi.values[i] : psi.values[0];
        const cplx right = (i < m - 1) ? psi.values[i + 2] : psi.values[g.n - 1];
        rhs[i] = psi.values[i + 1] - lambda * (hdiag * psi.values[i + 1] -
                                               kin * (left + right));
    }
    solve_tridiagonal(diag, off_left, rhs);

    ComplexField out = ComplexField::zero(g);
    out.values.segment(1, m) = rhs;
    out.require_finite("psi after step");
    return out;
}

EvolutionRun evolve(const EvolutionSpec& spec) {
    if (spec.steps < 1) throw InvalidArgumentError("steps must be >= 1");
    if (!(spec.t_end > spec.t_start)) throw InvalidArgumentError("t_end must exceed t_start");
    const PotentialFamily& p = spec.family;
    if (!p.separable()) {
        const double t0 = p.action.as_non_separable().t0;
        if (!(spec.t_start > t0))
            throw TimeDomainError("evolution window must start after t0");
    }

    const Grid1D& g = spec.initial.grid;
    const double dt = (spec.t_end - spec.t_start) / spec.steps;
    ComplexField psi = spec.initial.psi();
    const double norm0 = l2_norm(psi);
    if (!(norm0 > 0.0)) throw InvalidArgumentError("initial state has zero norm");

    auto wall_check = [&](const ComplexField& f, double time, double threshold) {
        double peak = 0.0;
        for (int i = 0; i < g.n; ++i) peak = std::max(peak, std::abs(f.values[i]));
        const double wall = std::max(std::abs(f.values[1]), std::abs(f.values[g.n - 2]));
        if (wall > threshold * peak) {
            char msg[96];
            std::snprintf(msg, sizeof(msg), "wall amplitude %.3e of peak at t = %.6g",
                          wall / peak, time);
            throw WallContaminationError(msg);
        }
    };
    wall_check(psi, spec.t_start, spec.wall_threshold);

    EvolutionRun run;
    run.initial = spec.initial;
    run.t_start = spec.t_start;
    run.t_end = spec.t_end;
    run.steps = spec.steps;

    const int snaps = std::max(1, spec.snapshot_count);
    std::vector<int> snap_steps;
    for (int s = 1; s <= snaps; ++s) {
        const int st = static_cast<int>(
            std::lround(static_cast<double>(s) * spec.steps / snaps));
        if (snap_steps.empty() || st > snap_steps.back()) snap_steps.push_back(st);
    }

    const double norm0_sq = norm0 * norm0;
    size_t next_snap = 0;
    for (int step = 0; step < spec.steps; ++step) {
        const double t = spec.t_start + step * dt;
        psi = cn_step(psi, p, t, dt, spec.initial.units, spec.zero_potential);
        const double nrm = l2_norm(psi);
        run.max_probability_drift =
            std::max(run.max_probability_drift, std::abs(nrm * nrm - norm0_sq));
        wall_check(psi, t + dt, 100.0 * spec.wall_threshold);
        while (next_snap < snap_steps.size() && snap_steps[next_snap] == step + 1) {
            run.snapshots.push_back({spec.t_start + (step + 1) * dt, psi});
            ++next_snap;
        }
    }
    return run;
}

double density_transport_error(const EvolutionRun& run, const FreeAction& a,
                               const PotentialFamily& p, const AmplitudeProfile& amp) {
    double worst = 0.0;
    for (const auto& snap : run.snapshots) {
        const WaveState exact = assemble_state(a, p, amp, run.initial.grid, snap.time);
        const RealField rho_exact = exact.density();
        RealField diff(run.initial.grid, RealField::Vector(run.initial.grid.n));
        for (int i = 0; i < run.initial.grid.n; ++i)
            diff.values[i] = std::norm(snap.psi.values[i]) - rho_exact.values[i];
        const double denom = l2_norm(rho_exact);
        if (!(denom > 0.0)) throw InvalidArgumentError("analytic density vanished");
        worst = std::max(worst, l2_norm(diff) / denom);
    }
    return worst;
}

double phase_agreement_error(const EvolutionRun& run, const FreeAction& a) {
    const Grid1D& g = run.initial.grid;
    const double hbar = run.initial.units.hbar;
    double worst = 0.0;
    for (const auto& snap : run.snapshots) {
        double peak = 0.0;
        for (int i = 0; i < g.n; ++i) peak = std::max(peak, std::abs(snap.psi.values[i]));
        const double cut = 1e-3 * peak;

        // unwrap arg(psi) along x over the retained region
        std::vector<int> idx;
        std::vector<double> theta;
        double prev = 0.0;
        double offset = 0.0;
        bool first = true;
        for (int i = 0; i < g.n; ++i) {
            if (std::abs(snap.psi.values[i]) <= cut) {
                first = true;  // restart unwrapping after gaps
                continue;
            }
            constexpr double pi = 3.14159265358979323846;
            double th = std::arg(snap.psi.values[i]);
            if (!first) {
                double d = th - prev;
                while (d > pi) {
                    offset -= 2.0 * pi;
                    d -= 2.0 * pi;
                }
                while (d < -pi) {
                    offset += 2.0 * pi;
                    d += 2.0 * pi;
                }
            } else {
                offset = 0.0;
            }
            prev = th;
            first = false;
            idx.push_back(i);
            theta.push_back(th + offset);
        }
        if (idx.empty()) continue;

        // remove the global time-dependent constant by matching means
        double mean_dev = 0.0;
        std::vector<double> dev(idx.size());
        for (size_t j = 0; j < idx.size(); ++j) {
            dev[j] = hbar * theta[j] - eval_action(a, g.x(idx[j]), snap.time);
            mean_dev += dev[j];
        }
        mean_dev /= static_cast<double>(idx.size());
        for (double d : dev) worst = std::max(worst, std::abs(d - mean_dev));
    }
    return worst;
}

}  // namespace freewave
