// freewave: construct wavefunctions whose phase is a free classical action,
// verify the defining identities across the potential catalog, and evolve
// states with Crank-Nicolson as an independent dynamical check.
//
// Subcommands: catalog, build, verify, evolve, sweep.
// Exit codes:  0 = all checks passed, 1 = checks ran and failed,
//              2 = configuration or domain error before checks could run.
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "freewave/amplitudes.hpp"
#include "freewave/config.hpp"
#include "freewave/propagate.hpp"
#include "freewave/stencils.hpp"
#include "freewave/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace freewave;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&tt, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::string format;
    double tol_scale = 1.0;
    std::string family;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON config file");
    cmd->add_option("--out", flags.out_dir, "output directory");
    cmd->add_option("--format", flags.format, "output format: csv or json");
    cmd->add_option("--tol-scale", flags.tol_scale, "scale factor on all tolerances");
    cmd->add_option("--family", flags.family, "catalog family tag");
}

RunConfig effective_config(const CommonFlags& flags) {
    RunConfig cfg;
    if (!flags.config_path.empty()) cfg = load_config_file(flags.config_path);
    if (!flags.family.empty()) {
        cfg.family_name = flags.family;
        catalog_entry(cfg.family_name);
    }
    if (!flags.out_dir.empty()) cfg.output_path = flags.out_dir;
    if (!flags.format.empty()) {
        if (flags.format != "csv" && flags.format != "json")
            throw ConfigError("unsupported format '" + flags.format + "'");
        cfg.output_format = flags.format;
    }
    cfg.tol_scale = flags.tol_scale;
    return cfg;
}

// ---------------------------------------------------------------- catalog

int cmd_catalog(const CommonFlags& flags) {
    if (!flags.format.empty() && flags.format != "csv" && flags.format != "json")
        throw ConfigError("unsupported format '" + flags.format + "'");
    if (flags.format == "json") {
        auto arr = ordered_json::array();
        for (const auto& e : catalog()) {
            ordered_json params = ordered_json::array();
            for (const auto& p : e.params)
                params.push_back({{"name", p.name}, {"default", p.default_value}});
            arr.push_back({{"family", e.name},
                           {"params", params},
                           {"action", e.separable ? "separable" : "non_separable"},
                           {"availability", availability_name(e.availability)}});
        }
        ordered_json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["catalog"] = arr;
        std::cout << doc.dump(2) << "\n";
        return 0;
    }
    if (flags.format == "csv") {
        std::cout << "family,params,action,availability\n";
        for (const auto& e : catalog()) {
            std::string ps;
            for (const auto& p : e.params) ps += (ps.empty() ? "" : " ") + p.name;
            std::cout << e.name << "," << ps << ","
                      << (e.separable ? "separable" : "non_separable") << ","
                      << availability_name(e.availability) << "\n";
        }
        return 0;
    }
    std::printf("%-28s %-18s %-15s %s\n", "family", "params", "action", "availability");
    for (const auto& e : catalog()) {
        std::string ps;
        for (const auto& p : e.params) ps += (ps.empty() ? "" : ", ") + p.name;
        std::printf("%-28s %-18s %-15s %s\n", e.name.c_str(), ps.c_str(),
                    e.separable ? "separable" : "non_separable",
                    availability_name(e.availability).c_str());
    }
    return 0;
}

// ------------------------------------------------------------------ build

struct PreparedState {
    PotentialFamily family;
    AmplitudeProfile profile;
    WaveState state;
    Grid1D grid;
    double t;

    PreparedState(PotentialFamily f, AmplitudeProfile prof, WaveState st, Grid1D g, double time)
        : family(std::move(f)), profile(std::move(prof)), state(std::move(st)), grid(g),
          t(time) {}
};

PreparedState prepare_state(const RunConfig& cfg) {
    const PotentialFamily p = family_from_config(cfg);
    const double t0 = p.separable() ? 0.0 : p.action.as_non_separable().t0;
    const double t = cfg.time_t.value_or(p.separable() ? 0.0 : t0 + 1.0);

    Grid1D grid{};
    if (cfg.grid_x_min && cfg.grid_x_max && cfg.grid_n) {
        grid = make_grid(*cfg.grid_x_min, *cfg.grid_x_max, *cfg.grid_n);
    } else if (!cfg.grid_x_min && !cfg.grid_x_max && !cfg.grid_n) {
        const auto w = wide_window(p.tag());
        if (!w)
            throw ConfigError("family '" + family_name(p.tag()) +
                              "' has no default grid; pass grid bounds explicitly");
        double x_lo, x_hi;
        if (p.separable()) {
            const double off = p.action.as_separable().k * t / p.units().mass;
            x_lo = w->lo + off;
            x_hi = w->hi + off;
        } else {
            const auto& ns = p.action.as_non_separable();
            x_lo = ns.x0 + w->lo * (t - ns.t0);
            x_hi = ns.x0 + w->hi * (t - ns.t0);
        }
        grid = make_grid(x_lo, x_hi, 2001);
    } else {
        throw ConfigError("grid needs all of x_min, x_max, n (or none for the default)");
    }

    // reduced range the grid maps into, padded a little
    const ReducedCoordinate rc = reduced_coordinate(p);
    double s_lo = rc.map(grid.x_min, t), s_hi = rc.map(grid.x_max, t);
    if (s_lo > s_hi) std::swap(s_lo, s_hi);
    const bool coulomb =
        p.tag() == FamilyTag::moving_coulomb || p.tag() == FamilyTag::coulomb_like;
    double pad_lo = 0.05, pad_hi = 0.05;
    if (coulomb) {
        if (s_lo <= 0.0)
            throw SingularityError("grid crosses the Coulomb pole at the reduced origin");
        pad_lo = std::min(0.4 * s_lo, pad_lo);
    }
    AmplitudeProfile prof =
        default_profile(p, s_lo - pad_lo, s_hi + pad_hi, 0, cfg.seeds, cfg.ode_tol);
    WaveState st = assemble_state(p.action, p, prof, grid, t);
    return PreparedState(p, std::move(prof), std::move(st), grid, t);
}

int cmd_build(const CommonFlags& flags) {
    const RunConfig cfg = effective_config(flags);
    if (cfg.family_name.empty()) throw ConfigError("build requires a family");
    PreparedState ps = prepare_state(cfg);

    const bool delta = ps.family.tag() == FamilyTag::delta_trap;
    const ReducedCoordinate rc = reduced_coordinate(ps.family);
    const BohmResult vb = bohm_potential(ps.state);

    std::ostringstream csv;
    csv << "x,z_or_y,amplitude,phase,density,potential,bohm_potential\n";
    for (int i = 0; i < ps.grid.n; ++i) {
        const double x = ps.grid.x(i);
        const double a = ps.state.amplitude.values[i];
        const double v = delta ? 0.0 : eval_potential(ps.family, x, ps.t);
        csv << fmt17(x) << "," << fmt17(rc.map(x, ps.t)) << "," << fmt17(a) << ","
            << fmt17(ps.state.phase.values[i]) << "," << fmt17(a * a) << "," << fmt17(v) << ","
            << fmt17(vb.field.values[i]) << "\n";
    }

    fs::create_directories(cfg.output_path);
    const fs::path csv_path = fs::path(cfg.output_path) / (cfg.family_name + "_state.csv");
    write_text_file(csv_path, csv.str());

    ordered_json meta;
    meta["schema_version"] = kSchemaVersion;
    meta["kind"] = "state_metadata";
    meta["generated_at"] = iso8601_now();
    meta["config"] = config_echo(cfg);
    meta["time"] = ps.t;
    meta["amplitude_source"] = amplitude_source_name(ps.profile.source);
    meta["seeds_defaulted"] =
        cfg.seeds.a0 == 1.0 && cfg.seeds.da0 == 0.0 && cfg.seeds.a1 == 1.0 &&
        cfg.seeds.a2 == 0.0 && !cfg.seed_beta;
    if (delta)
        meta["note"] =
            "delta-trap potential is distributional; the potential column is zero and the "
            "bohm_potential column shows the finite-difference kink";
    auto zones = ordered_json::array();
    for (const auto& z : vb.zones)
        zones.push_back({{"lo", z.lo}, {"hi", z.hi}, {"reason", z.reason}});
    meta["excluded_zones"] = zones;
    write_text_file(fs::path(cfg.output_path) / (cfg.family_name + "_state.meta.json"),
                    meta.dump(2) + "\n");
    std::cout << csv_path.string() << "\n";
    return 0;
}

// ----------------------------------------------------------------- verify

FamilyCheckConfig check_config_from(const RunConfig& cfg, const std::string& family) {
    FamilyCheckConfig fc;
    fc.ode_tol = cfg.ode_tol;
    fc.seeds = cfg.seeds;
    fc.tol_scale = cfg.tol_scale;
    if (cfg.time_t) fc.t = *cfg.time_t;
    auto it = cfg.residual_constant_overrides.find(family);
    if (it != cfg.residual_constant_overrides.end()) fc.tol_scale *= it->second;
    return fc;
}

int cmd_verify(const CommonFlags& flags) {
    const RunConfig cfg = effective_config(flags);

    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "verify_report";
    if (cfg.tol_scale != 1.0) doc["tol_scale"] = cfg.tol_scale;
    auto fams = ordered_json::array();
    bool all_passed = true;

    if (!cfg.amplitude_family.empty()) {
        // negative-control hook: amplitude from one family against another's
        // potential; action variants must agree before anything runs
        if (cfg.family_name.empty())
            throw ConfigError("amplitude_family requires a family to check against");
        const PotentialFamily p_check = family_from_config(cfg);
        const PotentialFamily p_amp = family_from_config(cfg, cfg.amplitude_family);
        if (p_check.separable() != p_amp.separable())
            throw VariantMismatchError(
                "mismatch control requires both families on the same action variant");
        const auto w = cancel_window(p_amp.tag());
        if (!w) throw ConfigError("amplitude family has no grid window");
        const FamilyCheckConfig fc = check_config_from(cfg, cfg.family_name);
        const double t = fc.t;
        const AmplitudeProfile amp =
            default_profile(p_amp, w->lo - 0.2, w->hi + 0.2, 0, fc.seeds, fc.ode_tol);
        const double off = p_amp.separable()
                               ? p_amp.action.as_separable().k * t / p_amp.units().mass
                               : 0.0;
        const int n = static_cast<int>(std::lround((w->hi - w->lo) / fc.dx)) + 1;
        const Grid1D grid = make_grid(w->lo + off, w->hi + off, n);
        const WaveState st = assemble_state(p_amp.action, p_amp, amp, grid, t);
        FamilyVerification v;
        v.family = cfg.family_name;
        v.checks.push_back(
            cancellation_residual(st, p_check, fc.tol_scale, /*allow_mismatch=*/true));
        v.checks.back().skip_reason =
            "amplitude taken from '" + cfg.amplitude_family + "' (mismatch control)";
        v.all_passed = v.checks.back().passed;
        fams.push_back(verification_to_json(v));
        all_passed = v.all_passed;
    } else if (!cfg.family_name.empty()) {
        const PotentialFamily p = family_from_config(cfg);
        const FamilyVerification v = verify_family(p, check_config_from(cfg, cfg.family_name));
        fams.push_back(verification_to_json(v));
        all_passed = v.all_passed;
    } else {
        RunConfig base = cfg;
        for (const auto& e : catalog()) {
            base.family_name = e.name;
            base.family_params.clear();  // defaults across the catalog
            const PotentialFamily p = family_from_config(base);
            const FamilyVerification v = verify_family(p, check_config_from(cfg, e.name));
            fams.push_back(verification_to_json(v));
            all_passed = all_passed && v.all_passed;
        }
    }
    doc["families"] = fams;
    doc["all_passed"] = all_passed;

    const std::string text = doc.dump(2) + "\n";
    std::cout << text;
    if (!flags.out_dir.empty()) {
        fs::create_directories(flags.out_dir);
        write_text_file(fs::path(flags.out_dir) / "verify_report.json", text);
    }
    return all_passed ? 0 : 1;
}

// ----------------------------------------------------------------- evolve

struct EvolveDefaults {
    double x_min, x_max;
    int n;
    double t_start, t_end;
    int steps;
};

EvolveDefaults evolve_defaults(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::modified_poschl_teller: return {-20.0, 30.0, 2501, 0.0, 5.0, 2500};
        case FamilyTag::modified_harmonic_z: return {-12.0, 18.0, 1501, 0.0, 5.0, 2500};
        case FamilyTag::modified_decaying_harmonic: return {-20.0, 20.0, 2001, 1.0, 3.0, 1000};
        default: break;
    }
    throw ConfigError("no evolve defaults for this family");
}

bool square_integrable(FamilyTag tag) {
    return tag == FamilyTag::modified_poschl_teller || tag == FamilyTag::modified_harmonic_z ||
           tag == FamilyTag::modified_decaying_harmonic;
}

int cmd_evolve(const CommonFlags& flags, bool control_flag) {
    RunConfig cfg = effective_config(flags);
    if (cfg.family_name.empty()) throw ConfigError("evolve requires a family");
    const PotentialFamily p = family_from_config(cfg);
    if (!square_integrable(p.tag()))
        throw ConfigError(
            "family '" + cfg.family_name +
            "' is not square-integrable; Dirichlet walls would corrupt its non-decaying "
            "state, so only modified_harmonic_z, modified_poschl_teller and "
            "modified_decaying_harmonic evolve end to end");
    const bool run_control = control_flag || cfg.control;

    const EvolveDefaults dflt = evolve_defaults(p.tag());
    const Grid1D grid = make_grid(cfg.grid_x_min.value_or(dflt.x_min),
                                  cfg.grid_x_max.value_or(dflt.x_max),
                                  cfg.grid_n.value_or(dflt.n));
    const double t_start = cfg.t_start.value_or(dflt.t_start);
    const double t_end = cfg.t_end.value_or(dflt.t_end);
    const int steps = cfg.steps.value_or(dflt.steps);

    // profile must cover the reduced coordinates of the whole run
    const ReducedCoordinate rc = reduced_coordinate(p);
    double s_lo = 1e300, s_hi = -1e300;
    for (double tt : {t_start, t_end}) {
        s_lo = std::min({s_lo, rc.map(grid.x_min, tt), rc.map(grid.x_max, tt)});
        s_hi = std::max({s_hi, rc.map(grid.x_min, tt), rc.map(grid.x_max, tt)});
    }
    const AmplitudeProfile amp =
        default_profile(p, s_lo - 0.1, s_hi + 0.1, 0, cfg.seeds, cfg.ode_tol);

    EvolutionSpec spec;
    spec.initial = assemble_state(p.action, p, amp, grid, t_start);
    spec.family = p;
    spec.t_start = t_start;
    spec.t_end = t_end;
    spec.steps = steps;
    spec.snapshot_count = 5;
    const EvolutionRun run = evolve(spec);

    fs::create_directories(cfg.output_path);
    for (size_t s = 0; s < run.snapshots.size(); ++s) {
        std::ostringstream csv;
        csv << "x,re_psi,im_psi,density\n";
        const auto& snap = run.snapshots[s];
        for (int i = 0; i < grid.n; ++i) {
            const auto& v = snap.psi.values[i];
            csv << fmt17(grid.x(i)) << "," << fmt17(v.real()) << "," << fmt17(v.imag()) << ","
                << fmt17(std::norm(v)) << "\n";
        }
        char name[64];
        std::snprintf(name, sizeof(name), "%s_snapshot_%02zu.csv", cfg.family_name.c_str(), s);
        write_text_file(fs::path(cfg.output_path) / name, csv.str());
    }

    ordered_json summary;
    summary["schema_version"] = kSchemaVersion;
    summary["kind"] = "evolution_summary";
    summary["family"] = cfg.family_name;
    summary["grid"] = {{"x_min", grid.x_min}, {"x_max", grid.x_max}, {"n", grid.n}};
    summary["times"] = {{"t_start", t_start}, {"t_end", t_end}, {"steps", steps}};
    summary["probability_drift"] = run.max_probability_drift;
    summary["density_transport_error"] = density_transport_error(run, p.action, p, amp);
    summary["phase_agreement"] = phase_agreement_error(run, p.action);

    if (run_control) {
        // free-dispersion control on a widened domain so the spreading wave
        // never trips the wall guard
        const double width = grid.x_max - grid.x_min;
        const int extra = grid.n - 1;  // same dx on each side
        const Grid1D wide = make_grid(grid.x_min - width, grid.x_max + width,
                                      grid.n + 2 * extra);
        double w_lo = 1e300, w_hi = -1e300;
        for (double tt : {t_start, t_end}) {
            w_lo = std::min({w_lo, rc.map(wide.x_min, tt), rc.map(wide.x_max, tt)});
            w_hi = std::max({w_hi, rc.map(wide.x_min, tt), rc.map(wide.x_max, tt)});
        }
        const AmplitudeProfile wamp =
            default_profile(p, w_lo - 0.1, w_hi + 0.1, 0, cfg.seeds, cfg.ode_tol);
        EvolutionSpec ctrl = spec;
        ctrl.initial = assemble_state(p.action, p, wamp, wide, t_start);
        ctrl.zero_potential = true;
        const EvolutionRun crun = evolve(ctrl);
        summary["control_density_transport_error"] =
            density_transport_error(crun, p.action, p, wamp);
    }

    const std::string text = summary.dump(2) + "\n";
    std::cout << text;
    write_text_file(fs::path(cfg.output_path) / (cfg.family_name + "_evolution.json"), text);
    return 0;
}

// ------------------------------------------------------------------ sweep

int cmd_sweep(const CommonFlags& flags) {
    const RunConfig cfg = effective_config(flags);
    if (cfg.family_name.empty()) throw ConfigError("sweep requires a family");

    std::vector<std::string> keys;
    size_t combos = 1;
    for (const auto& [k, vals] : cfg.sweep) {
        keys.push_back(k);
        combos *= vals.size();
    }
    if (cfg.sweep.empty()) combos = 0;
    if (combos > 10000)
        throw CombinatorialLimitError("sweep would run " + std::to_string(combos) +
                                      " combinations (limit 10000)");

    std::vector<RunConfig> points;
    if (combos > 0) {
        std::vector<size_t> idx(keys.size(), 0);
        while (true) {
            RunConfig point = cfg;
            point.sweep.clear();
            for (size_t j = 0; j < keys.size(); ++j)
                point.family_params[keys[j]] = cfg.sweep.at(keys[j])[idx[j]];
            points.push_back(std::move(point));
            size_t j = 0;
            for (; j < keys.size(); ++j) {
                if (++idx[j] < cfg.sweep.at(keys[j]).size()) break;
                idx[j] = 0;
            }
            if (j == keys.size()) break;
        }
    }

    // validate every point before any computation
    for (const auto& point : points) (void)family_from_config(point);

    std::vector<std::future<FamilyVerification>> futures;
    futures.reserve(points.size());
    for (const auto& point : points) {
        futures.push_back(std::async(std::launch::async, [point, &cfg]() {
            const PotentialFamily p = family_from_config(point);
            return verify_family(p, check_config_from(cfg, point.family_name));
        }));
    }

    auto arr = ordered_json::array();
    bool all_passed = true;
    for (size_t i = 0; i < futures.size(); ++i) {
        FamilyVerification v = futures[i].get();
        ordered_json entry = verification_to_json(v);
        ordered_json params;
        for (const auto& [k, val] : points[i].family_params) params[k] = val;
        entry["params"] = params;
        arr.push_back(entry);
        all_passed = all_passed && v.all_passed;
    }

    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "sweep_report";
    doc["family"] = cfg.family_name;
    doc["reports"] = arr;
    doc["all_passed"] = all_passed;
    const std::string text = doc.dump(2) + "\n";
    std::cout << text;
    if (!flags.out_dir.empty()) {
        fs::create_directories(flags.out_dir);
        write_text_file(fs::path(flags.out_dir) / "sweep_report.json", text);
    }
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nondiffracting wavepacket construction and verification"};
    app.require_subcommand(1);

    CommonFlags catalog_flags, build_flags, verify_flags, evolve_flags, sweep_flags;
    bool evolve_control = false;

    CLI::App* c_catalog = app.add_subcommand("catalog", "list the potential catalog");
    add_common(c_catalog, catalog_flags);
    CLI::App* c_build = app.add_subcommand("build", "construct a state and export CSV");
    add_common(c_build, build_flags);
    CLI::App* c_verify = app.add_subcommand("verify", "run the residual checks");
    add_common(c_verify, verify_flags);
    CLI::App* c_evolve = app.add_subcommand("evolve", "Crank-Nicolson time evolution");
    add_common(c_evolve, evolve_flags);
    c_evolve->add_flag("--control", evolve_control,
                       "also run the free-dispersion control (V forced to 0)");
    CLI::App* c_sweep = app.add_subcommand("sweep", "verify over a parameter grid");
    add_common(c_sweep, sweep_flags);

    try {
        app.parse(argc, argv);
        if (c_catalog->parsed()) return cmd_catalog(catalog_flags);
        if (c_build->parsed()) return cmd_build(build_flags);
        if (c_verify->parsed()) return cmd_verify(verify_flags);
        if (c_evolve->parsed()) return cmd_evolve(evolve_flags, evolve_control);
        if (c_sweep->parsed()) return cmd_sweep(sweep_flags);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error (" << e.category() << "): " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
