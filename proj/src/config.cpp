#include "freewave/config.hpp"

#include <fstream>
#include <set>

#include "freewave/errors.hpp"

namespace freewave {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

double get_num(const json& j, const std::string& key, const std::string& where) {
    if (!j.at(key).is_number())
        throw ConfigError(where + "." + key + " must be a number");
    return j.at(key).get<double>();
}

}  // namespace

RunConfig parse_config(const nlohmann::json& j) {
    RunConfig cfg;
    check_keys(j, {"units", "family", "params", "action", "grid", "times", "tolerances",
                   "seeds", "output", "amplitude_family", "sweep", "control"},
               "config");

    if (j.contains("units")) {
        const auto& u = j.at("units");
        check_keys(u, {"hbar", "mass"}, "units");
        if (u.contains("hbar")) cfg.units.hbar = get_num(u, "hbar", "units");
        if (u.contains("mass")) cfg.units.mass = get_num(u, "mass", "units");
        cfg.units.validate();
    }
    if (j.contains("family")) {
        if (!j.at("family").is_string()) throw ConfigError("family must be a string tag");
        cfg.family_name = j.at("family").get<std::string>();
        catalog_entry(cfg.family_name);  // rejects unknown tags
    }
    if (j.contains("params")) {
        const auto& p = j.at("params");
        if (!p.is_object()) throw ConfigError("params must be an object");
        for (auto it = p.begin(); it != p.end(); ++it) {
            if (!it.value().is_number())
                throw ConfigError("params." + it.key() + " must be a number");
            cfg.family_params[it.key()] = it.value().get<double>();
        }
    }
    if (j.contains("action")) {
        const auto& a = j.at("action");
        check_keys(a, {"k", "x0", "t0"}, "action");
        if (a.contains("k")) cfg.action_k = get_num(a, "k", "action");
        if (a.contains("x0")) cfg.action_x0 = get_num(a, "x0", "action");
        if (a.contains("t0")) cfg.action_t0 = get_num(a, "t0", "action");
        if (cfg.action_k && (cfg.action_x0 || cfg.action_t0))
            throw ConfigError("action carries either k or (x0, t0), not both");
    }
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        check_keys(g, {"x_min", "x_max", "n"}, "grid");
        if (g.contains("x_min")) cfg.grid_x_min = get_num(g, "x_min", "grid");
        if (g.contains("x_max")) cfg.grid_x_max = get_num(g, "x_max", "grid");
        if (g.contains("n")) {
            if (!g.at("n").is_number_integer()) throw ConfigError("grid.n must be an integer");
            cfg.grid_n = g.at("n").get<int>();
        }
    }
    if (j.contains("times")) {
        const auto& t = j.at("times");
        check_keys(t, {"t", "t_start", "t_end", "steps"}, "times");
        if (t.contains("t")) cfg.time_t = get_num(t, "t", "times");
        if (t.contains("t_start")) cfg.t_start = get_num(t, "t_start", "times");
        if (t.contains("t_end")) cfg.t_end = get_num(t, "t_end", "times");
        if (t.contains("steps")) {
            if (!t.at("steps").is_number_integer())
                throw ConfigError("times.steps must be an integer");
            cfg.steps = t.at("steps").get<int>();
        }
    }
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        check_keys(t, {"ode_tol", "residual_constant_overrides"}, "tolerances");
        if (t.contains("ode_tol")) cfg.ode_tol = get_num(t, "ode_tol", "tolerances");
        if (t.contains("residual_constant_overrides")) {
            const auto& o = t.at("residual_constant_overrides");
            if (!o.is_object())
                throw ConfigError("residual_constant_overrides must be an object");
            for (auto it = o.begin(); it != o.end(); ++it) {
                catalog_entry(it.key());
                cfg.residual_constant_overrides[it.key()] = it.value().get<double>();
            }
        }
    }
    if (j.contains("seeds")) {
        const auto& s = j.at("seeds");
        check_keys(s, {"a0", "da0", "beta", "a1", "a2"}, "seeds");
        if (s.contains("a0")) cfg.seeds.a0 = get_num(s, "a0", "seeds");
        if (s.contains("da0")) cfg.seeds.da0 = get_num(s, "da0", "seeds");
        if (s.contains("a1")) cfg.seeds.a1 = get_num(s, "a1", "seeds");
        if (s.contains("a2")) cfg.seeds.a2 = get_num(s, "a2", "seeds");
        if (s.contains("beta")) cfg.seed_beta = get_num(s, "beta", "seeds");
    }
    if (j.contains("output")) {
        const auto& o = j.at("output");
        check_keys(o, {"format", "path"}, "output");
        if (o.contains("format")) {
            cfg.output_format = o.at("format").get<std::string>();
            if (cfg.output_format != "csv" && cfg.output_format != "json")
                throw ConfigError("unsupported format '" + cfg.output_format + "'");
        }
        if (o.contains("path")) cfg.output_path = o.at("path").get<std::string>();
    }
    if (j.contains("amplitude_family")) {
        cfg.amplitude_family = j.at("amplitude_family").get<std::string>();
        catalog_entry(cfg.amplitude_family);
    }
    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        if (!s.is_object()) throw ConfigError("sweep must map parameter names to value arrays");
        for (auto it = s.begin(); it != s.end(); ++it) {
            if (!it.value().is_array())
                throw ConfigError("sweep." + it.key() + " must be an array");
            std::vector<double> vals;
            for (const auto& v : it.value()) {
                if (!v.is_number()) throw ConfigError("sweep values must be numbers");
                vals.push_back(v.get<double>());
            }
            cfg.sweep[it.key()] = std::move(vals);
        }
    }
    if (j.contains("control")) {
        if (!j.at("control").is_boolean()) throw ConfigError("control must be a boolean");
        cfg.control = j.at("control").get<bool>();
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

PotentialFamily family_from_config(const RunConfig& cfg, const std::string& name_override) {
    const std::string name = name_override.empty() ? cfg.family_name : name_override;
    if (name.empty()) throw ConfigError("no family selected");
    const CatalogEntry& entry = catalog_entry(name);

    // parameter map -> values, defaults filled, unknown names rejected
    std::map<std::string, double> vals;
    for (const auto& ps : entry.params) vals[ps.name] = ps.default_value;
    for (const auto& [k, v] : cfg.family_params) {
        if (!vals.count(k))
            throw ConfigError("family '" + name + "' has no parameter '" + k + "'");
        vals[k] = v;
    }
    if (entry.tag == FamilyTag::delta_trap && cfg.seed_beta) vals["beta"] = *cfg.seed_beta;

    if (entry.separable && (cfg.action_x0 || cfg.action_t0))
        throw VariantMismatchError("family '" + name +
                                   "' rides the separable action; (x0, t0) do not apply");
    if (!entry.separable && cfg.action_k)
        throw VariantMismatchError("family '" + name +
                                   "' rides the non-separable action; k does not apply");

    FreeAction action =
        entry.separable
            ? make_separable_action(cfg.action_k.value_or(1.0), cfg.units)
            : make_non_separable_action(cfg.action_x0.value_or(0.0),
                                        cfg.action_t0.value_or(0.0), cfg.units);

    FamilyParams params;
    switch (entry.tag) {
        case FamilyTag::constant_force: params = ConstantForceParams{vals["F"]}; break;
        case FamilyTag::delta_trap:
            params = DeltaTrapParams{vals["gamma"], vals["beta"]};
            break;
        case FamilyTag::moving_coulomb: params = MovingCoulombParams{vals["alpha"]}; break;
        case FamilyTag::cosine_wave:
            params = CosineWaveParams{vals["gamma"], vals["kappa"]};
            break;
        case FamilyTag::harmonic_z: params = HarmonicZParams{vals["omega"]}; break;
        case FamilyTag::poschl_teller: params = PoschlTellerParams{vals["gamma"]}; break;
        case FamilyTag::modified_harmonic_z:
            params = ModifiedHarmonicZParams{vals["omega"]};
            break;
        case FamilyTag::modified_poschl_teller: params = ModifiedPoschlTellerParams{}; break;
        case FamilyTag::time_decreasing_force:
            params = TimeDecreasingForceParams{vals["F0"]};
            break;
        case FamilyTag::decaying_harmonic: params = DecayingHarmonicParams{vals["omega0"]}; break;
        case FamilyTag::coulomb_like: params = CoulombLikeParams{vals["Z0"]}; break;
        case FamilyTag::modified_decaying_harmonic:
            params = ModifiedDecayingHarmonicParams{vals["omega0"]};
            break;
    }
    return make_family(params, action);
}

nlohmann::ordered_json config_echo(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["units"] = {{"hbar", cfg.units.hbar}, {"mass", cfg.units.mass}};
    if (!cfg.family_name.empty()) j["family"] = cfg.family_name;
    if (!cfg.family_params.empty()) j["params"] = cfg.family_params;
    nlohmann::ordered_json action;
    if (cfg.action_k) action["k"] = *cfg.action_k;
    if (cfg.action_x0) action["x0"] = *cfg.action_x0;
    if (cfg.action_t0) action["t0"] = *cfg.action_t0;
    if (!action.empty()) j["action"] = action;
    nlohmann::ordered_json grid;
    if (cfg.grid_x_min) grid["x_min"] = *cfg.grid_x_min;
    if (cfg.grid_x_max) grid["x_max"] = *cfg.grid_x_max;
    if (cfg.grid_n) grid["n"] = *cfg.grid_n;
    if (!grid.empty()) j["grid"] = grid;
    nlohmann::ordered_json times;
    if (cfg.time_t) times["t"] = *cfg.time_t;
    if (cfg.t_start) times["t_start"] = *cfg.t_start;
    if (cfg.t_end) times["t_end"] = *cfg.t_end;
    if (cfg.steps) times["steps"] = *cfg.steps;
    if (!times.empty()) j["times"] = times;
    j["tolerances"] = {{"ode_tol", cfg.ode_tol}};
    if (!cfg.residual_constant_overrides.empty())
        j["tolerances"]["residual_constant_overrides"] = cfg.residual_constant_overrides;
    j["seeds"] = {{"a0", cfg.seeds.a0}, {"da0", cfg.seeds.da0}, {"a1", cfg.seeds.a1},
                  {"a2", cfg.seeds.a2}};
    if (cfg.seed_beta) j["seeds"]["beta"] = *cfg.seed_beta;
    j["output"] = {{"format", cfg.output_format}, {"path", cfg.output_path}};
    if (!cfg.amplitude_family.empty()) j["amplitude_family"] = cfg.amplitude_family;
    if (cfg.tol_scale != 1.0) j["tol_scale"] = cfg.tol_scale;
    return j;
}

nlohmann::ordered_json report_to_json(const ResidualReport& r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    if (r.skipped) {
        j["skipped"] = true;
        j["reason"] = r.skip_reason;
        j["passed"] = true;
        return j;
    }
    j["max_abs"] = r.max_abs;
    j["l2"] = r.l2;
    j["tolerance"] = r.tolerance;
    j["passed"] = r.passed;
    if (!r.skip_reason.empty()) j["note"] = r.skip_reason;
    if (r.grid.n > 0)
        j["grid"] = {{"x_min", r.grid.x_min}, {"x_max", r.grid.x_max}, {"n", r.grid.n}};
    auto zones = nlohmann::ordered_json::array();
    for (const auto& z : r.excluded_zones)
        zones.push_back({{"lo", z.lo}, {"hi", z.hi}, {"reason", z.reason}});
    j["excluded_zones"] = zones;
    return j;
}

nlohmann::ordered_json verification_to_json(const FamilyVerification& v) {
    nlohmann::ordered_json j;
    j["family"] = v.family;
    auto checks = nlohmann::ordered_json::array();
    for (const auto& c : v.checks) checks.push_back(report_to_json(c));
    j["checks"] = checks;
    j["all_passed"] = v.all_passed;
    return j;
}

}  // namespace freewave
