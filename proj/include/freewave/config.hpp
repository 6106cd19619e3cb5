// Run configuration: strict JSON parsing (unknown keys rejected), family and
// action construction against the catalog schema, and serialization of
// residual reports. Used by the CLI and exercised directly by the tests.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "freewave/amplitudes.hpp"
#include "freewave/potentials.hpp"
#include "freewave/verify.hpp"

namespace freewave {

inline constexpr const char* kSchemaVersion = "1";

struct RunConfig {
    Units units;
    std::string family_name;                      // empty = whole catalog
    std::map<std::string, double> family_params;  // validated against schema
    std::optional<double> action_k;
    std::optional<double> action_x0;
    std::optional<double> action_t0;
    std::optional<double> grid_x_min;
    std::optional<double> grid_x_max;
    std::optional<int> grid_n;
    std::optional<double> time_t;
    std::optional<double> t_start;
    std::optional<double> t_end;
    std::optional<int> steps;
    double ode_tol = 1e-11;
    std::map<std::string, double> residual_constant_overrides;
    AmplitudeSeeds seeds;
    std::optional<double> seed_beta;  // overrides DeltaTrap beta
    std::string output_format = "csv";
    std::string output_path = ".";
    std::string amplitude_family;  // negative-control hook: mismatched pair
    std::map<std::string, std::vector<double>> sweep;  // param name -> values
    bool control = false;          // evolve: also run the V = 0 control
    double tol_scale = 1.0;
};

/// Parse and validate; throws ConfigError on unknown keys, bad types, or
/// schema violations (including action-variant mismatch, checked before any
/// computation).
RunConfig parse_config(const nlohmann::json& j);

RunConfig load_config_file(const std::string& path);

/// Catalog-checked family construction from a parsed config.
/// `name_override` substitutes a different family tag (same parameters
/// discipline) for the amplitude side of a deliberate mismatch.
PotentialFamily family_from_config(const RunConfig& cfg, const std::string& name = "");

/// Echo of the effective configuration for metadata sidecars.
nlohmann::ordered_json config_echo(const RunConfig& cfg);

nlohmann::ordered_json report_to_json(const ResidualReport& r);
nlohmann::ordered_json verification_to_json(const FamilyVerification& v);

}  // namespace freewave
