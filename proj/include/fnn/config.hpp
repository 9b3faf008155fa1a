#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fnn/ns_models.hpp"
#include "fnn/scenario.hpp"
#include "fnn/spacetime.hpp"

namespace fnn {

// Configuration or usage problem; the CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& message) : std::runtime_error(message) {}
};

struct ScenarioConfig {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double v1 = 1.0;
    double v2 = 1.0;
    double vh = 1.0;
    std::array<ObservableSpec, 2> alice_settings{};
    std::array<ObservableSpec, 2> charlie_settings{};
};

struct StatisticsConfig {
    std::uint64_t total = 0;
    std::uint64_t seed = 0;
    int bootstrap_resamples = 0;
};

struct OptimizationConfig {
    int n_lambda = 0;
    int restarts = 0;
    int iters = 0;
};

struct SpacetimeConfig {
    double fiber_speed = 0.0;   // m/ns
    double light_speed = 0.0;   // m/ns
    double sigma_margin = 0.0;  // verdict requires ds^2 - margin * sigma > 0
    GeometryTable geometry;
    DelayTable delays;
    std::vector<EventDef> events;
    std::vector<std::pair<std::string, std::string>> pairs;
};

struct WorkbenchConfig {
    ScenarioConfig scenario;
    StatisticsConfig statistics;
    OptimizationConfig optimization;
    SpacetimeConfig spacetime;

    Scenario make_scenario() const;
};

// Reference experiment defaults; an empty or absent config file resolves to this.
WorkbenchConfig default_workbench_config();

// Read, merge over defaults (unknown keys rejected with their path), validate.
WorkbenchConfig load_workbench_config(const std::string& path);
WorkbenchConfig parse_workbench_config(const std::string& text);

// Canonical resolved form: stable key order, angles in radians.
nlohmann::json config_to_json(const WorkbenchConfig& config);
std::string dump_resolved_config(const WorkbenchConfig& config);

// FNV-1a over the resolved dump.
std::uint64_t config_hash(const WorkbenchConfig& config);

// Angles are accepted as raw radians (number) or as a string with a literal
// "pi" suffix, e.g. "0.25pi".
double parse_angle(const nlohmann::json& value, const std::string& field);

nlohmann::json cns_model_to_json(const CnsModel& m);
CnsModel cns_model_from_json(const nlohmann::json& j);
nlohmann::json nsc_model_to_json(const NscModel& m);
NscModel nsc_model_from_json(const nlohmann::json& j);

}  // namespace fnn
