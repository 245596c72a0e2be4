#pragma once

// Flat key/value scenario configuration. Files are JSON objects whose values
// are numbers; unknown keys are rejected so a misspelt physics parameter
// cannot silently fall back to its default.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bsraman/params.hpp"

namespace bsraman {

struct ScenarioConfig {
    double delta_x_mhz = 10.0;
    double delta_z_mhz = 3.0;
    double omega_mhz = 5.22;
    std::optional<double> psi_deg;             // unset: scenario default panel set
    double gamma_inv_us = kDefaultGamma;       // decay rate gamma, 1/us
    std::optional<double> amp_over_omega;      // absolute A/omega; excludes delta_a_over_omega
    std::optional<double> delta_a_over_omega;  // A = A* + dA
    int n_max = 40;
    std::optional<double> dt_ns;
    std::optional<double> window_us;
    int steps_per_fast_period = 40;
    std::optional<double> sweep_min;
    std::optional<double> sweep_max;
    std::optional<double> sweep_step;
    double freq_min_mhz = 0.0;
    double freq_max_mhz = 25.0;
    double freq_step_mhz = 0.005;
    double min_prominence = 0.02;
    int threads = 0;  // 0: hardware concurrency
};

// Every key accepted by set_value / load_config.
const std::vector<std::string_view>& config_keys();

// Sets one key; ConfigError on unknown keys or non-integral values for integer keys.
void set_value(ScenarioConfig& cfg, std::string_view key, double value);

ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig parse_config(std::string_view json_text);

// Range and consistency checks; ConfigError on failure.
void check(const ScenarioConfig& cfg);

// Drive with psi = psi_deg (or `psi_deg_override`), A = amp_over_omega * omega
// or A* + dA * omega with dA = delta_a_over_omega (or `delta_a_override`).
DriveParams drive_params(const ScenarioConfig& cfg, std::optional<double> delta_a_override = {},
                         std::optional<double> psi_deg_override = {});

// key=value pairs of every setting, in schema order, for file headers.
std::vector<std::pair<std::string, std::string>> describe(const ScenarioConfig& cfg);

}  // namespace bsraman
