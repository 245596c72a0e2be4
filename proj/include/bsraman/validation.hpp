#pragma once

// The acceptance suite: ten numbered criteria run against the reference
// parameter set (or a config-modified copy of it).

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsraman/config.hpp"
#include "bsraman/oracle.hpp"
#include "bsraman/special_functions.hpp"
#include "bsraman/spectrum.hpp"

namespace bsraman {

struct ValidationSettings {
    DriveParams base;            // amplitude ignored; set per check from A* + dA
    int n_max = kDefaultSeriesCutoff;
    double trace_window = 2.0;   // us
    double ode_dt = 1e-4;        // us
    int steps_per_fast_period = 40;
    double spectrum_window = 40.0;  // us
    double spectrum_dt = 1e-3;      // us
    double freq_max = kTwoPi * 25.0;
    double freq_step = kTwoPi * 0.005;
    double min_prominence = kDefaultProminence;

    static ValidationSettings defaults();
    static ValidationSettings from_config(const ScenarioConfig& cfg);

    // base with A = A* + delta_a * omega and psi in degrees.
    DriveParams drive(double delta_a, double psi_deg) const;
    IntegratorConfig integrator() const;
};

struct CriterionResult {
    std::string id;
    std::string title;
    bool passed = false;
    std::vector<std::string> details;
    double seconds = 0.0;
    double time_limit = 0.0;
};

struct Criterion {
    std::string id;
    std::string title;
    double time_limit = 0.0;  // seconds; exceeding it fails the criterion
    // Appends human-readable findings; returns whether the checks held.
    std::function<bool(const ValidationSettings&, std::vector<std::string>&)> check;
};

const std::vector<Criterion>& acceptance_criteria();

// Times the check and turns library exceptions into a failed result.
// IntegratorError is rethrown: it means the settings themselves are unusable.
CriterionResult run_criterion(const Criterion& c, const ValidationSettings& s);

struct ValidationReport {
    std::vector<CriterionResult> results;
    bool all_passed() const;
};

// Rejects settings the oracle cannot honour (IntegratorError) before running.
void preflight(const ValidationSettings& s);

ValidationReport run_validation(const ValidationSettings& s);

nlohmann::json to_json(const CriterionResult& r);
nlohmann::json to_json(const ValidationReport& r);

// "PASS A1  title  (0.01 s)" followed by indented detail lines.
std::string format_result(const CriterionResult& r, bool with_details = true);

}  // namespace bsraman
