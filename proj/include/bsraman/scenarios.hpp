#pragma once

// Reproduction runs behind the figure data: the amplitude sweep of the
// Raman frequencies, population traces, Fourier spectra swept over the
// amplitude offset or the drive phase, and the acceptance suite.

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "bsraman/config.hpp"
#include "bsraman/csv.hpp"
#include "bsraman/validation.hpp"

namespace bsraman {

enum class ScenarioKind { FreqSweep, TimeTraces, SpectraVsAmp, SpectraVsPhase, Validate };

std::string_view to_string(ScenarioKind k);

struct SweepRange {
    double min = 0.0;
    double max = 0.0;
    double step = 1.0;
    // min, min + step, ... up to max (inclusive within rounding).
    std::vector<double> values() const;
};

struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::FreqSweep;
    ScenarioConfig config;
    std::filesystem::path out_dir;  // empty: nothing is written
};

// Default sweep for each kind, overridden field by field from the config.
SweepRange sweep_range(const ScenarioSpec& spec);

struct OutputFile {
    std::string name;
    Metadata meta;
    Table table;
};

struct ScenarioOutput {
    std::vector<OutputFile> files;
    const OutputFile& file(std::string_view name) const;
};

ScenarioOutput run_freq_sweep(const ScenarioSpec& spec);
ScenarioOutput run_time_traces(const ScenarioSpec& spec);
ScenarioOutput run_spectra(const ScenarioSpec& spec);  // SpectraVsAmp or SpectraVsPhase

struct ValidateOutcome {
    ValidationReport report;
    std::filesystem::path report_path;  // empty when out_dir is empty
};
ValidateOutcome run_validate(const ScenarioSpec& spec);

// Dispatch on spec.kind for the table-producing kinds, writing each file
// under out_dir when it is set.
ScenarioOutput run_scenario(const ScenarioSpec& spec);
void write_outputs(const ScenarioOutput& out, const std::filesystem::path& dir);

// Evaluates fn(0..n-1) on a pool of `threads` workers (0: hardware
// concurrency). Results land by index, so the output does not depend on
// scheduling. The first exception thrown by any task is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t n, int threads, const std::function<T(std::size_t)>& fn);

}  // namespace bsraman

#include "bsraman/parallel_map.ipp"
