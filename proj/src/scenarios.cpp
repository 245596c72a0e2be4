#include "bsraman/scenarios.hpp"

#include <cmath>
#include <fstream>
#include <optional>

#include <fmt/format.h>

#include "bsraman/demodulation.hpp"
#include "bsraman/error.hpp"
#include "bsraman/oracle.hpp"
#include "bsraman/special_functions.hpp"
#include "bsraman/spectrum.hpp"

namespace bsraman {

namespace {

std::string num(double v) { return fmt::format("{:.12g}", v); }

std::string offset_tag(double da) { return fmt::format("dA{:+.2f}", da); }
std::string phase_tag(double psi) { return fmt::format("psi{:g}", psi); }

Metadata header(const ScenarioSpec& spec, std::string_view provenance) {
    Metadata m;
    m.emplace_back("version", BSRAMAN_VERSION);
    m.emplace_back("kind", std::string(to_string(spec.kind)));
    m.emplace_back("provenance", std::string(provenance));
    for (auto& kv : describe(spec.config)) {
        if (kv.first != "threads") m.push_back(std::move(kv));  // output does not depend on it
    }
    const DriveParams base = drive_params(spec.config, 0.0);
    const DerivedFrame f = derive_frame(base);
    m.emplace_back("omega0_mhz", num(angular_to_mhz(f.omega0)));
    m.emplace_back("a_star_over_omega", num(a_star_amplitude(f, base.mod_freq, 1) / base.mod_freq));
    m.emplace_back("resonance_detuning", num(resonance_detuning(f, base)));
    return m;
}

Metadata with(Metadata m, std::initializer_list<std::pair<std::string, std::string>> extra) {
    for (const auto& kv : extra) m.push_back(kv);
    return m;
}

double dt_or(const ScenarioConfig& c, double fallback_us) { return c.dt_ns ? *c.dt_ns * 1e-3 : fallback_us; }
double window_or(const ScenarioConfig& c, double fallback_us) { return c.window_us.value_or(fallback_us); }

// Amplitude offsets to run: the config's single value if it fixes one, else the defaults.
std::vector<std::optional<double>> offsets_for(const ScenarioConfig& c, std::vector<double> defaults) {
    if (c.amp_over_omega) return {std::nullopt};
    if (c.delta_a_over_omega) return {*c.delta_a_over_omega};
    return {defaults.begin(), defaults.end()};
}

std::vector<double> phases_for(const ScenarioConfig& c, std::vector<double> defaults) {
    if (c.psi_deg) return {*c.psi_deg};
    return defaults;
}

double offset_of(const DriveParams& p) {
    return (p.amp - a_star_amplitude(derive_frame(p), p.mod_freq, 1)) / p.mod_freq;
}

TimeTrace closed_form_trace(const DriveParams& p, const TimeGrid& g, int n_max) {
    const DerivedFrame f = derive_frame(p);
    const RamanQuantities q = raman_quantities(p, f, n_max);
    if (q.omega_eff == 0.0) return population_degenerate(p, f, q.bs_shift, g);
    return population_closed_form(p, f, q, envelope_coefficients(p, f, q), g);
}

void note_resonance(ScenarioOutput& out, const DriveParams& p) {
    const double d = resonance_detuning(derive_frame(p), p);
    if (is_off_resonant(d)) {
        out.files.front().meta.emplace_back(
            "warning", fmt::format("omega0 - 2 omega = {:.4f} omega: the resonant closed forms do not apply", d));
    }
}

}  // namespace

std::string_view to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::FreqSweep: return "freq_sweep";
        case ScenarioKind::TimeTraces: return "time_traces";
        case ScenarioKind::SpectraVsAmp: return "spectra_vs_amp";
        case ScenarioKind::SpectraVsPhase: return "spectra_vs_phase";
        case ScenarioKind::Validate: return "validate";
    }
    return "unknown";
}

std::vector<double> SweepRange::values() const {
    if (!(step > 0.0) || !(max >= min)) {
        throw ConfigError(fmt::format("empty sweep [{}, {}] step {}", min, max, step));
    }
    const auto n = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = min + static_cast<double>(i) * step;
    return v;
}

SweepRange sweep_range(const ScenarioSpec& spec) {
    SweepRange r;
    switch (spec.kind) {
        case ScenarioKind::FreqSweep: r = {0.0, 5.0, 0.01}; break;
        case ScenarioKind::SpectraVsAmp: r = {-0.3, 0.3, 0.02}; break;
        case ScenarioKind::SpectraVsPhase: r = {0.0, 180.0, 5.0}; break;
        default: r = {0.0, 0.0, 1.0}; break;
    }
    const auto& c = spec.config;
    if (c.sweep_min) r.min = *c.sweep_min;
    if (c.sweep_max) r.max = *c.sweep_max;
    if (c.sweep_step) r.step = *c.sweep_step;
    return r;
}

const OutputFile& ScenarioOutput::file(std::string_view name) const {
    for (const auto& f : files) {
        if (f.name == name) return f;
    }
    throw Error(fmt::format("no output file named '{}'", name));
}

ScenarioOutput run_freq_sweep(const ScenarioSpec& spec) {
    const auto& c = spec.config;
    const DriveParams base = drive_params(c, 0.0);
    const DerivedFrame f0 = derive_frame(base);
    const auto xs = sweep_range(spec).values();
    auto rows = parallel_map<std::vector<double>>(xs.size(), c.threads, [&](std::size_t i) {
        const DriveParams p = base.with_amp(xs[i] * base.mod_freq);
        const DerivedFrame f = derive_frame(p);
        const RamanQuantities q = raman_quantities(p, f, c.n_max);
        return std::vector<double>{xs[i],
                                   f.mod_index,
                                   f.coupling_ratio,
                                   angular_to_mhz(q.omega_rwa),
                                   angular_to_mhz(q.bs_shift),
                                   angular_to_mhz(q.omega_eff),
                                   angular_to_mhz(q.tail_bound)};
    });
    const double a_star = a_star_amplitude(f0, base.mod_freq, 1);
    OutputFile file{"fig1_freq_sweep.csv",
                    with(header(spec, to_string(Provenance::ClosedForm)),
                         {{"coupling_ratio_at_a_star", num(a_star * f0.cos_theta / base.mod_freq)},
                          {"second_zero_over_omega", num(a_star_amplitude(f0, base.mod_freq, 2) / base.mod_freq)}}),
                    {{"amp_over_omega", "mod_index", "coupling_ratio", "omega_rwa_mhz", "bs_shift_mhz",
                      "omega_eff_mhz", "tail_bound_mhz"},
                     std::move(rows)}};
    ScenarioOutput out;
    out.files.push_back(std::move(file));
    note_resonance(out, base);
    return out;
}

ScenarioOutput run_time_traces(const ScenarioSpec& spec) {
    const auto& c = spec.config;
    const auto offsets = offsets_for(c, {0.25, 0.1, 0.0, -0.1, -0.25});
    const auto phases = phases_for(c, {0.0, 90.0});
    const TimeGrid grid = TimeGrid::covering(window_or(c, 2.0), dt_or(c, 1e-4));

    struct Job {
        DriveParams p;
        double offset;
        double psi;
    };
    std::vector<Job> jobs;
    for (const auto& da : offsets) {
        for (double psi : phases) {
            const DriveParams p = drive_params(c, da, psi);
            jobs.push_back({p, offset_of(p), psi});
        }
    }
    IntegratorConfig ic;
    ic.dt_max = grid.dt;
    ic.steps_per_fast_period = c.steps_per_fast_period;
    for (const auto& j : jobs) validate(ic, j.p);

    struct Result {
        Table trace;
        std::vector<double> summary;
    };
    auto results = parallel_map<Result>(jobs.size(), c.threads, [&](std::size_t i) {
        const Job& j = jobs[i];
        const RamanQuantities q = raman_quantities(j.p, derive_frame(j.p), c.n_max);
        const TimeTrace analytic = closed_form_trace(j.p, grid, c.n_max);
        const TimeTrace oracle = evolve_full(j.p, grid, ic);
        Result r;
        r.trace.columns = {"t_us", "p_closed_form", "p_oracle"};
        r.trace.rows.reserve(grid.count);
        for (std::size_t k = 0; k < grid.count; ++k) {
            r.trace.rows.push_back({grid.at(k), analytic.samples[k], oracle.samples[k]});
        }
        double depth = 0.0, slow_cf = 0.0, slow_or = 0.0;
        if (q.omega_eff > 0.0) {
            depth = fit_envelope(analytic, q.omega_eff).modulation_depth;
            const double lo = 0.25 * q.omega_eff;
            const double hi = 2.0 * q.omega_eff;
            slow_cf = fit_slow_frequency(analytic, lo, hi).slow_freq;
            slow_or = fit_slow_frequency(oracle, lo, hi).slow_freq;
        }
        r.summary = {j.offset,
                     j.psi,
                     j.p.amp_over_omega(),
                     angular_to_mhz(q.omega_rwa),
                     angular_to_mhz(q.bs_shift),
                     angular_to_mhz(q.omega_eff),
                     angular_to_mhz(slow_cf),
                     angular_to_mhz(slow_or),
                     depth,
                     analytic.samples.front(),
                     oracle.samples.front()};
        return r;
    });

    ScenarioOutput out;
    const Metadata meta = header(spec, fmt::format("{}+{}", to_string(Provenance::ClosedForm),
                                                   to_string(Provenance::OdeOracle)));
    Table summary{{"delta_a_over_omega", "psi_deg", "amp_over_omega", "omega_rwa_mhz", "bs_shift_mhz",
                   "omega_eff_mhz", "slow_freq_closed_form_mhz", "slow_freq_oracle_mhz",
                   "modulation_depth_closed_form", "p0_closed_form", "p0_oracle"},
                  {}};
    out.files.push_back({"fig2_summary.csv", meta, {}});
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& j = jobs[i];
        out.files.push_back({fmt::format("fig2_{}_{}.csv", offset_tag(j.offset), phase_tag(j.psi)),
                             with(meta, {{"delta_a_over_omega", num(j.offset)},
                                         {"psi_deg", num(j.psi)},
                                         {"amp_over_omega", num(j.p.amp_over_omega())},
                                         {"integrator", std::string(to_string(ic.method))},
                                         {"integrator_dt_ns", num(ic.dt_max * 1e3)}}),
                             std::move(results[i].trace)});
        summary.rows.push_back(std::move(results[i].summary));
    }
    out.files.front().table = std::move(summary);
    note_resonance(out, jobs.front().p);
    return out;
}

ScenarioOutput run_spectra(const ScenarioSpec& spec) {
    const auto& c = spec.config;
    const bool vs_amp = spec.kind == ScenarioKind::SpectraVsAmp;
    if (!vs_amp && spec.kind != ScenarioKind::SpectraVsPhase) throw Error("run_spectra needs a spectra kind");
    if (vs_amp && c.amp_over_omega) {
        throw ConfigError("amp_over_omega fixes the amplitude and cannot be combined with an amplitude sweep");
    }
    const std::string prefix = vs_amp ? "fig3" : "fig4";
    const std::string axis = vs_amp ? "delta_a_over_omega" : "psi_deg";
    const TimeGrid grid = TimeGrid::covering(window_or(c, 40.0), dt_or(c, 1e-3));
    const auto freqs = uniform_frequency_grid(mhz_to_angular(c.freq_min_mhz), mhz_to_angular(c.freq_max_mhz),
                                              mhz_to_angular(c.freq_step_mhz));
    const auto sweep = sweep_range(spec).values();
    const std::vector<double> cuts = vs_amp ? std::vector<double>{0.25, 0.0, -0.25} : std::vector<double>{0.0, 90.0};

    // Panels: the fixed coordinate of each 2-D map.
    struct Panel {
        std::string tag;
        std::optional<double> offset;  // fig4
        double psi = 0.0;              // fig3
    };
    std::vector<Panel> panels;
    if (vs_amp) {
        for (double psi : phases_for(c, {0.0, 90.0})) panels.push_back({phase_tag(psi), std::nullopt, psi});
    } else {
        for (const auto& da : offsets_for(c, {0.0, -0.25})) {
            const double shown = da ? *da : offset_of(drive_params(c));
            panels.push_back({offset_tag(shown), da, 0.0});
        }
    }

    struct Job {
        std::size_t panel;
        double value;
        bool cut;
    };
    std::vector<Job> jobs;
    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        for (double v : sweep) jobs.push_back({pi, v, false});
        for (double v : cuts) jobs.push_back({pi, v, true});
    }
    auto drive_for = [&](const Job& j) {
        const Panel& pn = panels[j.panel];
        return vs_amp ? drive_params(c, j.value, pn.psi) : drive_params(c, pn.offset, j.value);
    };
    for (const auto& j : jobs) (void)drive_for(j);  // surface parameter errors before the pool starts

    struct Result {
        std::vector<double> magnitude;
        std::vector<SpectrumLine> lines;
    };
    auto results = parallel_map<Result>(jobs.size(), c.threads, [&](std::size_t i) {
        const DriveParams p = drive_for(jobs[i]);
        const FourierResponse fr = fourier_response(closed_form_trace(p, grid, c.n_max), p.gamma, freqs);
        return Result{fr.magnitude(), find_lines(fr, c.min_prominence)};
    });

    ScenarioOutput out;
    const Metadata meta = with(header(spec, to_string(Provenance::ClosedForm)),
                               {{"spectrum_window_us", num(grid.span())},
                                {"spectrum_dt_ns", num(grid.dt * 1e3)},
                                {"transform", "one-sided, exp(-gamma t) weighted, trapezoidal"}});
    auto line_rows = [](double v, const std::vector<SpectrumLine>& ls, Table& t) {
        for (const auto& l : ls) {
            t.rows.push_back({v, angular_to_mhz(l.center), l.amplitude, angular_to_mhz(l.fwhm)});
        }
    };
    const std::vector<std::string> line_cols = {axis, "center_mhz", "amplitude_us", "fwhm_mhz"};
    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        Table grid_table{{axis, "freq_mhz", "abs_f_us"}, {}};
        Table lines{line_cols, {}};
        std::vector<OutputFile> cut_files;
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            const Job& j = jobs[i];
            if (j.panel != pi) continue;
            const Result& r = results[i];
            if (!j.cut) {
                for (std::size_t k = 0; k < freqs.size(); ++k) {
                    grid_table.rows.push_back({j.value, angular_to_mhz(freqs[k]), r.magnitude[k]});
                }
                line_rows(j.value, r.lines, lines);
                continue;
            }
            const std::string tag = vs_amp ? offset_tag(j.value) : phase_tag(j.value);
            Table cut{{"freq_mhz", "abs_f_us"}, {}};
            for (std::size_t k = 0; k < freqs.size(); ++k) cut.rows.push_back({angular_to_mhz(freqs[k]), r.magnitude[k]});
            Table cut_lines{line_cols, {}};
            line_rows(j.value, r.lines, cut_lines);
            const Metadata cut_meta = with(meta, {{"panel", panels[pi].tag}, {axis, num(j.value)}});
            cut_files.push_back({fmt::format("{}_{}_cut_{}.csv", prefix, panels[pi].tag, tag), cut_meta, std::move(cut)});
            cut_files.push_back(
                {fmt::format("{}_{}_cut_{}_lines.csv", prefix, panels[pi].tag, tag), cut_meta, std::move(cut_lines)});
        }
        const Metadata panel_meta = with(meta, {{"panel", panels[pi].tag}});
        out.files.push_back({fmt::format("{}_{}_grid.csv", prefix, panels[pi].tag), panel_meta, std::move(grid_table)});
        out.files.push_back({fmt::format("{}_{}_lines.csv", prefix, panels[pi].tag), panel_meta, std::move(lines)});
        for (auto& f : cut_files) out.files.push_back(std::move(f));
    }
    note_resonance(out, drive_for(jobs.front()));
    return out;
}

ValidateOutcome run_validate(const ScenarioSpec& spec) {
    const ValidationSettings s = ValidationSettings::from_config(spec.config);
    ValidateOutcome out;
    out.report = run_validation(s);
    if (!spec.out_dir.empty()) {
        std::filesystem::create_directories(spec.out_dir);
        out.report_path = spec.out_dir / "validate_report.json";
        nlohmann::json j = to_json(out.report);
        nlohmann::json params = nlohmann::json::object();
        for (const auto& [k, v] : describe(spec.config)) params[k] = v;
        j["config"] = params;
        std::ofstream f(out.report_path, std::ios::trunc);
        if (!f) throw Error(fmt::format("cannot open '{}' for writing", out.report_path.string()));
        f << j.dump(2) << '\n';
        if (!f) throw Error(fmt::format("write to '{}' failed", out.report_path.string()));
    }
    return out;
}

ScenarioOutput run_scenario(const ScenarioSpec& spec) {
    check(spec.config);
    ScenarioOutput out;
    switch (spec.kind) {
        case ScenarioKind::FreqSweep: out = run_freq_sweep(spec); break;
        case ScenarioKind::TimeTraces: out = run_time_traces(spec); break;
        case ScenarioKind::SpectraVsAmp:
        case ScenarioKind::SpectraVsPhase: out = run_spectra(spec); break;
        case ScenarioKind::Validate: throw Error("validate produces a report, not tables; use run_validate");
    }
    if (!spec.out_dir.empty()) write_outputs(out, spec.out_dir);
    return out;
}

void write_outputs(const ScenarioOutput& out, const std::filesystem::path& dir) {
    for (const auto& f : out.files) write_csv(dir / f.name, f.meta, f.table);
}

}  // namespace bsraman
