#include "cli.hpp"

#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "bsraman/error.hpp"
#include "bsraman/scenarios.hpp"

namespace bsraman::cli {

namespace {

struct Overrides {
    std::string config;
    std::string out_dir = ".";
    std::optional<double> delta_a;
    std::optional<double> psi_deg;
    std::optional<double> gamma;
    std::optional<int> n_max;
    std::optional<double> dt_ns;
    std::optional<double> window_us;
    std::vector<std::string> settings;  // key=value
};

void add_common(CLI::App* sub, Overrides& o) {
    sub->add_option("--config", o.config, "flat JSON config file");
    sub->add_option("--out-dir", o.out_dir, "directory for output files")->capture_default_str();
    sub->add_option("--delta-a-over-omega", o.delta_a, "amplitude offset (A - A*)/omega");
    sub->add_option("--psi-deg", o.psi_deg, "drive phase psi, degrees");
    sub->add_option("--gamma", o.gamma, "spectral decay rate, 1/us");
    sub->add_option("--n-max", o.n_max, "Bessel series cutoff");
    sub->add_option("--dt-ns", o.dt_ns, "time step, ns");
    sub->add_option("--window-us", o.window_us, "time window, us");
    sub->add_option("--set", o.settings, "any config key as key=value (repeatable)");
}

ScenarioConfig build_config(const Overrides& o) {
    ScenarioConfig cfg = o.config.empty() ? ScenarioConfig{} : load_config(o.config);
    for (const auto& kv : o.settings) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError(fmt::format("--set expects key=value, got '{}'", kv));
        double v = 0.0;
        try {
            std::size_t used = 0;
            v = std::stod(kv.substr(eq + 1), &used);
            if (used != kv.size() - eq - 1) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw ConfigError(fmt::format("--set {}: value is not a number", kv));
        }
        set_value(cfg, kv.substr(0, eq), v);
    }
    if (o.delta_a) {
        cfg.amp_over_omega.reset();
        cfg.delta_a_over_omega = *o.delta_a;
    }
    if (o.psi_deg) cfg.psi_deg = *o.psi_deg;
    if (o.gamma) cfg.gamma_inv_us = *o.gamma;
    if (o.n_max) cfg.n_max = *o.n_max;
    if (o.dt_ns) cfg.dt_ns = *o.dt_ns;
    if (o.window_us) cfg.window_us = *o.window_us;
    check(cfg);
    return cfg;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Second-order Raman transition and Bloch-Siegert shift of a driven qubit", "bsraman"};
    app.set_version_flag("--version", BSRAMAN_VERSION);
    app.require_subcommand(1);
    Overrides o;
    struct Sub {
        const char* name;
        const char* help;
        ScenarioKind kind;
    };
    const Sub subs[] = {
        {"fig1", "Raman frequencies versus drive amplitude", ScenarioKind::FreqSweep},
        {"fig2", "population traces, closed form and ODE", ScenarioKind::TimeTraces},
        {"fig3", "Fourier spectra versus amplitude offset", ScenarioKind::SpectraVsAmp},
        {"fig4", "Fourier spectra versus drive phase", ScenarioKind::SpectraVsPhase},
        {"validate", "run the acceptance suite", ScenarioKind::Validate},
    };
    std::vector<std::pair<CLI::App*, ScenarioKind>> registered;
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        add_common(sub, o);
        registered.emplace_back(sub, s.kind);
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << BSRAMAN_VERSION << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }

    ScenarioSpec spec;
    for (const auto& [sub, kind] : registered) {
        if (sub->parsed()) spec.kind = kind;
    }
    try {
        spec.config = build_config(o);
        spec.out_dir = o.out_dir;
        if (spec.kind == ScenarioKind::Validate) {
            const ValidateOutcome v = run_validate(spec);
            for (const auto& r : v.report.results) out << format_result(r) << '\n';
            out << fmt::format("{} of {} criteria passed; report: {}\n",
                               std::count_if(v.report.results.begin(), v.report.results.end(),
                                             [](const auto& r) { return r.passed; }),
                               v.report.results.size(), v.report_path.string());
            return v.report.all_passed() ? kOk : kValidationFailed;
        }
        const ScenarioOutput res = run_scenario(spec);
        for (const auto& f : res.files) {
            out << (spec.out_dir / f.name).string() << '\n';
            for (const auto& [k, v] : f.meta) {
                if (k == "warning") err << "warning: " << f.name << ": " << v << '\n';
            }
        }
        return kOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const IntegratorError& e) {
        err << "integrator config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const InvalidParameter& e) {
        err << "invalid parameter: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }
}

}  // namespace bsraman::cli
