#include "bsraman/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "bsraman/error.hpp"
#include "bsraman/special_functions.hpp"

namespace bsraman {

namespace {

enum class Kind { Real, OptionalReal, Integer };

struct Field {
    std::string_view key;
    Kind kind;
    double ScenarioConfig::*real = nullptr;
    std::optional<double> ScenarioConfig::*opt = nullptr;
    int ScenarioConfig::*integer = nullptr;
};

const std::vector<Field>& fields() {
    static const std::vector<Field> f = {
        {"delta_x_mhz", Kind::Real, &ScenarioConfig::delta_x_mhz},
        {"delta_z_mhz", Kind::Real, &ScenarioConfig::delta_z_mhz},
        {"amp_over_omega", Kind::OptionalReal, nullptr, &ScenarioConfig::amp_over_omega},
        {"omega_mhz", Kind::Real, &ScenarioConfig::omega_mhz},
        {"psi_deg", Kind::OptionalReal, nullptr, &ScenarioConfig::psi_deg},
        {"gamma_inv_us", Kind::Real, &ScenarioConfig::gamma_inv_us},
        {"delta_a_over_omega", Kind::OptionalReal, nullptr, &ScenarioConfig::delta_a_over_omega},
        {"n_max", Kind::Integer, nullptr, nullptr, &ScenarioConfig::n_max},
        {"dt_ns", Kind::OptionalReal, nullptr, &ScenarioConfig::dt_ns},
        {"window_us", Kind::OptionalReal, nullptr, &ScenarioConfig::window_us},
        {"steps_per_fast_period", Kind::Integer, nullptr, nullptr, &ScenarioConfig::steps_per_fast_period},
        {"sweep_min", Kind::OptionalReal, nullptr, &ScenarioConfig::sweep_min},
        {"sweep_max", Kind::OptionalReal, nullptr, &ScenarioConfig::sweep_max},
        {"sweep_step", Kind::OptionalReal, nullptr, &ScenarioConfig::sweep_step},
        {"freq_min_mhz", Kind::Real, &ScenarioConfig::freq_min_mhz},
        {"freq_max_mhz", Kind::Real, &ScenarioConfig::freq_max_mhz},
        {"freq_step_mhz", Kind::Real, &ScenarioConfig::freq_step_mhz},
        {"min_prominence", Kind::Real, &ScenarioConfig::min_prominence},
        {"threads", Kind::Integer, nullptr, nullptr, &ScenarioConfig::threads},
    };
    return f;
}

std::string num(double v) { return fmt::format("{:.12g}", v); }

}  // namespace

const std::vector<std::string_view>& config_keys() {
    static const std::vector<std::string_view> keys = [] {
        std::vector<std::string_view> k;
        for (const auto& f : fields()) k.push_back(f.key);
        return k;
    }();
    return keys;
}

void set_value(ScenarioConfig& cfg, std::string_view key, double value) {
    if (!std::isfinite(value)) throw ConfigError(fmt::format("config key '{}': value must be finite", key));
    for (const auto& f : fields()) {
        if (f.key != key) continue;
        switch (f.kind) {
            case Kind::Real: cfg.*(f.real) = value; return;
            case Kind::OptionalReal: cfg.*(f.opt) = value; return;
            case Kind::Integer:
                if (value != std::floor(value) || std::abs(value) > 1e9) {
                    throw ConfigError(fmt::format("config key '{}' expects an integer (got {})", key, value));
                }
                cfg.*(f.integer) = static_cast<int>(value);
                return;
        }
    }
    throw ConfigError(fmt::format("unknown config key '{}'", key));
}

ScenarioConfig parse_config(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(fmt::format("config is not valid JSON: {}", e.what()));
    }
    if (!doc.is_object()) throw ConfigError("config must be a flat JSON object");
    ScenarioConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        if (!value.is_number()) {
            throw ConfigError(fmt::format("config key '{}' must be a number", key));
        }
        set_value(cfg, key, value.get<double>());
    }
    check(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot read config file '{}'", path.string()));
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

void check(const ScenarioConfig& cfg) {
    auto require = [](bool ok, std::string_view msg) {
        if (!ok) throw ConfigError(std::string(msg));
    };
    require(cfg.omega_mhz > 0.0, "omega_mhz must be > 0");
    require(cfg.delta_x_mhz >= 0.0, "delta_x_mhz must be >= 0");
    require(cfg.delta_x_mhz != 0.0 || cfg.delta_z_mhz != 0.0, "delta_x_mhz and delta_z_mhz cannot both be 0");
    require(cfg.gamma_inv_us > 0.0, "gamma_inv_us must be > 0");
    require(!(cfg.amp_over_omega && cfg.delta_a_over_omega),
            "amp_over_omega and delta_a_over_omega are mutually exclusive");
    require(!cfg.amp_over_omega || *cfg.amp_over_omega >= 0.0, "amp_over_omega must be >= 0");
    require(cfg.n_max >= 2 && cfg.n_max <= BesselTable::kMaxTableOrder / 2 - 2,
            "n_max must lie in [2, 126]");
    require(!cfg.dt_ns || *cfg.dt_ns > 0.0, "dt_ns must be > 0");
    require(!cfg.window_us || *cfg.window_us > 0.0, "window_us must be > 0");
    require(cfg.steps_per_fast_period > 0, "steps_per_fast_period must be > 0");
    require(!cfg.sweep_step || *cfg.sweep_step > 0.0, "sweep_step must be > 0");
    if (cfg.sweep_min && cfg.sweep_max) require(*cfg.sweep_max >= *cfg.sweep_min, "sweep range is empty");
    require(cfg.freq_step_mhz > 0.0, "freq_step_mhz must be > 0");
    require(cfg.freq_max_mhz > cfg.freq_min_mhz, "frequency range is empty");
    require(cfg.freq_min_mhz >= 0.0, "freq_min_mhz must be >= 0");
    require(cfg.min_prominence > 0.0 && cfg.min_prominence < 1.0, "min_prominence must lie in (0, 1)");
    require(cfg.threads >= 0, "threads must be >= 0");
}

DriveParams drive_params(const ScenarioConfig& cfg, std::optional<double> delta_a_override,
                         std::optional<double> psi_deg_override) {
    const double psi = psi_deg_override.value_or(cfg.psi_deg.value_or(0.0));
    DriveParams p = DriveParams::from_lab_units(cfg.delta_x_mhz, cfg.delta_z_mhz, 0.0, cfg.omega_mhz,
                                                psi, cfg.gamma_inv_us);
    if (cfg.amp_over_omega && !delta_a_override) {
        p.amp = *cfg.amp_over_omega * p.mod_freq;
    } else {
        const double a_star = a_star_amplitude(derive_frame(p), p.mod_freq, 1);
        p.amp = a_star + delta_a_override.value_or(cfg.delta_a_over_omega.value_or(0.0)) * p.mod_freq;
    }
    if (p.amp < 0.0) throw ConfigError(fmt::format("resulting amplitude A/omega = {} is negative", p.amp / p.mod_freq));
    validate(p);
    return p;
}

std::vector<std::pair<std::string, std::string>> describe(const ScenarioConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& f : fields()) {
        std::string v;
        switch (f.kind) {
            case Kind::Real: v = num(cfg.*(f.real)); break;
            case Kind::OptionalReal: {
                const auto& o = cfg.*(f.opt);
                v = o ? num(*o) : "default";
                break;
            }
            case Kind::Integer: v = std::to_string(cfg.*(f.integer)); break;
        }
        out.emplace_back(std::string(f.key), v);
    }
    return out;
}

}  // namespace bsraman
