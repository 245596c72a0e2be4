#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using bsraman::cli::run;

namespace {

const fs::path kTmp = fs::path(BSRAMAN_TEST_TMP) / "cli";

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "bsraman");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path write_config(const std::string& name, const std::string& body) {
    fs::create_directories(kTmp);
    const fs::path p = kTmp / name;
    std::ofstream(p) << body;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool criterion_passed(const fs::path& report, const std::string& id) {
    const auto j = nlohmann::json::parse(slurp(report));
    for (const auto& c : j["criteria"]) {
        if (c["id"] == id) return c["passed"].get<bool>();
    }
    FAIL("criterion missing from report");
    return false;
}

}  // namespace

TEST_CASE("help and usage errors") {
    CHECK(call({"--help"}).code == 0);
    CHECK(call({}).code == 2);
    CHECK(call({"fig9"}).code == 2);
    CHECK(call({"fig1", "--no-such-flag"}).code == 2);
}

TEST_CASE("fig1 writes a deterministic table") {
    const fs::path dir = kTmp / "fig1";
    fs::remove_all(dir);
    const Result r = call({"fig1", "--out-dir", dir.string()});
    REQUIRE(r.code == 0);
    const std::string first = slurp(dir / "fig1_freq_sweep.csv");
    CHECK(first.find("# n_max=40") != std::string::npos);
    CHECK(call({"fig1", "--out-dir", dir.string()}).code == 0);
    CHECK(slurp(dir / "fig1_freq_sweep.csv") == first);
}

TEST_CASE("config files and overrides") {
    const fs::path dir = kTmp / "overrides";
    const auto cfg = write_config("good.json", R"({"n_max": 30, "sweep_max": 1.0})");
    REQUIRE(call({"fig1", "--config", cfg.string(), "--n-max", "24", "--out-dir", dir.string()}).code == 0);
    const std::string text = slurp(dir / "fig1_freq_sweep.csv");
    CHECK(text.find("# n_max=24") != std::string::npos);
    CHECK(text.find("# sweep_max=1\n") != std::string::npos);
    CHECK(call({"fig1", "--set", "sweep_max=0.5", "--out-dir", dir.string()}).code == 0);
}

TEST_CASE("configuration errors exit with 2") {
    const auto typo = write_config("typo.json", R"({"delta_x_mhzz": 10})");
    const Result r = call({"fig1", "--config", typo.string(), "--out-dir", (kTmp / "x").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("delta_x_mhzz") != std::string::npos);
    const auto conflict = write_config("conflict.json", R"({"amp_over_omega": 2, "delta_a_over_omega": 0.1})");
    CHECK(call({"fig1", "--config", conflict.string()}).code == 2);
    CHECK(call({"fig1", "--config", (kTmp / "missing.json").string()}).code == 2);
    CHECK(call({"fig1", "--set", "bogus=1"}).code == 2);
    CHECK(call({"fig1", "--set", "n_max=2.5"}).code == 2);
    CHECK(call({"fig1", "--set", "n_max"}).code == 2);
    CHECK(call({"fig1", "--gamma", "-1"}).code == 2);
}

TEST_CASE("a time step beyond the integrator limit is a configuration error") {
    CHECK(call({"fig2", "--dt-ns", "4", "--out-dir", (kTmp / "dt").string()}).code == 2);
    const Result v = call({"validate", "--dt-ns", "4", "--out-dir", (kTmp / "dt").string()});
    CHECK(v.code == 2);
    CHECK(v.err.find("integrator") != std::string::npos);
}

TEST_CASE("validate: truncation criterion tracks the series cutoff") {
    const fs::path good = kTmp / "validate_default";
    const fs::path bad = kTmp / "validate_nmax6";
    const Result r_good = call({"validate", "--out-dir", good.string()});
    const Result r_bad = call({"validate", "--n-max", "6", "--out-dir", bad.string()});
    CHECK(r_good.out.find("PASS A10") != std::string::npos);
    CHECK(criterion_passed(good / "validate_report.json", "A10"));
    CHECK(r_bad.code == 1);
    CHECK(r_bad.out.find("FAIL A10") != std::string::npos);
    CHECK_FALSE(criterion_passed(bad / "validate_report.json", "A10"));
    // exit status mirrors the report
    const auto j = nlohmann::json::parse(slurp(good / "validate_report.json"));
    CHECK(r_good.code == (j["all_passed"].get<bool>() ? 0 : 1));
    CHECK(j["criteria"].size() == 10);
}
