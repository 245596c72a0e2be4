// Acceptance suite driver: one PASS/FAIL line per criterion.
//   acceptance                 run everything
//   acceptance --criterion A6  run one criterion
//   acceptance --quiet         omit the detail lines

#include <cstring>
#include <iostream>
#include <string>

#include "bsraman/error.hpp"
#include "bsraman/validation.hpp"

int main(int argc, char** argv) {
    std::string only;
    bool details = true;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = argv[++i];
        } else if (std::strcmp(argv[i], "--quiet") == 0) {
            details = false;
        } else {
            std::cerr << "usage: acceptance [--criterion ID] [--quiet]\n";
            return 2;
        }
    }
    const auto settings = bsraman::ValidationSettings::defaults();
    bool all = true;
    bool ran = false;
    try {
        bsraman::preflight(settings);
        for (const auto& c : bsraman::acceptance_criteria()) {
            if (!only.empty() && c.id != only) continue;
            ran = true;
            const auto r = bsraman::run_criterion(c, settings);
            std::cout << bsraman::format_result(r, details) << std::endl;
            all = all && r.passed;
        }
    } catch (const bsraman::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    if (!ran) {
        std::cerr << "no criterion named '" << only << "'\n";
        return 2;
    }
    return all ? 0 : 1;
}
