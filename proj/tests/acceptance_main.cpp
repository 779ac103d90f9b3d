#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "cpexp/validate.hpp"

// Runs the full validation battery and reports one line per check.
// Exit status 0 means every check passed at its stated tolerance.
int main(int argc, char** argv) {
    cpexp::ValidationConfig config;
    config.threads = std::clamp(std::thread::hardware_concurrency(), 1u, 8u);
    if (argc > 1) config.paths = std::strtoull(argv[1], nullptr, 10);
    if (argc > 2) config.seed = std::strtoull(argv[2], nullptr, 10);

    const auto report = cpexp::run_validation(config, &std::cout);
    std::cout << (report.all_pass() ? "ALL CHECKS PASSED" : "CHECKS FAILED") << " ("
              << report.checks.size() << " checks, seed " << config.seed << ", "
              << config.paths << " paths)\n";
    return report.all_pass() ? 0 : 1;
}
