#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "cpexp/config.hpp"
#include "cpexp/version.hpp"

namespace {

nlohmann::json load_config(const std::string& path) {
    if (path.empty()) return nlohmann::json::object();
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    return nlohmann::json::parse(in);
}

cpexp::LogLevel parse_log_level(const std::string& name) {
    if (name == "debug") return cpexp::LogLevel::debug;
    if (name == "info") return cpexp::LogLevel::info;
    if (name == "warn") return cpexp::LogLevel::warn;
    if (name == "error") return cpexp::LogLevel::error;
    if (name == "off") return cpexp::LogLevel::off;
    throw std::runtime_error("unknown log level '" + name + "'");
}

}

int main(int argc, char** argv) {
    CLI::App app{"first exit and first entry transforms for a compound Poisson process "
                 "with exponential downward jumps"};
    app.set_version_flag("--version", std::string("cpexp ") + cpexp::version_string);
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string log_level = "warn";
    cpexp::JobOptions options;

    app.add_option("-c,--config", config_path, "JSON config file");
    app.add_option("-o,--output-dir", options.output_dir, "directory for result files");
    app.add_option("-t,--threads", options.threads_flag,
                   "worker threads (overrides config and CPEXP_THREADS)");
    app.add_option("-l,--log-level", log_level, "debug, info, warn, error or off");

    app.add_subcommand("resolvent", "density and distribution of the killed process");
    app.add_subcommand("exit", "two sided first exit transforms");
    app.add_subcommand("entry", "first entry transforms for a closed band");
    app.add_subcommand("survival", "survival probability curve in the time domain");
    app.add_subcommand("simulate", "Monte Carlo estimates of the same functionals");
    app.add_subcommand("validate", "cross checks between transforms and simulation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        options.log_level = parse_log_level(log_level);
        const auto config = load_config(config_path);
        return cpexp::run_job(app.get_subcommands().front()->get_name(), config, options);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
