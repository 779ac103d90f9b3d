#pragma once

#include <json.hpp>
#include <string>

#include "cpexp/log.hpp"
#include "cpexp/model.hpp"
#include "cpexp/resolvent.hpp"

namespace cpexp {

// Shared options resolved from the command line and the environment.
// Thread preference order: --threads flag, config "threads" key,
// CPEXP_THREADS, then one.
struct JobOptions {
    std::string output_dir = ".";
    unsigned threads_flag = 0;  // 0 when the flag was not given
    LogLevel log_level = LogLevel::warn;
};

// Parses the process block {"c":..,"a":..,"lambda":..,"jump":{..}};
// rejects unknown keys with the offending path in the message.
ProcessParams parse_process(const nlohmann::json& j);
JumpLaw parse_jump(const nlohmann::json& j);
ResolventOptions parse_resolvent_options(const nlohmann::json& config);

// Runs one job as named by the CLI subcommand against its JSON config.
// Returns the process exit code; writes outputs under options.output_dir.
int run_job(const std::string& job, const nlohmann::json& config, const JobOptions& options);

}
