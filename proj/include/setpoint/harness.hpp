#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "setpoint/json_io.hpp"

namespace setpoint {

std::string report_schema_version();

struct ProblemFile {
    SpacePtr space;
    std::optional<MultiMap> map;
    std::string task;
    Json params;
    std::uint64_t seed = 0;
};

ProblemFile parse_problem(const Json& j);
ProblemFile load_problem_file(const std::string& path);

// Dispatches the task and writes report.json (plus trace.jsonl/trace.csv for
// iterative tasks) under outdir. Returns the produced report.
Json run_problem(const ProblemFile& problem, const std::string& outdir);

// Exit-status wrappers: 0 task completed, 1 validation error, 2 internal
// error.
int run_file(const std::string& path, const std::string& outdir);
int validate_file(const std::string& path);

// Warning when a loaded report carries a different schema version.
std::optional<std::string> version_warning(const Json& loaded_report);

// Worker count for scan parallelism (SETPOINT_WORKERS, default 1).
int worker_count();

}  // namespace setpoint
