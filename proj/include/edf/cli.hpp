#pragma once

#include "edf/experiments.hpp"

#include <ostream>
#include <string>

namespace edf::cli {

enum ExitCode : int { ok = 0, failure = 1, unknown_scenario = 2, io_failure = 3, estimator_failure = 4 };

enum class Format { csv, json };

struct RunConfig {
    std::string scenario;
    RunOptions options;
    std::string out_path = "-";
    Format format = Format::csv;
};

void cmd_list(std::ostream& out);
int cmd_describe(const std::string& name, std::ostream& out, std::ostream& err);
/// Data goes to `out` when out_path is "-", diagnostics to `err`.
int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
/// cmd_run for an already resolved scenario; cfg.scenario is ignored.
int run_scenario(const ScenarioInfo& info, const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line: list | describe <name> | run <name> [flags].
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace edf::cli
