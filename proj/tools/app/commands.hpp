#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "app/config.hpp"

namespace chainctl::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitFloorMissed = 4,
};

const std::vector<std::string>& command_names();
/// One-line description shown by --help.
std::string command_description(const std::string& command);

/// Runs `command` with the merged configuration; progress and notices go to `log`.
/// Throws ConfigError, chainctl::DomainError, chainctl::NumericalError, ...;
/// run_cli() maps those to exit codes.
int run_command(const std::string& command, const RunConfig& config, std::ostream& log);

/// Full command line entry point: argument parsing, config loading and error mapping.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace chainctl::cli
