#pragma once

#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "floquet_cli/config.hpp"

namespace floquet::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitPrecondition = 3,
  kExitResolution = 4,
  kExitInvariant = 5,
};

/// Outcome of one invariant check requested by a command.
struct Check {
  std::string name;
  double value = 0.0;
  std::string relation;  // "<=" or ">="
  double limit = 0.0;
  bool passed = false;
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::string hash;
  std::filesystem::path manifest;
  std::vector<std::filesystem::path> files;
  std::vector<Check> checks;
  nlohmann::json results;
};

/// Environment variable that, when set, roots relative output directories.
inline constexpr const char* kOutputRootEnv = "FLOQUET_OUTPUT_ROOT";

std::filesystem::path output_directory(const RunConfig& config);

/// Runs one command and writes its manifest and CSV files. Library errors
/// propagate as exceptions; failed checks only set exit_code.
RunOutcome run(const RunConfig& config);

int exit_code_for(const std::exception& e);

/// Full command-line entry point; never throws.
int run_cli(int argc, const char* const* argv);

}  // namespace floquet::cli
