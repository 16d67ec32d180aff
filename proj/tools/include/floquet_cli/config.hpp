#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "floquet/propagator.hpp"
#include "floquet/tolerances.hpp"

namespace floquet::cli {

/// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { kFloquet, kMourre, kClassical, kVerifyChain, kDynamics, kSweep };
enum class SweepAxis { kEps, kMu, kNBasis, kDt };

std::string to_string(Command c);
std::string to_string(SweepAxis a);
Command parse_command(const std::string& s);
SweepAxis parse_axis(const std::string& s);

struct RunConfig {
  Command command = Command::kFloquet;

  double eps = 0.5;
  double mu = 0.0;
  std::string potential = "zero";
  int n_basis = 64;
  int steps_per_period = 2048;
  // Zero means "choose from n_basis, eps and the time horizon"; resolved()
  // replaces it with the concrete value before anything is recorded.
  int grid_points = 0;
  double x_max = 0.0;
  double t0 = 0.0;

  int n_t = 64;             // mourre: t samples on [0, 2π)
  double t1 = kTwoPi;       // verify-chain: propagation time
  int n_periods = 10;       // dynamics, classical
  std::string state = "ground";  // ground | hermite:<k> | random
  double x0 = 0.0;          // classical initial point
  double p0 = 0.0;
  int classical_steps_per_period = 200;
  int stride = 1;           // classical: keep every stride-th step

  SweepAxis axis = SweepAxis::kMu;
  std::vector<double> values;
  Command target = Command::kMourre;

  std::string output_dir = "floquet-out";
  std::uint64_t seed = 1;
  unsigned threads = 0;
  Tolerances tol;

  bool operator==(const RunConfig&) const;
};

nlohmann::json to_json(const RunConfig& config);
/// Unknown keys and type mismatches raise ConfigError; absent keys keep
/// their defaults.
RunConfig from_json(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

/// Periods of evolution the grid has to hold for this command.
int horizon_periods(const RunConfig& config);
/// Copy with grid_points and x_max filled in.
RunConfig resolved(const RunConfig& config);
/// Structural checks that need no numerics; throws ConfigError.
void validate(const RunConfig& config);

/// FNV-1a of the canonical JSON of the resolved config, without the fields
/// that cannot change results (output_dir, threads). 16 hex digits.
std::string config_hash(const RunConfig& config);

SimParams make_sim_params(const RunConfig& config);

}  // namespace floquet::cli
