#include "floquet_cli/config.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "floquet/hermite.hpp"
#include "floquet/potentials.hpp"

namespace floquet::cli {

using nlohmann::json;

namespace {

struct CommandName {
  Command command;
  const char* name;
};
constexpr CommandName kCommands[] = {
    {Command::kFloquet, "floquet"},     {Command::kMourre, "mourre"},
    {Command::kClassical, "classical"}, {Command::kVerifyChain, "verify-chain"},
    {Command::kDynamics, "dynamics"},   {Command::kSweep, "sweep"},
};

struct AxisName {
  SweepAxis axis;
  const char* name;
};
constexpr AxisName kAxes[] = {{SweepAxis::kEps, "eps"},
                              {SweepAxis::kMu, "mu"},
                              {SweepAxis::kNBasis, "n_basis"},
                              {SweepAxis::kDt, "dt"}};

json tolerances_to_json(const Tolerances& t) {
  return {{"orthonormality", t.orthonormality},
          {"hermiticity", t.hermiticity},
          {"propagation", t.propagation},
          {"normalization", t.normalization},
          {"polar_threshold", t.polar_threshold},
          {"unitarity_abort", t.unitarity_abort},
          {"frame_equivalence", t.frame_equivalence},
          {"mourre_slack", t.mourre_slack},
          {"double_commutator_slack", t.double_commutator_slack},
          {"boundary_fraction", t.boundary_fraction}};
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

void reject_unknown(const json& j, const json& reference, const char* where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!reference.contains(key)) {
      throw ConfigError(std::string("unknown key '") + key + "' in " + where);
    }
  }
}

Tolerances tolerances_from_json(const json& j) {
  Tolerances t;
  reject_unknown(j, tolerances_to_json(t), "tolerances");
  read(j, "orthonormality", t.orthonormality);
  read(j, "hermiticity", t.hermiticity);
  read(j, "propagation", t.propagation);
  read(j, "normalization", t.normalization);
  read(j, "polar_threshold", t.polar_threshold);
  read(j, "unitarity_abort", t.unitarity_abort);
  read(j, "frame_equivalence", t.frame_equivalence);
  read(j, "mourre_slack", t.mourre_slack);
  read(j, "double_commutator_slack", t.double_commutator_slack);
  read(j, "boundary_fraction", t.boundary_fraction);
  return t;
}

}  // namespace

std::string to_string(Command c) {
  for (const auto& [command, name] : kCommands) {
    if (command == c) return name;
  }
  return "unknown";
}

std::string to_string(SweepAxis a) {
  for (const auto& [axis, name] : kAxes) {
    if (axis == a) return name;
  }
  return "unknown";
}

Command parse_command(const std::string& s) {
  for (const auto& [command, name] : kCommands) {
    if (s == name) return command;
  }
  throw ConfigError("unknown command '" + s + "'");
}

SweepAxis parse_axis(const std::string& s) {
  for (const auto& [axis, name] : kAxes) {
    if (s == name) return axis;
  }
  throw ConfigError("unknown sweep axis '" + s + "' (expected eps, mu, n_basis or dt)");
}

bool RunConfig::operator==(const RunConfig& o) const {
  return to_json(*this) == to_json(o);
}

json to_json(const RunConfig& c) {
  return {{"command", to_string(c.command)},
          {"eps", c.eps},
          {"mu", c.mu},
          {"potential", c.potential},
          {"n_basis", c.n_basis},
          {"steps_per_period", c.steps_per_period},
          {"grid_points", c.grid_points},
          {"x_max", c.x_max},
          {"t0", c.t0},
          {"n_t", c.n_t},
          {"t1", c.t1},
          {"n_periods", c.n_periods},
          {"state", c.state},
          {"x0", c.x0},
          {"p0", c.p0},
          {"classical_steps_per_period", c.classical_steps_per_period},
          {"stride", c.stride},
          {"axis", to_string(c.axis)},
          {"values", c.values},
          {"target", to_string(c.target)},
          {"output_dir", c.output_dir},
          {"seed", c.seed},
          {"threads", c.threads},
          {"tolerances", tolerances_to_json(c.tol)}};
}

RunConfig from_json(const json& j) {
  RunConfig c;
  reject_unknown(j, to_json(c), "config");
  std::string command = to_string(c.command);
  std::string axis = to_string(c.axis);
  std::string target = to_string(c.target);
  read(j, "command", command);
  c.command = parse_command(command);
  read(j, "eps", c.eps);
  read(j, "mu", c.mu);
  read(j, "potential", c.potential);
  read(j, "n_basis", c.n_basis);
  read(j, "steps_per_period", c.steps_per_period);
  read(j, "grid_points", c.grid_points);
  read(j, "x_max", c.x_max);
  read(j, "t0", c.t0);
  read(j, "n_t", c.n_t);
  read(j, "t1", c.t1);
  read(j, "n_periods", c.n_periods);
  read(j, "state", c.state);
  read(j, "x0", c.x0);
  read(j, "p0", c.p0);
  read(j, "classical_steps_per_period", c.classical_steps_per_period);
  read(j, "stride", c.stride);
  read(j, "axis", axis);
  c.axis = parse_axis(axis);
  read(j, "values", c.values);
  read(j, "target", target);
  c.target = parse_command(target);
  read(j, "output_dir", c.output_dir);
  read(j, "seed", c.seed);
  read(j, "threads", c.threads);
  if (j.contains("tolerances")) c.tol = tolerances_from_json(j.at("tolerances"));
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

int horizon_periods(const RunConfig& c) {
  switch (c.command) {
    case Command::kDynamics:
      return std::max(c.n_periods, 1);
    case Command::kSweep:
      return c.target == Command::kDynamics ? std::max(c.n_periods, 1) : 1;
    default:
      return 1;
  }
}

RunConfig resolved(const RunConfig& c) {
  RunConfig r = c;
  if (r.grid_points > 0 && r.x_max > 0.0) return r;
  // Largest phase-space radius the run can reach: top basis mode plus the
  // secular drift 2π|ε| per period, plus a tail margin.
  const int modes = std::max(r.n_basis, 16);
  const double reach = required_half_width(modes) +
                       kTwoPi * std::abs(r.eps) * horizon_periods(r) + 4.0;
  if (r.x_max <= 0.0) r.x_max = std::ceil(reach);
  if (r.grid_points <= 0) {
    // k_max = π n / (2 x_max) must also cover the reach, with 10% to spare.
    const double needed = 1.1 * 2.0 * r.x_max * reach / std::numbers::pi;
    r.grid_points = static_cast<int>(
        std::bit_ceil(static_cast<unsigned>(std::max(256.0, std::ceil(needed)))));
  }
  return r;
}

void validate(const RunConfig& c) {
  const auto names = builtin_potential_names();
  if (std::find(names.begin(), names.end(), c.potential) == names.end()) {
    throw ConfigError("unknown potential '" + c.potential + "'");
  }
  if (c.command == Command::kSweep) {
    if (c.values.empty()) throw ConfigError("sweep needs at least one value");
    if (c.target != Command::kMourre && c.target != Command::kFloquet) {
      throw ConfigError("sweep target must be mourre or floquet");
    }
  }
  if (c.state != "ground" && c.state != "random" && c.state.rfind("hermite:", 0) != 0) {
    throw ConfigError("state must be ground, random or hermite:<k>");
  }
  if (c.stride < 1) throw ConfigError("stride must be positive");
}

std::string config_hash(const RunConfig& c) {
  json j = to_json(resolved(c));
  j.erase("output_dir");
  j.erase("threads");
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char byte : j.dump()) {
    h ^= byte;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SimParams make_sim_params(const RunConfig& config) {
  const RunConfig c = resolved(config);
  return SimParams(c.eps, c.mu, builtin_potential(c.potential),
                   make_grid(c.grid_points, c.x_max), c.n_basis,
                   c.steps_per_period, c.t0);
}

}  // namespace floquet::cli
