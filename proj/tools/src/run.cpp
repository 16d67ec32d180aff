#include "floquet_cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>

#include "floquet/diagnostics.hpp"
#include "floquet/error.hpp"
#include "floquet/floquet_operator.hpp"
#include "floquet/fourier.hpp"
#include "floquet/mourre.hpp"
#include "floquet/transforms.hpp"
#include "floquet/version.hpp"
#include "floquet_cli/output.hpp"

namespace floquet::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class RunContext {
 public:
  RunContext(const RunConfig& config)
      : config_(resolved(config)),
        hash_(config_hash(config)),
        dir_(output_directory(config)) {
    fs::create_directories(dir_);
  }

  const RunConfig& config() const { return config_; }
  const std::string& hash() const { return hash_; }

  fs::path file(const std::string& stem, const std::string& ext) {
    fs::path p = dir_ / (stem + "-" + hash_ + ext);
    outcome_.files.push_back(p);
    return p;
  }

  void check(std::string name, double value, const char* relation, double limit) {
    const bool passed = std::string(relation) == "<=" ? value <= limit : value >= limit;
    outcome_.checks.push_back({std::move(name), value, relation, limit, passed});
  }

  RunOutcome finish(json results, const SimParams* params) {
    outcome_.hash = hash_;
    outcome_.results = std::move(results);
    const bool ok = std::all_of(outcome_.checks.begin(), outcome_.checks.end(),
                                [](const Check& c) { return c.passed; });
    if (!ok) outcome_.exit_code = kExitInvariant;

    json manifest{{"tool", "floquet"},
                  {"version", kVersion},
                  {"eigen", std::to_string(kEigenVersion[0]) + "." +
                                std::to_string(kEigenVersion[1]) + "." +
                                std::to_string(kEigenVersion[2])},
                  {"fftw", fftw_version_string()},
                  {"config_hash", hash_},
                  {"config", to_json(config_)},
                  {"results", outcome_.results},
                  {"status", ok ? "passed" : "failed"}};
    if (params) {
      manifest["threshold"] = {{"satisfied", params->threshold().satisfied},
                               {"margin", params->threshold().margin}};
    }
    json checks = json::array();
    for (const auto& c : outcome_.checks) {
      checks.push_back({{"name", c.name},
                        {"value", c.value},
                        {"relation", c.relation},
                        {"limit", c.limit},
                        {"passed", c.passed}});
    }
    manifest["checks"] = checks;
    json files = json::array();
    for (const auto& f : outcome_.files) files.push_back(f.filename().string());
    manifest["files"] = files;

    outcome_.manifest = dir_ / ("manifest-" + hash_ + ".json");
    std::ofstream(outcome_.manifest) << manifest.dump(2) << '\n';
    return outcome_;
  }

 private:
  RunConfig config_;
  std::string hash_;
  fs::path dir_;
  RunOutcome outcome_;
};

RunOutcome run_floquet(const RunConfig& input) {
  RunContext ctx(input);
  const RunConfig& c = ctx.config();
  const SimParams params = make_sim_params(c);
  const FloquetResult r = floquet_matrix(params, c.tol, c.threads);
  const SpectrumStats s = spectrum_stats(r);

  CsvWriter csv(ctx.file("eigenphases", ".csv"),
                {"index", "eigenphase", "gap_to_next", "participation_ratio"});
  for (Eigen::Index k = 0; k < s.eigenphases.size(); ++k) {
    csv.row({static_cast<double>(k), s.eigenphases[k], s.gaps[k],
             s.participation_ratios[k]});
  }
  // Floquet columns leave a truncated basis by construction when ε ≠ 0, so the
  // resolution check is on the propagated columns, not on the compressed matrix.
  ctx.check("propagation_defect", r.propagation_defect, "<=", c.tol.propagation);

  double ratio_sum = 0.0;
  for (double v : s.gap_ratios) ratio_sum += v;
  return ctx.finish(
      {{"label", kProxyLabel},
       {"unitarity_defect", r.unitarity_defect},
       {"propagation_defect", r.propagation_defect},
       {"polar_corrected", r.polar_corrected},
       {"max_gap", s.max_gap},
       {"mean_gap", s.mean_gap},
       {"mean_gap_ratio",
        s.gap_ratios.empty() ? 0.0 : ratio_sum / static_cast<double>(s.gap_ratios.size())},
       {"median_participation", s.median_participation},
       {"dt", r.dt}},
      &params);
}

RunOutcome run_mourre(const RunConfig& input) {
  RunContext ctx(input);
  const RunConfig& c = ctx.config();
  const SimParams params = make_sim_params(c);
  const MourreReport report = mourre_lower_bound(params, c.n_t, c.tol);

  const HermiteBasis basis =
      build_hermite_basis(params.grid(), params.n_basis(), false, c.tol);
  CsvWriter csv(ctx.file("mourre", ".csv"),
                {"t", "min_eigenvalue", "double_commutator_norm"});
  for (int i = 0; i < c.n_t; ++i) {
    const double t = kTwoPi * i / c.n_t;
    csv.row({t,
             symmetric_min_eigenvalue(commutator_fiber(t, params, basis).entries()),
             symmetric_operator_norm(
                 double_commutator_fiber(t, params, basis).entries())});
  }
  if (report.threshold_satisfied) {
    ctx.check("commutator_floor", report.min_eigenvalue_over_t, ">=",
              report.analytic_lower_bound - c.tol.mourre_slack);
  }
  ctx.check("double_commutator_bound", report.double_commutator_norm, "<=",
            report.analytic_double_bound + c.tol.double_commutator_slack);

  return ctx.finish({{"min_eigenvalue_over_t", report.min_eigenvalue_over_t},
                     {"t_at_minimum", report.t_at_minimum},
                     {"analytic_lower_bound", report.analytic_lower_bound},
                     {"slack", report.slack},
                     {"double_commutator_norm", report.double_commutator_norm},
                     {"analytic_double_bound", report.analytic_double_bound},
                     {"hermiticity_defect", report.hermiticity_defect},
                     {"threshold_satisfied", report.threshold_satisfied},
                     {"t_samples", report.t_samples},
                     {"n_basis", report.n_basis}},
                    &params);
}

RunOutcome run_classical(const RunConfig& input) {
  RunContext ctx(input);
  const RunConfig& c = ctx.config();
  if (c.classical_steps_per_period < 100) {
    throw PreconditionError("classical_steps_per_period must be at least 100");
  }
  const SimParams params = make_sim_params(c);
  const double dt = kTwoPi / c.classical_steps_per_period;
  const ClassicalTrajectory traj = classical_trajectory(
      {c.x0, c.p0, c.t0}, params, c.t0 + kTwoPi * c.n_periods, dt, c.stride);

  const auto energy = [](const ClassicalState& s) {
    return 0.5 * (s.x * s.x + s.p * s.p);
  };
  CsvWriter csv(ctx.file("trajectory", ".csv"), {"t", "x", "p", "energy"});
  for (const auto& s : traj.samples) csv.row({s.t, s.x, s.p, energy(s)});

  json results{{"label", kProxyLabel}, {"energy_capped", traj.energy_capped}};
  const double e0 = energy(traj.samples.front());
  double drift = 0.0;
  for (const auto& s : traj.samples) {
    drift = std::max(drift, std::abs(energy(s) - e0) / std::max(e0, 1.0));
  }
  results["max_energy_drift"] = drift;

  if (c.classical_steps_per_period % c.stride == 0 && !traj.energy_capped) {
    const std::vector<double> envelope =
        period_envelope(traj, c.classical_steps_per_period / c.stride);
    CsvWriter env(ctx.file("envelope", ".csv"), {"period", "radius"});
    for (std::size_t m = 0; m < envelope.size(); ++m) {
      env.row({static_cast<double>(m), envelope[m]});
    }
    const int last = static_cast<int>(envelope.size()) - 1;
    const int first = std::min(5, last - 1);
    if (first >= 0 && last > first) {
      const int fit_last = std::min(last, 20);
      const double slope = fit_linear_slope(envelope, first, fit_last);
      results["envelope_slope"] = slope;
      results["envelope_fit_periods"] = {first, fit_last};
      if (c.mu == 0.0 && c.eps != 0.0 && first == 5) {
        const double expected = kTwoPi * std::abs(c.eps);
        ctx.check("envelope_slope_relative_error",
                  std::abs(slope - expected) / expected, "<=", 0.05);
      }
    }
  }
  if (c.eps == 0.0 && c.mu == 0.0) {
    ctx.check("energy_conservation", drift, "<=", 1e-10);
  }
  return ctx.finish(results, &params);
}

RunOutcome run_verify_chain(const RunConfig& input) {
  RunContext ctx(input);
  const RunConfig& c = ctx.config();
  if (!(c.t1 > 0.0 && c.t1 <= kTwoPi + 1e-12)) {
    throw PreconditionError("t1 must lie in (0, 2π]");
  }
  const SimParams params = make_sim_params(c);
  const HermiteBasis basis =
      build_hermite_basis(params.grid(), params.n_basis(), false, c.tol);
  const FrameEquivalence r = compare_frames(
      params, basis, hermite_state_on_grid(basis, 0).normalized(), c.t1);

  CsvWriter csv(ctx.file("frames", ".csv"),
                {"t1", "discrepancy", "lab_norm", "reduced_norm"});
  csv.row({c.t1, r.discrepancy, r.lab_norm, r.reduced_norm});
  ctx.check("frame_discrepancy", r.discrepancy, "<=", c.tol.frame_equivalence);
  return ctx.finish({{"discrepancy", r.discrepancy},
                     {"lab_norm", r.lab_norm},
                     {"reduced_norm", r.reduced_norm}},
                    &params);
}

WaveFunction initial_state(const RunConfig& c, const Grid& grid) {
  if (c.state == "ground") {
    return hermite_state_on_grid(build_hermite_basis(grid, 1, false, c.tol), 0)
        .normalized();
  }
  if (c.state == "random") {
    const HermiteBasis basis = build_hermite_basis(grid, 8, false, c.tol);
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> normal;
    Eigen::VectorXcd coefficients(8);
    for (auto& z : coefficients) z = {normal(rng), normal(rng)};
    return to_grid(WaveFunction::in_hermite(coefficients).normalized(), basis);
  }
  int k = 0;
  try {
    k = std::stoi(c.state.substr(8));
  } catch (const std::exception&) {
    throw ConfigError("bad state '" + c.state + "'");
  }
  if (k < 0) throw ConfigError("bad state '" + c.state + "'");
  const HermiteBasis basis = build_hermite_basis(grid, k + 1, false, c.tol);
  return hermite_state_on_grid(basis, k).normalized();
}

json truncation_json(const PeriodSeries& s) {
  return s.truncated_at ? json(*s.truncated_at) : json(nullptr);
}

RunOutcome run_dynamics(const RunConfig& input) {
  RunContext ctx(input);
  const RunConfig& c = ctx.config();
  const SimParams params = make_sim_params(c);
  const WaveFunction psi = initial_state(c, params.grid());
  const PeriodSeries survival = survival_probability(psi, params, c.n_periods, c.tol);
  const PeriodSeries energy = energy_growth(psi, params, c.n_periods, c.tol);

  CsvWriter csv(ctx.file("series", ".csv"), {"period", "survival", "energy"});
  for (int m = 0; m <= c.n_periods; ++m) {
    csv.row({static_cast<double>(m), survival.values[m], energy.values[m]});
  }
  json results{{"label", kProxyLabel},
               {"survival_truncated_at", truncation_json(survival)},
               {"energy_truncated_at", truncation_json(energy)}};
  const int usable = energy.truncated_at ? *energy.truncated_at - 1 : c.n_periods;
  if (usable >= 2 && c.eps != 0.0) {
    const double exponent = fit_growth_exponent(energy, 1, c.n_periods);
    results["growth_exponent"] = exponent;
    results["growth_fit_periods"] = {1, usable};
    // e_m = ½(2πεm)² exactly only from the ground state; other states carry
    // an offset and a linear cross term that bias short fits.
    if (c.mu == 0.0 && c.state == "ground") {
      ctx.check("growth_exponent_deviation", std::abs(exponent - 2.0), "<=", 0.05);
    }
  }
  return ctx.finish(results, &params);
}

RunOutcome run_sweep(const RunConfig& input) {
  RunContext ctx(input);
  const RunConfig& c = ctx.config();
  const bool mourre = c.target == Command::kMourre;
  std::vector<std::string> header{to_string(c.axis)};
  if (mourre) {
    header.insert(header.end(), {"min_eigenvalue", "t_at_minimum",
                                 "analytic_lower_bound", "slack",
                                 "double_commutator_norm", "analytic_double_bound",
                                 "threshold_satisfied"});
  } else {
    header.insert(header.end(), {"max_gap", "mean_gap", "median_participation",
                                 "unitarity_defect", "propagation_defect"});
  }
  CsvWriter csv(ctx.file("sweep", ".csv"), header);

  json points = json::array();
  int worst = kExitOk;
  for (double value : c.values) {
    // Start from the unresolved input so auto-sized grids follow the axis.
    RunConfig point = input;
    point.command = c.target;
    point.values.clear();
    point.output_dir = (output_directory(input) / "points").string();
    switch (c.axis) {
      case SweepAxis::kEps:
        point.eps = value;
        break;
      case SweepAxis::kMu:
        point.mu = value;
        break;
      case SweepAxis::kNBasis:
        if (value < 1 || value != std::floor(value)) {
          throw ConfigError("n_basis sweep values must be positive integers");
        }
        point.n_basis = static_cast<int>(value);
        break;
      case SweepAxis::kDt: {
        const double steps = std::round(kTwoPi / value);
        if (!(value > 0.0) || std::abs(kTwoPi / steps - value) > 1e-9 * value) {
          throw ConfigError("dt sweep values must divide 2π");
        }
        point.steps_per_period = static_cast<int>(steps);
        break;
      }
    }
    const RunOutcome r = run(point);
    worst = std::max(worst, r.exit_code);
    const json& res = r.results;
    std::vector<double> row{value};
    if (mourre) {
      for (const char* key : {"min_eigenvalue_over_t", "t_at_minimum",
                              "analytic_lower_bound", "slack",
                              "double_commutator_norm", "analytic_double_bound"}) {
        row.push_back(res.at(key).get<double>());
      }
      row.push_back(res.at("threshold_satisfied").get<bool>() ? 1.0 : 0.0);
    } else {
      for (const char* key : {"max_gap", "mean_gap", "median_participation",
                              "unitarity_defect", "propagation_defect"}) {
        row.push_back(res.at(key).get<double>());
      }
    }
    csv.row(row);
    points.push_back({{"value", value},
                      {"config_hash", r.hash},
                      {"exit_code", r.exit_code}});
  }
  RunOutcome out = ctx.finish({{"axis", to_string(c.axis)},
                               {"target", to_string(c.target)},
                               {"points", points}},
                              nullptr);
  out.exit_code = std::max(out.exit_code, worst);
  return out;
}

}  // namespace

fs::path output_directory(const RunConfig& config) {
  fs::path dir(config.output_dir);
  if (dir.is_relative()) {
    if (const char* root = std::getenv(kOutputRootEnv); root && *root) {
      dir = fs::path(root) / dir;
    }
  }
  return fs::absolute(dir);
}

RunOutcome run(const RunConfig& config) {
  validate(config);
  switch (config.command) {
    case Command::kFloquet:
      return run_floquet(config);
    case Command::kMourre:
      return run_mourre(config);
    case Command::kClassical:
      return run_classical(config);
    case Command::kVerifyChain:
      return run_verify_chain(config);
    case Command::kDynamics:
      return run_dynamics(config);
    case Command::kSweep:
      return run_sweep(config);
  }
  throw ConfigError("unknown command");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->kind()) {
      case ErrorKind::kPrecondition:
        return kExitPrecondition;
      case ErrorKind::kResolution:
        return kExitResolution;
      case ErrorKind::kInvariant:
        return kExitInvariant;
    }
  }
  return kExitFailure;
}

}  // namespace floquet::cli
