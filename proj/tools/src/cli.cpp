#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "floquet_cli/output.hpp"
#include "floquet_cli/run.hpp"

namespace floquet::cli {
namespace {

// Flags are parsed into a scratch RunConfig; only the ones actually given
// on the command line are copied over the defaults or the --config file.
class FlagSet {
 public:
  template <typename T>
  void add(CLI::App* app, const std::string& name, T RunConfig::*member,
           const std::string& help) {
    CLI::Option* opt = app->add_option(name, scratch_.*member, help);
    apply_.push_back([opt, member, this](RunConfig& c) {
      if (opt->count() > 0) c.*member = scratch_.*member;
    });
  }

  void add_tolerance(CLI::App* app, const std::string& name,
                     double Tolerances::*member, const std::string& help) {
    CLI::Option* opt = app->add_option(name, scratch_.tol.*member, help);
    apply_.push_back([opt, member, this](RunConfig& c) {
      if (opt->count() > 0) c.tol.*member = scratch_.tol.*member;
    });
  }

  void add_enum(CLI::App* app, const std::string& name,
                std::function<void(RunConfig&, const std::string&)> set,
                const std::string& help) {
    auto value = std::make_shared<std::string>();
    CLI::Option* opt = app->add_option(name, *value, help);
    apply_.push_back([opt, value, set](RunConfig& c) {
      if (opt->count() > 0) set(c, *value);
    });
  }

  void apply(RunConfig& c) const {
    for (const auto& f : apply_) f(c);
  }

 private:
  RunConfig scratch_;
  std::vector<std::function<void(RunConfig&)>> apply_;
};

void add_common(CLI::App* app, FlagSet& flags, std::string& config_path) {
  app->add_option("--config", config_path, "JSON run configuration")
      ->check(CLI::ExistingFile);
  flags.add(app, "--eps", &RunConfig::eps, "forcing strength ε");
  flags.add(app, "--mu", &RunConfig::mu, "perturbation strength μ");
  flags.add(app, "--potential", &RunConfig::potential,
            "zero | cosine | smooth_linear | modulated_cosine");
  flags.add(app, "--n-basis", &RunConfig::n_basis, "Hermite basis size");
  flags.add(app, "--steps", &RunConfig::steps_per_period, "time steps per period");
  flags.add(app, "--grid-points", &RunConfig::grid_points, "grid size (0 = automatic)");
  flags.add(app, "--x-max", &RunConfig::x_max, "grid half-width (0 = automatic)");
  flags.add(app, "--t0", &RunConfig::t0, "initial time");
  flags.add(app, "--output-dir", &RunConfig::output_dir, "directory for results");
  flags.add(app, "--seed", &RunConfig::seed, "seed for random initial states");
  flags.add(app, "--threads", &RunConfig::threads, "worker threads (0 = all cores)");
  flags.add_tolerance(app, "--tol-orthonormality", &Tolerances::orthonormality, "");
  flags.add_tolerance(app, "--tol-hermiticity", &Tolerances::hermiticity, "");
  flags.add_tolerance(app, "--tol-propagation", &Tolerances::propagation, "");
  flags.add_tolerance(app, "--tol-normalization", &Tolerances::normalization, "");
  flags.add_tolerance(app, "--tol-polar-threshold", &Tolerances::polar_threshold, "");
  flags.add_tolerance(app, "--tol-unitarity-abort", &Tolerances::unitarity_abort, "");
  flags.add_tolerance(app, "--tol-frame-equivalence", &Tolerances::frame_equivalence, "");
  flags.add_tolerance(app, "--tol-mourre-slack", &Tolerances::mourre_slack, "");
  flags.add_tolerance(app, "--tol-double-commutator-slack",
                      &Tolerances::double_commutator_slack, "");
  flags.add_tolerance(app, "--tol-boundary-fraction", &Tolerances::boundary_fraction, "");
}

void print_outcome(const RunOutcome& r, std::ostream& out) {
  out << "manifest " << r.manifest.string() << '\n';
  for (const auto& f : r.files) out << "wrote " << f.string() << '\n';
  for (const auto& c : r.checks) {
    out << "check " << c.name << " = " << format_double(c.value) << ' '
        << c.relation << ' ' << format_double(c.limit) << " : "
        << (c.passed ? "pass" : "FAIL") << '\n';
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Floquet spectra, Mourre estimates and dynamics of the resonantly "
               "forced harmonic oscillator"};
  app.require_subcommand(1);
  FlagSet flags;
  std::string config_path;

  CLI::App* run_cmd = app.add_subcommand("run", "run the command named in --config");
  run_cmd->add_option("--config", config_path, "JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);

  struct Sub {
    Command command;
    CLI::App* app;
  };
  std::vector<Sub> subs;
  const auto sub = [&](Command command, const std::string& help) {
    CLI::App* a = app.add_subcommand(to_string(command), help);
    add_common(a, flags, config_path);
    subs.push_back({command, a});
    return a;
  };

  sub(Command::kFloquet, "one-period propagator, eigenphases and spectrum statistics");
  CLI::App* mourre = sub(Command::kMourre, "commutator positivity margin");
  flags.add(mourre, "--n-t", &RunConfig::n_t, "t samples on [0, 2π)");
  CLI::App* classical = sub(Command::kClassical, "classical forced trajectory");
  flags.add(classical, "--periods", &RunConfig::n_periods, "number of periods");
  flags.add(classical, "--x0", &RunConfig::x0, "initial position");
  flags.add(classical, "--p0", &RunConfig::p0, "initial momentum");
  flags.add(classical, "--classical-steps", &RunConfig::classical_steps_per_period,
            "integrator steps per period (>= 100)");
  flags.add(classical, "--stride", &RunConfig::stride, "record every n-th step");
  CLI::App* chain = sub(Command::kVerifyChain, "lab frame vs reduced frame propagation");
  flags.add(chain, "--t1", &RunConfig::t1, "propagation time in (0, 2π]");
  CLI::App* dynamics = sub(Command::kDynamics, "survival probability and energy growth");
  flags.add(dynamics, "--periods", &RunConfig::n_periods, "number of periods");
  flags.add(dynamics, "--state", &RunConfig::state, "ground | hermite:<k> | random");
  CLI::App* sweep = sub(Command::kSweep, "repeat mourre or floquet along one axis");
  flags.add_enum(sweep, "--axis",
                 [](RunConfig& c, const std::string& s) { c.axis = parse_axis(s); },
                 "eps | mu | n_basis | dt");
  flags.add_enum(sweep, "--target",
                 [](RunConfig& c, const std::string& s) { c.target = parse_command(s); },
                 "mourre | floquet");
  flags.add(sweep, "--values", &RunConfig::values, "comma-separated axis values");
  sweep->get_option("--values")->delimiter(',');
  flags.add(sweep, "--n-t", &RunConfig::n_t, "t samples for mourre points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
    for (const auto& s : subs) {
      if (s.app->parsed()) config.command = s.command;
    }
    flags.apply(config);
    const RunOutcome outcome = run(config);
    print_outcome(outcome, std::cout);
    return outcome.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace floquet::cli
