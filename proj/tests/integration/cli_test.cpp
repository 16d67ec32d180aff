#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "floquet_cli/config.hpp"
#include "floquet_cli/run.hpp"

namespace floquet::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

nlohmann::json manifest_of(const RunOutcome& r) {
  return nlohmann::json::parse(slurp(r.manifest));
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "floquet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

fs::path scratch(const std::string& name) {
  const fs::path dir = output_directory(RunConfig{.output_dir = name});
  fs::remove_all(dir);
  return dir;
}

RunConfig small_mourre(const std::string& dir) {
  return {.command = Command::kMourre,
          .eps = 0.5,
          .mu = 0.2,
          .potential = "cosine",
          .n_basis = 32,
          .n_t = 16,
          .output_dir = dir};
}

TEST(ConfigTest, JsonRoundTripIsLossless) {
  RunConfig c;
  c.command = Command::kSweep;
  c.eps = 0.1 + 0.2;
  c.mu = 1.0 / 3.0;
  c.potential = "modulated_cosine";
  c.values = {0.1, 0.2, 1e-17};
  c.axis = SweepAxis::kDt;
  c.target = Command::kFloquet;
  c.seed = 0xfeedfacecafebeefull;
  c.tol.mourre_slack = 0.0123;
  c.state = "hermite:3";
  const RunConfig back = from_json(nlohmann::json::parse(to_json(c).dump()));
  EXPECT_EQ(back, c);
  EXPECT_EQ(back.eps, 0.1 + 0.2);
  EXPECT_EQ(back.seed, c.seed);
}

TEST(ConfigTest, RejectsUnknownKeysAndBadTypes) {
  EXPECT_THROW(from_json({{"epsilon", 0.5}}), ConfigError);
  EXPECT_THROW(from_json({{"eps", "half"}}), ConfigError);
  EXPECT_THROW(from_json({{"command", "plot"}}), ConfigError);
  EXPECT_THROW(from_json({{"tolerances", {{"speed", 1.0}}}}), ConfigError);
  EXPECT_NO_THROW(from_json(nlohmann::json::object()));
}

TEST(ConfigTest, HashIgnoresPlumbingOnly) {
  RunConfig a;
  RunConfig b = a;
  b.output_dir = "elsewhere";
  b.threads = 7;
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
  b.eps = 0.51;
  EXPECT_NE(config_hash(a), config_hash(b));
  // The auto grid is part of the hash through resolution.
  RunConfig r = resolved(a);
  EXPECT_EQ(config_hash(a), config_hash(r));
}

TEST(ConfigTest, AutomaticGridHoldsTheBasisAndTheDrift) {
  RunConfig c{.eps = 0.5, .n_basis = 128};
  const RunConfig r = resolved(c);
  EXPECT_GE(r.x_max, required_half_width(128) + kTwoPi * 0.5);
  EXPECT_EQ(r.grid_points & (r.grid_points - 1), 0);
  EXPECT_GE(make_grid(r.grid_points, r.x_max).k_max(), r.x_max);
  const RunConfig fixed = resolved(RunConfig{.grid_points = 300, .x_max = 9.0});
  EXPECT_EQ(fixed.grid_points, 300);
  EXPECT_EQ(fixed.x_max, 9.0);
}

TEST(ConfigTest, OutputRootComesFromEnvironment) {
  const char* root = std::getenv(kOutputRootEnv);
  ASSERT_NE(root, nullptr) << "ctest sets " << kOutputRootEnv;
  const fs::path dir = output_directory(RunConfig{.output_dir = "x"});
  EXPECT_EQ(dir, fs::absolute(fs::path(root) / "x"));
  EXPECT_EQ(output_directory(RunConfig{.output_dir = "/tmp/abs"}), fs::path("/tmp/abs"));
}

TEST(RunTest, MourreManifestEchoesAnalyticBound) {
  scratch("mourre");
  const RunOutcome r = run(small_mourre("mourre"));
  EXPECT_EQ(r.exit_code, kExitOk);
  const auto m = manifest_of(r);
  EXPECT_DOUBLE_EQ(m["results"]["analytic_lower_bound"].get<double>(), 0.3);
  EXPECT_TRUE(m["threshold"]["satisfied"].get<bool>());
  EXPECT_DOUBLE_EQ(m["threshold"]["margin"].get<double>(), 0.3);
  EXPECT_EQ(m["config_hash"], r.hash);
  EXPECT_EQ(m["status"], "passed");
  EXPECT_EQ(m["config"]["x_max"].get<double>(), resolved(small_mourre("")).x_max);
  for (const auto& f : r.files) {
    EXPECT_NE(f.filename().string().find(r.hash), std::string::npos);
  }
  EXPECT_NE(r.manifest.filename().string().find(r.hash), std::string::npos);
}

TEST(RunTest, CsvHasHeaderAndFullPrecision) {
  scratch("csv");
  const RunOutcome r = run(small_mourre("csv"));
  std::istringstream in(slurp(r.files.at(0)));
  std::string header, first, second;
  std::getline(in, header);
  std::getline(in, first);
  std::getline(in, second);
  EXPECT_EQ(header, "t,min_eigenvalue,double_commutator_norm");
  // t = 2π/16 needs all 17 significant digits to read back exactly.
  EXPECT_EQ(second.substr(0, second.find(',')), "0.39269908169872414");
}

TEST(RunTest, RerunsAreBitIdentical) {
  scratch("rerun_a");
  scratch("rerun_b");
  RunConfig c{.command = Command::kFloquet,
              .eps = 0.4,
              .mu = 0.2,
              .potential = "cosine",
              .n_basis = 16,
              .steps_per_period = 256,
              .output_dir = "rerun_a",
              .threads = 1};
  const RunOutcome a = run(c);
  c.output_dir = "rerun_b";
  c.threads = 3;
  const RunOutcome b = run(c);
  ASSERT_EQ(a.files.size(), b.files.size());
  EXPECT_EQ(a.hash, b.hash);
  for (std::size_t i = 0; i < a.files.size(); ++i) {
    EXPECT_EQ(slurp(a.files[i]), slurp(b.files[i]));
  }
}

TEST(RunTest, VerifyChainPassesAtDefaultTolerance) {
  scratch("chain");
  const RunOutcome r = run({.command = Command::kVerifyChain,
                            .eps = 0.4,
                            .mu = 0.1,
                            .potential = "cosine",
                            .n_basis = 32,
                            .steps_per_period = 4096,
                            .t1 = 3.14159,
                            .output_dir = "chain"});
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_LT(r.results["discrepancy"].get<double>(), 1e-5);
}

TEST(RunTest, SweepOverMuCrossesZero) {
  scratch("sweep");
  RunConfig c = small_mourre("sweep");
  c.command = Command::kSweep;
  c.axis = SweepAxis::kMu;
  c.values = {0.0, 0.2, 0.4, 0.6};
  const RunOutcome r = run(c);
  EXPECT_EQ(r.exit_code, kExitOk);
  std::istringstream in(slurp(r.files.at(0)));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, line.find(',')), "mu");
  std::vector<double> minima;
  while (std::getline(in, line)) {
    const auto first = line.find(',');
    minima.push_back(std::stod(line.substr(first + 1, line.find(',', first + 1))));
  }
  ASSERT_EQ(minima.size(), 4u);
  EXPECT_GT(minima[2], 0.0);
  EXPECT_LT(minima[3], 0.0);
  EXPECT_EQ(manifest_of(r)["results"]["points"].size(), 4u);
}

TEST(RunTest, ClassicalAndDynamicsChecks) {
  scratch("classical");
  const RunOutcome cl = run({.command = Command::kClassical,
                             .eps = 0.5,
                             .n_periods = 20,
                             .output_dir = "classical"});
  EXPECT_EQ(cl.exit_code, kExitOk);
  ASSERT_EQ(cl.checks.size(), 1u);
  EXPECT_EQ(cl.checks[0].name, "envelope_slope_relative_error");

  const RunOutcome dyn = run({.command = Command::kDynamics,
                              .eps = 0.5,
                              .n_basis = 64,
                              .steps_per_period = 512,
                              .n_periods = 3,
                              .state = "random",
                              .output_dir = "classical"});
  EXPECT_EQ(dyn.exit_code, kExitOk);
  EXPECT_EQ(manifest_of(dyn)["results"]["label"], "proxy");
}

TEST(CliTest, ExitCodes) {
  scratch("codes");
  EXPECT_EQ(cli({"mourre", "--no-such-flag"}), kExitConfig);
  EXPECT_EQ(cli({"sweep", "--output-dir", "codes"}), kExitConfig);
  EXPECT_EQ(cli({"mourre", "--potential", "quartic", "--output-dir", "codes"}),
            kExitConfig);
  EXPECT_EQ(cli({"mourre", "--n-basis", "64", "--grid-points", "32", "--x-max",
                 "30", "--output-dir", "codes"}),
            kExitPrecondition);
  EXPECT_EQ(cli({"floquet", "--eps", "2", "--n-basis", "16", "--grid-points", "256",
                 "--x-max", "12", "--steps", "256", "--output-dir", "codes"}),
            kExitResolution);
  EXPECT_EQ(cli({"verify-chain", "--eps", "0.4", "--n-basis", "16", "--steps", "256",
                 "--tol-frame-equivalence", "1e-14", "--output-dir", "codes"}),
            kExitInvariant);
  EXPECT_EQ(cli({"mourre", "--eps", "0.5", "--mu", "0.2", "--potential", "cosine",
                 "--n-basis", "32", "--n-t", "8", "--output-dir", "codes"}),
            kExitOk);
}

TEST(CliTest, ConfigFileWithFlagOverrides) {
  const fs::path dir = scratch("from_file");
  fs::create_directories(dir);
  RunConfig c = small_mourre("from_file");
  const fs::path path = dir / "config.json";
  std::ofstream(path) << to_json(c).dump(2);
  EXPECT_EQ(cli({"run", "--config", path.string()}), kExitOk);
  EXPECT_TRUE(fs::exists(dir / ("manifest-" + config_hash(c) + ".json")));

  EXPECT_EQ(cli({"mourre", "--config", path.string(), "--mu", "0.1"}), kExitOk);
  c.mu = 0.1;
  EXPECT_TRUE(fs::exists(dir / ("manifest-" + config_hash(c) + ".json")));

  std::ofstream(dir / "broken.json") << "{\"eps\": ";
  EXPECT_EQ(cli({"run", "--config", (dir / "broken.json").string()}), kExitConfig);
}

}  // namespace
}  // namespace floquet::cli
