// SPDX-License-Identifier: Apache-2.0
//
// pinchsim: run Monte Carlo sweeps or the built-in oracle checks.
//
//   pinchsim run --config fig3.json --sweep pt --values 0 5 10 15 20 25 30 \
//       --trials 200 --pa sca --out results.csv
//   pinchsim validate

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "pinch/config_io.hpp"
#include "pinch/harness.hpp"
#include "pinch/validation.hpp"

namespace {

struct RunArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string sweep = "none";
  std::vector<double> values;
  int trials = 1;
  std::vector<std::string> schemes;
  std::string pa = "sca";
  std::optional<std::uint64_t> seed;
  std::string out = "results.csv";
  std::string move_log;
  int threads = 1;
  bool no_timing = false;
  bool quiet = false;
};

pinch::ScenarioConfig load_scenario(const RunArgs& args) {
  pinch::ScenarioConfig cfg;
  if (!args.config_path.empty()) cfg = pinch::load_config(args.config_path);
  for (const auto& kv : args.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw pinch::InvalidConfig("override must look like KEY=VALUE: " + kv);
    }
    cfg = pinch::parse_config(fmt::format("{{\"{}\": {}}}", kv.substr(0, eq), kv.substr(eq + 1)),
                              cfg);
  }
  return cfg;
}

int run(const RunArgs& args) {
  pinch::ExperimentPlan plan;
  plan.base = load_scenario(args);
  plan.axis = pinch::parse_sweep_axis(args.sweep);
  plan.values = args.values;
  plan.trials = args.trials;
  if (!args.schemes.empty()) {
    plan.schemes.clear();
    for (const auto& s : args.schemes) plan.schemes.push_back(pinch::parse_scheme(s));
  }
  plan.pa = pinch::parse_pa_solver(args.pa);
  plan.seed = args.seed.value_or(plan.base.seed);
  plan.threads = args.threads;
  plan.record_timing = !args.no_timing;
  plan.keep_move_logs = !args.move_log.empty();

  const pinch::ExperimentResult result = pinch::run_experiment(plan);

  std::ofstream csv(args.out, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot open " + args.out);
  pinch::write_csv(csv, result.records);
  if (!csv) throw std::runtime_error("failed writing " + args.out);

  if (plan.keep_move_logs) {
    std::ofstream log(args.move_log, std::ios::binary);
    if (!log) throw std::runtime_error("cannot open " + args.move_log);
    pinch::write_move_logs(log, result.move_logs);
  }

  if (!args.quiet) {
    fmt::print("{:<20} {:>10} {:>12} {:>10}\n", "scheme", args.sweep, "sum_rate", "outage");
    for (const auto& row : pinch::aggregate(result.records)) {
      fmt::print("{:<20} {:>10} {:>12.4f} {:>10.4f}\n", pinch::to_string(row.scheme),
                 row.sweep_value, row.mean_sum_rate, row.outage_probability);
    }
    if (result.failures > 0) fmt::print("{} scheme runs failed\n", result.failures);
  }
  return 0;
}

int validate(std::uint64_t seed) {
  pinch::ValidationOptions opts;
  opts.seed = seed;
  bool ok = true;
  for (const auto& suite : pinch::run_validation(opts)) {
    fmt::print("{} {:<12} {:>4} instances  {}\n", suite.passed ? "PASS" : "FAIL", suite.name,
               suite.instances, suite.detail);
    ok = ok && suite.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NOMA multi-waveguide pinching-antenna simulator"};
  app.require_subcommand(1);

  RunArgs args;
  auto* run_cmd = app.add_subcommand("run", "Monte Carlo sweep to CSV");
  run_cmd->add_option("--config", args.config_path, "Scenario JSON file")->check(CLI::ExistingFile);
  run_cmd->add_option("--set", args.overrides, "Override a config key, e.g. --set K=3");
  run_cmd->add_option("--sweep", args.sweep, "Swept parameter")
      ->check(CLI::IsMember({"none", "pt", "rmin", "m", "k"}));
  run_cmd->add_option("--values", args.values, "Sweep values, strictly increasing");
  run_cmd->add_option("--trials", args.trials, "Drops per sweep value")->check(CLI::PositiveNumber);
  run_cmd->add_option("--schemes", args.schemes,
                      "Subset of noma_cg_sca noma_cg noma_fixed oma_pinching "
                      "conventional_fixed single_waveguide");
  run_cmd->add_option("--pa", args.pa, "Power allocation after the coalition game")
      ->check(CLI::IsMember({"mo", "sca", "none"}));
  run_cmd->add_option("--seed", args.seed, "Master seed (default: config seed)");
  run_cmd->add_option("--out", args.out, "CSV output path");
  run_cmd->add_option("--move-log", args.move_log, "Write coalition moves as JSON lines");
  run_cmd->add_option("--threads", args.threads, "Worker threads")->check(CLI::PositiveNumber);
  run_cmd->add_flag("--no-timing", args.no_timing, "Write wall_ms = 0 for reproducible bytes");
  run_cmd->add_flag("--quiet", args.quiet, "Skip the summary table");

  std::uint64_t validate_seed = 7;
  auto* validate_cmd = app.add_subcommand("validate", "Run the oracle self-checks");
  validate_cmd->add_option("--seed", validate_seed, "Seed for the random instances");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run_cmd) return run(args);
    return validate(validate_seed);
  } catch (const pinch::InvalidConfig& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
