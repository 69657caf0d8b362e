// SPDX-License-Identifier: Apache-2.0

#include "pinch/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "json.hpp"

namespace pinch {

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kNone:
      return "none";
    case SweepAxis::kTxPower:
      return "pt";
    case SweepAxis::kMinRate:
      return "rmin";
    case SweepAxis::kAntennas:
      return "m";
    case SweepAxis::kWaveguides:
      return "k";
  }
  return "unknown";
}

SweepAxis parse_sweep_axis(std::string_view name) {
  for (SweepAxis a : {SweepAxis::kNone, SweepAxis::kTxPower, SweepAxis::kMinRate,
                      SweepAxis::kAntennas, SweepAxis::kWaveguides}) {
    if (to_string(a) == name) return a;
  }
  throw InvalidConfig(fmt::format("unknown sweep axis: {}", name));
}

ScenarioConfig apply_sweep(const ScenarioConfig& base, SweepAxis axis, double value) {
  ScenarioConfig cfg = base;
  auto as_count = [&](std::string_view what) {
    if (value != std::floor(value) || value < 1) {
      throw InvalidConfig(fmt::format("{} sweep needs positive integers, got {}", what, value));
    }
    return static_cast<int>(value);
  };
  switch (axis) {
    case SweepAxis::kNone:
      break;
    case SweepAxis::kTxPower:
      cfg.tx_power_dbm = value;
      break;
    case SweepAxis::kMinRate:
      cfg.min_rate = value;
      break;
    case SweepAxis::kAntennas:
      cfg.num_antennas = as_count("M");
      break;
    case SweepAxis::kWaveguides:
      cfg.num_waveguides = as_count("K");
      cfg.waveguide_y.reset();
      break;
  }
  return cfg;
}

void validate(const ExperimentPlan& plan) {
  if (plan.trials < 1) throw InvalidConfig("trial count must be at least 1");
  if (plan.schemes.empty()) throw InvalidConfig("no schemes selected");
  if (plan.threads < 1) throw InvalidConfig("thread count must be at least 1");
  if (plan.axis != SweepAxis::kNone) {
    if (plan.values.empty()) throw InvalidConfig("sweep has no values");
    for (std::size_t i = 1; i < plan.values.size(); ++i) {
      if (!(plan.values[i] > plan.values[i - 1])) {
        throw InvalidConfig("sweep values must be strictly increasing");
      }
    }
  }
  for (double v : plan.axis == SweepAxis::kNone ? std::vector<double>{0.0} : plan.values) {
    pinch::validate(apply_sweep(plan.base, plan.axis, v));
  }
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

ScenarioConfig single_waveguide_config(const ScenarioConfig& cfg) {
  ScenarioConfig single = cfg;
  single.num_waveguides = 1;
  single.waveguide_y = std::vector<double>{0.0};
  return single;
}

struct CgRun {
  GameState state;
  double ms = 0.0;
};

CgRun run_game(const Drop& drop, const DerivedConstants& consts) {
  const auto start = Clock::now();
  const CoalitionGame game(drop, consts);
  CgRun out{game.run(game.initialize()), 0.0};
  out.ms = elapsed_ms(start);
  return out;
}

}  // namespace

std::vector<TrialRecord> run_trial(const ScenarioConfig& config, const ExperimentPlan& plan,
                                   int trial, double sweep_value,
                                   std::vector<MoveRecord>* move_log) {
  std::mt19937_64 rng(mix_seed(plan.seed, static_cast<std::uint64_t>(trial)));
  const Drop drop = sample_drop(config, rng);
  const DerivedConstants consts = build_derived(config);
  const double r_min = config.min_rate;

  std::optional<CgRun> game;
  auto cg = [&]() -> const CgRun& {
    if (!game) game = run_game(drop, consts);
    return *game;
  };

  std::vector<TrialRecord> records;
  for (SchemeId scheme : plan.schemes) {
    TrialRecord rec;
    rec.trial = trial;
    rec.scheme = scheme;
    rec.axis = plan.axis;
    rec.sweep_value = sweep_value;
    rec.n_users = config.num_users;
    const auto start = Clock::now();
    double extra_ms = 0.0;
    try {
      RateReport report;
      switch (scheme) {
        case SchemeId::kNomaCgSca: {
          const CgRun& g = cg();
          const PowerOutcome po = allocate_power(g.state, consts, r_min, plan.pa, plan.power);
          report = po.report;
          rec.cg_cycles = g.state.cycle_count;
          rec.pa_iterations = po.iterations;
          extra_ms = g.ms;
          break;
        }
        case SchemeId::kNomaCg: {
          const CgRun& g = cg();
          report = equal_split_rates(g.state, consts, r_min);
          rec.cg_cycles = g.state.cycle_count;
          extra_ms = g.ms;
          if (move_log) *move_log = g.state.move_log;
          break;
        }
        case SchemeId::kNomaFixed:
          report = noma_fixed(drop, consts, r_min);
          break;
        case SchemeId::kOmaPinching:
          report = oma_pinching(drop, consts, r_min);
          break;
        case SchemeId::kConventionalFixed:
          report = conventional_fixed(drop, consts, r_min);
          break;
        case SchemeId::kSingleWaveguide: {
          const ScenarioConfig single = single_waveguide_config(config);
          const Drop single_drop = make_drop(single, drop.users);
          const CgRun g = run_game(single_drop, consts);
          const PowerOutcome po = allocate_power(g.state, consts, r_min, plan.pa, plan.power);
          report = po.report;
          rec.cg_cycles = g.state.cycle_count;
          rec.pa_iterations = po.iterations;
          break;
        }
      }
      rec.sum_rate = report.total;
      rec.outage_users = report.outage_count();
    } catch (const std::exception& e) {
      rec.sum_rate = std::numeric_limits<double>::quiet_NaN();
      rec.outage_users = rec.n_users;
      fmt::print(stderr, "warning: {} failed on trial {} ({} = {}): {}\n", to_string(scheme),
                 trial, to_string(plan.axis), sweep_value, e.what());
    }
    // Coalition-game time is charged to every scheme that reuses its result.
    rec.wall_ms = plan.record_timing ? elapsed_ms(start) + extra_ms : 0.0;
    records.push_back(rec);
  }
  return records;
}

ExperimentResult run_experiment(const ExperimentPlan& plan) {
  validate(plan);
  const std::vector<double> values =
      plan.axis == SweepAxis::kNone ? std::vector<double>{0.0} : plan.values;
  std::vector<ScenarioConfig> configs;
  for (double v : values) configs.push_back(apply_sweep(plan.base, plan.axis, v));

  const std::size_t task_count = values.size() * static_cast<std::size_t>(plan.trials);
  std::vector<std::vector<TrialRecord>> slots(task_count);
  std::vector<std::vector<MoveRecord>> logs(plan.keep_move_logs ? task_count : 0);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t task = next++; task < task_count; task = next++) {
      const std::size_t vi = task / plan.trials;
      const int trial = static_cast<int>(task % plan.trials);
      slots[task] = run_trial(configs[vi], plan, trial, values[vi],
                              plan.keep_move_logs ? &logs[task] : nullptr);
    }
  };
  const int thread_count =
      static_cast<int>(std::min<std::size_t>(plan.threads, std::max<std::size_t>(task_count, 1)));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
  }

  ExperimentResult result;
  for (std::size_t task = 0; task < task_count; ++task) {
    for (const auto& rec : slots[task]) {
      if (std::isnan(rec.sum_rate)) ++result.failures;
      result.records.push_back(rec);
    }
    if (plan.keep_move_logs) {
      result.move_logs.push_back({static_cast<int>(task % plan.trials),
                                  values[task / plan.trials], std::move(logs[task])});
    }
  }
  return result;
}

void write_csv(std::ostream& out, std::span<const TrialRecord> records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{}\n", r.trial, to_string(r.scheme),
               to_string(r.axis), r.sweep_value, r.sum_rate, r.outage_users, r.n_users,
               r.cg_cycles, r.pa_iterations, r.wall_ms);
  }
}

void write_move_logs(std::ostream& out, std::span<const MoveLogEntry> logs) {
  for (const auto& entry : logs) {
    for (const auto& mv : entry.moves) {
      nlohmann::json j = {{"trial", entry.trial},
                          {"sweep_value", entry.sweep_value},
                          {"cycle", mv.cycle},
                          {"move", to_string(mv.type)},
                          {"user", mv.user},
                          {"waveguide", mv.waveguide},
                          {"antenna", mv.antenna},
                          {"value", mv.value_after},
                          {"delta", mv.delta()}};
      out << j.dump() << '\n';
    }
  }
}

std::vector<SummaryRow> aggregate(std::span<const TrialRecord> records) {
  if (records.empty()) throw std::invalid_argument("cannot aggregate an empty record set");
  struct Acc {
    int trials = 0;
    double rate = 0.0;
    long outage = 0;
    long users = 0;
  };
  std::vector<std::pair<SchemeId, double>> keys;
  std::map<std::pair<int, double>, Acc> acc;
  for (const auto& r : records) {
    if (std::isnan(r.sum_rate)) continue;
    const auto key = std::make_pair(static_cast<int>(r.scheme), r.sweep_value);
    auto [it, inserted] = acc.try_emplace(key);
    if (inserted) keys.emplace_back(r.scheme, r.sweep_value);
    ++it->second.trials;
    it->second.rate += r.sum_rate;
    it->second.outage += r.outage_users;
    it->second.users += r.n_users;
  }
  std::vector<SummaryRow> rows;
  for (const auto& [scheme, value] : keys) {
    const Acc& a = acc.at({static_cast<int>(scheme), value});
    rows.push_back({scheme, value, a.trials, a.rate / a.trials,
                    static_cast<double>(a.outage) / static_cast<double>(a.users)});
  }
  return rows;
}

std::optional<SummaryRow> find_summary(std::span<const SummaryRow> rows, SchemeId scheme,
                                       double sweep_value) {
  for (const auto& r : rows) {
    if (r.scheme == scheme && r.sweep_value == sweep_value) return r;
  }
  return std::nullopt;
}

}  // namespace pinch
