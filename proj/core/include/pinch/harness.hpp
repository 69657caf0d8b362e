// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo experiment driver. Every trial draws one user placement, shared
// by all schemes and all sweep values of that trial, and each scheme yields one
// TrialRecord. Trials run on a thread pool; output order is fixed by
// (sweep value, trial, scheme) so results never depend on scheduling.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pinch/baselines.hpp"
#include "pinch/scenario.hpp"

namespace pinch {

enum class SweepAxis { kNone, kTxPower, kMinRate, kAntennas, kWaveguides };

// CSV names: none, pt, rmin, m, k.
std::string_view to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(std::string_view name);

// Copy of `base` with the swept field set to `value`.
ScenarioConfig apply_sweep(const ScenarioConfig& base, SweepAxis axis, double value);

struct ExperimentPlan {
  ScenarioConfig base;
  SweepAxis axis = SweepAxis::kNone;
  std::vector<double> values;  // strictly increasing; ignored for kNone
  int trials = 1;
  std::vector<SchemeId> schemes{all_schemes().begin(), all_schemes().end()};
  PaSolver pa = PaSolver::kSca;
  PowerOptions power;
  std::uint64_t seed = 1;
  int threads = 1;
  bool record_timing = true;  // false writes wall_ms = 0 for byte-stable output
  bool keep_move_logs = false;
};

// Throws InvalidConfig when the plan is malformed.
void validate(const ExperimentPlan& plan);

struct TrialRecord {
  int trial = 0;
  SchemeId scheme = SchemeId::kNomaCg;
  SweepAxis axis = SweepAxis::kNone;
  double sweep_value = 0.0;
  double sum_rate = 0.0;  // NaN when the scheme failed on this drop
  int outage_users = 0;
  int n_users = 0;
  int cg_cycles = 0;
  int pa_iterations = 0;
  double wall_ms = 0.0;
};

struct MoveLogEntry {
  int trial = 0;
  double sweep_value = 0.0;
  std::vector<MoveRecord> moves;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  std::vector<MoveLogEntry> move_logs;  // NomaCg runs, when requested
  int failures = 0;
};

// Per-scheme failures are recorded as NaN rows and reported on stderr.
ExperimentResult run_experiment(const ExperimentPlan& plan);

// Records of one drop. Exposed for tests and benchmarks.
std::vector<TrialRecord> run_trial(const ScenarioConfig& config, const ExperimentPlan& plan,
                                   int trial, double sweep_value,
                                   std::vector<MoveRecord>* move_log = nullptr);

inline constexpr std::string_view kCsvHeader =
    "trial,scheme,sweep_name,sweep_value,sum_rate,outage_users,n_users,cg_cycles,"
    "pa_iterations,wall_ms";

void write_csv(std::ostream& out, std::span<const TrialRecord> records);
void write_move_logs(std::ostream& out, std::span<const MoveLogEntry> logs);

struct SummaryRow {
  SchemeId scheme = SchemeId::kNomaCg;
  double sweep_value = 0.0;
  int trials = 0;
  double mean_sum_rate = 0.0;
  double outage_probability = 0.0;  // outage users / (trials * N)
};

// One row per (scheme, sweep value) in first-seen order; NaN rows are
// skipped. Throws std::invalid_argument on empty input.
std::vector<SummaryRow> aggregate(std::span<const TrialRecord> records);

// Lookup helper over aggregate() output.
std::optional<SummaryRow> find_summary(std::span<const SummaryRow> rows, SchemeId scheme,
                                       double sweep_value);

}  // namespace pinch
