// SPDX-License-Identifier: Apache-2.0

#include "pinch/harness.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"

namespace pinch {
namespace {

TrialRecord record(SchemeId scheme, double value, double rate, int outage, int n) {
  TrialRecord r;
  r.scheme = scheme;
  r.sweep_value = value;
  r.sum_rate = rate;
  r.outage_users = outage;
  r.n_users = n;
  return r;
}

ExperimentPlan small_plan() {
  ExperimentPlan plan;
  plan.base.num_users = 4;
  plan.base.num_antennas = 8;
  plan.axis = SweepAxis::kTxPower;
  plan.values = {0.0, 10.0};
  plan.trials = 3;
  plan.seed = 99;
  plan.record_timing = false;
  return plan;
}

TEST(SweepAxis, NamesRoundTrip) {
  for (auto axis : {SweepAxis::kNone, SweepAxis::kTxPower, SweepAxis::kMinRate,
                    SweepAxis::kAntennas, SweepAxis::kWaveguides}) {
    EXPECT_EQ(parse_sweep_axis(to_string(axis)), axis);
  }
  EXPECT_EQ(to_string(SweepAxis::kTxPower), "pt");
  EXPECT_THROW(parse_sweep_axis("power"), InvalidConfig);
}

TEST(ApplySweep, SetsOneField) {
  ScenarioConfig base;
  base.waveguide_y = std::vector<double>{-1.0, 1.0};
  EXPECT_EQ(apply_sweep(base, SweepAxis::kTxPower, 20.0).tx_power_dbm, 20.0);
  EXPECT_EQ(apply_sweep(base, SweepAxis::kMinRate, 0.3).min_rate, 0.3);
  EXPECT_EQ(apply_sweep(base, SweepAxis::kAntennas, 12.0).num_antennas, 12);
  const ScenarioConfig k3 = apply_sweep(base, SweepAxis::kWaveguides, 3.0);
  EXPECT_EQ(k3.num_waveguides, 3);
  EXPECT_FALSE(k3.waveguide_y.has_value());
  EXPECT_THROW(apply_sweep(base, SweepAxis::kAntennas, 2.5), InvalidConfig);
  EXPECT_THROW(apply_sweep(base, SweepAxis::kWaveguides, 0.0), InvalidConfig);
}

TEST(ValidatePlan, RejectsMalformedPlans) {
  ExperimentPlan plan = small_plan();
  EXPECT_NO_THROW(validate(plan));
  plan.values = {10.0, 10.0};
  EXPECT_THROW(validate(plan), InvalidConfig);
  plan = small_plan();
  plan.trials = 0;
  EXPECT_THROW(validate(plan), InvalidConfig);
  plan = small_plan();
  plan.schemes.clear();
  EXPECT_THROW(validate(plan), InvalidConfig);
  plan = small_plan();
  plan.axis = SweepAxis::kAntennas;
  plan.values = {1.0, 4.0};  // M = 1 is not a valid deployment
  EXPECT_THROW(validate(plan), InvalidConfig);
}

TEST(Aggregate, MeansAndOutage) {
  const std::vector<TrialRecord> recs{record(SchemeId::kNomaCg, 10, 2.0, 1, 8),
                                      record(SchemeId::kNomaCg, 10, 4.0, 2, 8),
                                      record(SchemeId::kOmaPinching, 10, 1.5, 0, 8)};
  const auto rows = aggregate(recs);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].scheme, SchemeId::kNomaCg);
  EXPECT_EQ(rows[0].trials, 2);
  EXPECT_DOUBLE_EQ(rows[0].mean_sum_rate, 3.0);
  EXPECT_DOUBLE_EQ(rows[0].outage_probability, 3.0 / 16.0);
  const auto oma = find_summary(rows, SchemeId::kOmaPinching, 10);
  ASSERT_TRUE(oma.has_value());
  EXPECT_DOUBLE_EQ(oma->mean_sum_rate, 1.5);
  EXPECT_FALSE(find_summary(rows, SchemeId::kOmaPinching, 20).has_value());
}

TEST(Aggregate, SkipsFailedRowsAndRejectsEmpty) {
  const std::vector<TrialRecord> recs{
      record(SchemeId::kNomaCg, 0, std::numeric_limits<double>::quiet_NaN(), 4, 4),
      record(SchemeId::kNomaCg, 0, 5.0, 1, 4)};
  const auto rows = aggregate(recs);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].trials, 1);
  EXPECT_DOUBLE_EQ(rows[0].mean_sum_rate, 5.0);
  EXPECT_DOUBLE_EQ(rows[0].outage_probability, 0.25);
  EXPECT_THROW(aggregate(std::vector<TrialRecord>{}), std::invalid_argument);
}

TEST(WriteCsv, HeaderAndRow) {
  TrialRecord r = record(SchemeId::kNomaCgSca, 20, 12.5, 1, 8);
  r.trial = 4;
  r.axis = SweepAxis::kTxPower;
  r.cg_cycles = 3;
  r.pa_iterations = 17;
  std::ostringstream out;
  write_csv(out, std::vector<TrialRecord>{r});
  EXPECT_EQ(out.str(), std::string(kCsvHeader) + "\n4,noma_cg_sca,pt,20,12.5,1,8,3,17,0\n");
}

TEST(RunExperiment, ByteIdenticalAcrossThreadCounts) {
  ExperimentPlan plan = small_plan();
  std::ostringstream one;
  write_csv(one, run_experiment(plan).records);
  plan.threads = 4;
  std::ostringstream four;
  write_csv(four, run_experiment(plan).records);
  EXPECT_EQ(one.str(), four.str());
}

TEST(RunExperiment, RecordsInSweepTrialSchemeOrder) {
  const ExperimentPlan plan = small_plan();
  const ExperimentResult res = run_experiment(plan);
  EXPECT_EQ(res.failures, 0);
  const std::size_t per_trial = plan.schemes.size();
  ASSERT_EQ(res.records.size(), plan.values.size() * plan.trials * per_trial);
  for (std::size_t i = 0; i < res.records.size(); ++i) {
    const auto& r = res.records[i];
    EXPECT_EQ(r.sweep_value, plan.values[i / (plan.trials * per_trial)]);
    EXPECT_EQ(r.trial, static_cast<int>(i / per_trial % plan.trials));
    EXPECT_EQ(r.scheme, plan.schemes[i % per_trial]);
    EXPECT_EQ(r.n_users, plan.base.num_users);
    EXPECT_GE(r.sum_rate, 0.0);
    EXPECT_EQ(r.wall_ms, 0.0);
  }
}

TEST(RunTrial, CoalitionGameIgnoresRateTarget) {
  ExperimentPlan plan = small_plan();
  plan.schemes = {SchemeId::kNomaCg, SchemeId::kNomaFixed};
  ScenarioConfig low = plan.base;
  low.min_rate = 0.0;
  ScenarioConfig high = plan.base;
  high.min_rate = 2.0;
  for (int trial = 0; trial < 3; ++trial) {
    const auto a = run_trial(low, plan, trial, 0.0);
    const auto b = run_trial(high, plan, trial, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].sum_rate, b[i].sum_rate);
      EXPECT_EQ(a[i].cg_cycles, b[i].cg_cycles);
      EXPECT_LE(a[i].outage_users, b[i].outage_users);
    }
  }
}

TEST(RunTrial, DropDependsOnlyOnSeedAndTrial) {
  ExperimentPlan plan = small_plan();
  plan.schemes = {SchemeId::kOmaPinching};
  const ScenarioConfig cfg = plan.base;
  const auto a = run_trial(cfg, plan, 1, 0.0);
  const auto b = run_trial(cfg, plan, 1, 10.0);
  EXPECT_EQ(a[0].sum_rate, b[0].sum_rate);
  const auto c = run_trial(cfg, plan, 2, 0.0);
  EXPECT_NE(a[0].sum_rate, c[0].sum_rate);
}

TEST(RunExperiment, MoveLogsCarryTrialAndSweepValue) {
  ExperimentPlan plan = small_plan();
  plan.schemes = {SchemeId::kNomaCg};
  plan.keep_move_logs = true;
  const ExperimentResult res = run_experiment(plan);
  ASSERT_EQ(res.move_logs.size(), plan.values.size() * plan.trials);
  std::ostringstream out;
  write_move_logs(out, res.move_logs);
  std::istringstream in(out.str());
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("trial"));
    EXPECT_TRUE(j.contains("sweep_value"));
    EXPECT_GT(j["delta"].get<double>(), 0.0);
    ++lines;
  }
  std::size_t moves = 0;
  for (const auto& e : res.move_logs) moves += e.moves.size();
  EXPECT_EQ(lines, moves);
}

}  // namespace
}  // namespace pinch
