// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <benchmark/benchmark.h>

#include "pinch/baselines.hpp"
#include "pinch/coalition.hpp"
#include "pinch/harness.hpp"
#include "pinch/power_mo.hpp"
#include "pinch/power_sca.hpp"

namespace pinch {
namespace {

ScenarioConfig bench_config(int users) {
  ScenarioConfig cfg;
  cfg.num_users = users;
  return cfg;
}

WaveguideProblem bench_problem(int n) {
  WaveguideProblem prob;
  for (int i = 0; i < n; ++i) prob.sic.push_back(0.5 / (1 << i));
  prob.min_sinr.assign(n, min_sinr_for(0.1));
  return prob;
}

void BM_EffectiveChannel(benchmark::State& state) {
  const ScenarioConfig cfg = bench_config(static_cast<int>(state.range(0)));
  const DerivedConstants consts = build_derived(cfg);
  std::mt19937_64 rng(1);
  const Drop drop = sample_drop(cfg, rng);
  const AntennaTerms terms(drop, consts);
  const ActivationMask mask = ActivationMask::all_active(cfg.num_waveguides, cfg.num_antennas);
  for (auto _ : state) benchmark::DoNotOptimize(effective_channel(terms, mask));
}
BENCHMARK(BM_EffectiveChannel)->Arg(4)->Arg(8)->Arg(16);

void BM_CoalitionGame(benchmark::State& state) {
  const ScenarioConfig cfg = bench_config(static_cast<int>(state.range(0)));
  const DerivedConstants consts = build_derived(cfg);
  std::mt19937_64 rng(2);
  const Drop drop = sample_drop(cfg, rng);
  const CoalitionGame game(drop, consts);
  for (auto _ : state) benchmark::DoNotOptimize(game.run(game.initialize()));
}
BENCHMARK(BM_CoalitionGame)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Polyblock(benchmark::State& state) {
  const WaveguideProblem prob = bench_problem(static_cast<int>(state.range(0)));
  PolyblockOptions opt;
  opt.record_trace = false;
  for (auto _ : state) benchmark::DoNotOptimize(solve_polyblock(prob, opt));
}
BENCHMARK(BM_Polyblock)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Sca(benchmark::State& state) {
  const WaveguideProblem prob = bench_problem(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_sca(prob));
}
BENCHMARK(BM_Sca)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Trial(benchmark::State& state) {
  ExperimentPlan plan;
  plan.base = bench_config(8);
  plan.record_timing = false;
  int trial = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_trial(plan.base, plan, trial++, 0.0));
}
BENCHMARK(BM_Trial)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace pinch

BENCHMARK_MAIN();
