// SPDX-License-Identifier: Apache-2.0

#include "pinch/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "pinch/coalition.hpp"
#include "pinch/oracles.hpp"
#include "pinch/power_mo.hpp"

namespace pinch {

SuiteReport validate_permutations(const ValidationOptions& options) {
  SuiteReport rep{"permutation", true, 0, {}};
  std::mt19937_64 rng(mix_seed(options.seed, 1));
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < options.permutation_instances; ++i) {
    const RandomInstance inst = make_random_instance(rng, {2, 6, 8, 5, 0.3});
    const RateInputs in = inst.inputs();
    for (int k = 0; k < inst.assign.num_waveguides(); ++k) {
      if (!inst.assign.serving(k)) continue;
      const auto powers = random_simplex_point(rng, inst.assign.size(k));
      for (double s : permutation_dominance_slack(in, k, powers)) worst = std::min(worst, s);
    }
    ++rep.instances;
  }
  rep.passed = worst >= -1e-9;
  rep.detail = fmt::format("worst per-position slack {:.3e}", worst);
  return rep;
}

SuiteReport validate_grid_search(const ValidationOptions& options) {
  SuiteReport rep{"grid-search", true, 0, {}};
  std::mt19937_64 rng(mix_seed(options.seed, 2));
  double worst = 0.0;
  for (int i = 0; i < options.grid_instances; ++i) {
    const RandomInstance inst = make_random_instance(rng, {2, 4, 8, 2, 0.3});
    const RateInputs in = inst.inputs();
    const DecodingPlan plan = optimal_order(in, full_budget_interference(in));
    for (int k = 0; k < inst.assign.num_waveguides(); ++k) {
      if (inst.assign.size(k) != 2) continue;
      const WaveguideProblem prob = make_waveguide_problem(
          plan[k], inst.mask.active_count(k), inst.consts.tx_power_w, inst.config.min_rate);
      const auto grid = simplex_grid_search(prob, 1e-3);
      const PolyblockResult mo = solve_polyblock(prob);
      if (!grid) {
        if (mo.status != PaStatus::kInfeasibleQos) rep.passed = false;
        continue;
      }
      worst = std::max(worst, std::abs(mo.value - grid->value));
      ++rep.instances;
    }
  }
  rep.passed = rep.passed && worst <= 1e-2;
  rep.detail = fmt::format("worst |polyblock - grid| {:.3e} bit/s/Hz", worst);
  return rep;
}

SuiteReport validate_stability(const ValidationOptions& options) {
  SuiteReport rep{"stability", true, 0, {}};
  std::mt19937_64 rng(mix_seed(options.seed, 3));
  ScenarioConfig cfg;
  const DerivedConstants consts = build_derived(cfg);
  int unstable = 0;
  int non_increasing = 0;
  for (int i = 0; i < options.stability_drops; ++i) {
    const Drop drop = sample_drop(cfg, rng);
    const CoalitionGame game(drop, consts);
    const GameState final_state = game.run(game.initialize());
    if (!game.is_nash_stable(final_state)) ++unstable;
    for (const auto& mv : final_state.move_log) {
      if (!(mv.delta() > 0.0)) ++non_increasing;
    }
    ++rep.instances;
  }
  rep.passed = unstable == 0 && non_increasing == 0;
  rep.detail = fmt::format("{} unstable final states, {} non-improving moves", unstable,
                           non_increasing);
  return rep;
}

std::vector<SuiteReport> run_validation(const ValidationOptions& options) {
  return {validate_permutations(options), validate_grid_search(options),
          validate_stability(options)};
}

}  // namespace pinch
