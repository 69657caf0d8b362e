// SPDX-License-Identifier: Apache-2.0
//
// Brute-force references used to validate the optimised code paths: random
// system snapshots, exhaustive decoding-order search, simplex grid search
// and the closed-form optimum of the single-waveguide power problem.

#pragma once

#include <optional>
#include <random>
#include <span>
#include <vector>

#include "pinch/rates.hpp"
#include "pinch/scenario.hpp"
#include "pinch/waveguide_power.hpp"

namespace pinch {

// A random drop with a random assignment and activation mask. Every serving
// waveguide keeps at least one active antenna; idle waveguides keep none.
struct RandomInstance {
  ScenarioConfig config;
  Drop drop;
  DerivedConstants consts;
  AssignmentState assign;
  ActivationMask mask;
  ChannelMatrix channel;

  RateInputs inputs() const {
    return {channel, mask, assign, consts.tx_power_w, consts.noise_w};
  }
};

struct InstanceShape {
  int num_waveguides = 2;
  int num_users = 6;
  int num_antennas = 8;
  int max_per_waveguide = 5;  // cap on N_k
  double activation_probability = 0.3;
};

RandomInstance make_random_instance(std::mt19937_64& rng, const InstanceShape& shape,
                                    const ScenarioConfig& base = {});

// Random point on the unit simplex of dimension n.
std::vector<double> random_simplex_point(std::mt19937_64& rng, int n);

// Min-form rate of every decode position of waveguide k when position i
// carries power position_powers[i], under `order`. Interference is taken at
// full budget, so position_powers should sum to one.
std::vector<double> position_rates_for_order(const RateInputs& in, int k,
                                             std::span<const int> order,
                                             std::span<const double> position_powers);

// Largest slack (sorted-order rate minus best rate over every other order)
// observed at each position; negative entries would falsify optimality.
std::vector<double> permutation_dominance_slack(const RateInputs& in, int k,
                                                std::span<const double> position_powers);

// Best QoS-feasible sum rate over the simplex lattice with spacing `step`,
// using only full-budget points. nullopt when no lattice point meets QoS.
struct GridOptimum {
  std::vector<double> p;
  double value = 0.0;
};
std::optional<GridOptimum> simplex_grid_search(const WaveguideProblem& prob, double step);

// Exact optimum for sorted SIC constants: every user but the last gets its
// QoS minimum, the last takes the remaining power. nullopt when infeasible.
std::optional<GridOptimum> closed_form_optimum(const WaveguideProblem& prob);

}  // namespace pinch
