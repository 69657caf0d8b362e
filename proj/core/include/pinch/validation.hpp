// SPDX-License-Identifier: Apache-2.0
//
// Self-checks behind `pinchsim validate`: each suite compares an optimised
// code path against a brute-force oracle on random instances.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pinch {

struct SuiteReport {
  std::string name;
  bool passed = false;
  int instances = 0;
  std::string detail;
};

struct ValidationOptions {
  std::uint64_t seed = 7;
  int permutation_instances = 40;
  int grid_instances = 10;
  int stability_drops = 5;
};

// Decoding-order optimality against every permutation (N_k <= 5).
SuiteReport validate_permutations(const ValidationOptions& options);
// Polyblock value against a 1e-3 simplex grid for two-user waveguides.
SuiteReport validate_grid_search(const ValidationOptions& options);
// Coalition game output is Nash stable and its move values strictly increase.
SuiteReport validate_stability(const ValidationOptions& options);

std::vector<SuiteReport> run_validation(const ValidationOptions& options = {});

}  // namespace pinch
