// SPDX-License-Identifier: Apache-2.0
//
// Fast single-waveguide power allocation by successive convex approximation.
//
// With slack variables gamma_n (SINR) and mu_n (interference plus SIC
// constant), the rate constraint p_n >= gamma_n (S_{n+1} + c_n) becomes
// p_n >= mu_n gamma_n and mu_n >= S_{n+1} + c_n. The bilinear term is replaced
// by a convex surrogate around the current iterate, and each subproblem
//
//   maximize sum log(1 + gamma_n)
//
// is solved with a log-barrier method.

#pragma once

#include <optional>
#include <vector>

#include "pinch/waveguide_power.hpp"

namespace pinch {

enum class BilinearBound {
  // mu*gamma <= (w mu^2 + gamma^2 / w) / 2 with w = gamma_t / mu_t. Convex,
  // tight at the iterate and never below mu*gamma, so iterates stay feasible
  // for the original constraints and the value cannot decrease.
  kArithmeticGeometric,
  // gamma_t mu + mu_t gamma - mu_t gamma_t. Linear but not a bound.
  kFirstOrder,
};

struct ScaOptions {
  double epsilon = 1e-4;  // stop when the value changes by at most this
  int max_iter = 100;
  BilinearBound bound = BilinearBound::kArithmeticGeometric;
};

// Position-indexed iterate; mu has one entry per non-last position.
struct ScaIterate {
  std::vector<double> p;
  std::vector<double> gamma;
  std::vector<double> mu;
  int t = 0;
  double value = 0.0;  // sum rate at p [bit/s/Hz]
};

// mu = S_{n+1} + c_n and gamma = the SINR that p actually achieves.
ScaIterate taylor_point(const WaveguideProblem& prob, const std::vector<double>& p, int t = 0);

// Solves the convex surrogate built around `point`. Returns nullopt when the
// surrogate has no strictly feasible point.
std::optional<ScaIterate> convex_subproblem(const WaveguideProblem& prob, const ScaIterate& point,
                                            BilinearBound bound = BilinearBound::kArithmeticGeometric);

struct ScaResult : PaResult {
  std::vector<double> trace;  // value after each accepted iterate
};

// Starts from the equal split, falling back to the minimum-power allocation
// scaled to the full budget when the first surrogate is infeasible. When no
// allocation meets every QoS target the status is kInfeasibleQos and QoS is
// kept only on the largest satisfiable set of positions.
ScaResult solve_sca(const WaveguideProblem& prob, const ScaOptions& options = {});

}  // namespace pinch
