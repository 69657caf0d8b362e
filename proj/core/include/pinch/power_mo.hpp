// SPDX-License-Identifier: Apache-2.0
//
// Globally optimal single-waveguide power allocation by polyblock outer
// approximation.
//
// The search runs in QoS-shifted coordinates. With x_n = p_n - gamma_n S_{n+1}
// the QoS targets become the box x >= x_min (x_min,n = gamma_n c_n) and the
// budget stays linear, sum p = sum_i a_i x_i with a_i = prod_{n<i}(1+gamma_n).
// Vertices live in y = x - x_min >= 0, the budget there is sum a_i y_i <= b,
// and the sum rate is increasing in y. Without QoS (a = 1, b = 1) this is the
// plain simplex search over p.

#pragma once

#include <span>
#include <vector>

#include "pinch/waveguide_power.hpp"

namespace pinch {

namespace polyblock {

// Ray-boundary intersection with sum v <= 1: zeta = min(1, 1 / sum v).
// Throws std::invalid_argument for an all-zero vertex.
std::vector<double> project(std::span<const double> v);

// Same with a weighted budget sum_i w_i v_i <= budget.
std::vector<double> project(std::span<const double> v, std::span<const double> weights,
                            double budget);

// Child i equals v with component i lowered to phi_i.
std::vector<std::vector<double>> split(std::span<const double> v, std::span<const double> phi);

// a <= b componentwise.
bool dominated_by(std::span<const double> a, std::span<const double> b);

struct Vertex {
  std::vector<double> point;
  double bound = 0.0;  // objective at the vertex, an upper bound below it
};

// Drops vertices whose bound cannot beat `best` and vertices dominated by
// another retained vertex (exact duplicates keep their first copy).
void prune(std::vector<Vertex>& vertices, double best);

}  // namespace polyblock

struct PolyblockOptions {
  double epsilon = 1e-3;  // bit/s/Hz gap between upper and lower bound
  int max_iter = 5000;
  bool record_trace = true;
};

struct PolyblockTraceEntry {
  int iteration = 0;
  double upper = 0.0;  // bound of the selected vertex
  double lower = 0.0;  // best feasible value so far
  int vertices = 0;    // set size after the update
};

struct PolyblockResult : PaResult {
  double upper_bound = 0.0;
  std::vector<PolyblockTraceEntry> trace;
};

// When no allocation meets every QoS target the status is kInfeasibleQos and
// the returned allocation is optimal with QoS kept on the largest satisfiable
// set of positions.
PolyblockResult solve_polyblock(const WaveguideProblem& prob,
                                const PolyblockOptions& options = {});

}  // namespace pinch
