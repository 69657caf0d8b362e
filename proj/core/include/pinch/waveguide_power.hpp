// SPDX-License-Identifier: Apache-2.0
//
// Single-waveguide power allocation problem shared by the polyblock and SCA
// solvers. Everything is indexed by decode position and normalised by the
// per-antenna power P_t / M_k, so position n has SINR
//
//   p_n / (S_{n+1} + c_n),   S_{n+1} = sum of p over later positions,
//
// with c_n = C_n * M_k / P_t. Under a sorted order c is non-increasing, which
// makes the sum rate increasing in every p_n.

#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "pinch/rates.hpp"

namespace pinch {

struct WaveguideProblem {
  std::vector<double> sic;       // c_n per decode position
  std::vector<double> min_sinr;  // gamma_min per position; 0 disables QoS

  int size() const { return static_cast<int>(sic.size()); }
};

// gamma_min = 2^R_min - 1 on every position.
double min_sinr_for(double min_rate);

WaveguideProblem make_waveguide_problem(const WaveguidePlan& plan, int active_antennas,
                                        double tx_power_w, double min_rate);

std::vector<double> position_sinr(const WaveguideProblem& prob, std::span<const double> p);
std::vector<double> position_rates(const WaveguideProblem& prob, std::span<const double> p);
double sum_rate(const WaveguideProblem& prob, std::span<const double> p);

// Smallest QoS slack p_n - gamma_n (S_{n+1} + c_n) over enforced positions.
double qos_slack(const WaveguideProblem& prob, std::span<const double> p);

// Componentwise-minimal powers meeting every enforced QoS target with equality:
// p_N = gamma_N c_N, p_n = gamma_n (S_{n+1} + c_n).
std::vector<double> min_power_allocation(const WaveguideProblem& prob);

// With a common gamma_min and non-increasing c, the largest set of positions
// that fits the budget is a suffix of the order, and that suffix also needs the
// least power among sets of its size. Returns the problem with QoS dropped on
// the remaining (earliest-decoded) positions.
WaveguideProblem restrict_to_satisfiable(const WaveguideProblem& prob);

enum class PaStatus { kConverged, kIterationCap, kInfeasibleQos };

std::string_view to_string(PaStatus status);

struct PaResult {
  std::vector<double> p;  // per decode position
  double value = 0.0;     // sum rate [bit/s/Hz]
  PaStatus status = PaStatus::kConverged;
  int iterations = 0;
};

// Writes position-indexed powers into row k of `pa` following the plan order.
void scatter(const WaveguidePlan& plan, int k, std::span<const double> p, PowerAllocation& pa);

}  // namespace pinch
