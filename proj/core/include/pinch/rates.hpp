// SPDX-License-Identifier: Apache-2.0
//
// NOMA/SIC rate engine. Users on one waveguide share its signal and are
// separated by power level; every waveguide's transmission interferes at the
// users of all other waveguides.
//
// Two rate paths are provided and must agree under a sorted decoding order:
//   * the min-form, where a user's rate is the minimum over every decoder at
//     the same or a later decode position (achievable_rate);
//   * the closed form driven by per-position SIC constants
//     C_(n) = max{(I + sigma^2) / |h|^2 over positions >= n}
//     (rates_under_optimal_order).

#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "pinch/channel.hpp"

namespace pinch {

// Slack below R_min tolerated before a user counts as in outage.
inline constexpr double kRateTolerance = 1e-9;

// Waveguide assignment alpha: each user is on exactly one waveguide, so the
// per-waveguide coalitions A_k partition the user set by construction.
class AssignmentState {
 public:
  AssignmentState() = default;
  AssignmentState(int num_waveguides, std::vector<int> waveguide_of_user);

  int num_waveguides() const { return num_waveguides_; }
  int num_users() const { return static_cast<int>(waveguide_of_.size()); }

  int waveguide_of(int n) const { return waveguide_of_[n]; }
  bool assigned(int k, int n) const { return waveguide_of_[n] == k; }
  int size(int k) const { return sizes_[k]; }
  bool serving(int k) const { return sizes_[k] > 0; }

  // A_k in ascending user index.
  std::vector<int> members(int k) const;
  void move(int n, int k);

  bool operator==(const AssignmentState&) const = default;

 private:
  int num_waveguides_ = 0;
  std::vector<int> waveguide_of_;
  std::vector<int> sizes_;
};

// K x N power allocation coefficients (fractions of P_t).
struct PowerAllocation {
  Eigen::MatrixXd p;

  // p = 1 / N_k for every user on a serving waveguide.
  static PowerAllocation equal_split(const AssignmentState& assign);
  double used(int k) const { return p.row(k).sum(); }
};

// Everything the rate engine reads about one system snapshot.
struct RateInputs {
  const ChannelMatrix& channel;
  const ActivationMask& mask;
  const AssignmentState& assign;
  double tx_power_w;
  double noise_w;
};

// I_{k,n} = sum over serving k' != k of (P_t / M_k') |h_{k',n}|^2 sum_i p_{k',i}.
Eigen::MatrixXd interference(const RateInputs& in, const PowerAllocation& pa);

// Interference with every serving waveguide spending its whole budget; the
// result does not depend on how each waveguide splits its power.
Eigen::MatrixXd full_budget_interference(const RateInputs& in);

// Rate at which the user at decode position `decoder_pos` of waveguide k
// decodes the signal of the user at `target_pos` (decoder_pos >= target_pos).
double decode_rate(const RateInputs& in, const PowerAllocation& pa, const Eigen::MatrixXd& intf,
                   int k, std::span<const int> order, int decoder_pos, int target_pos);

// Min over all decoders at the same or later position.
double achievable_rate(const RateInputs& in, const PowerAllocation& pa,
                       const Eigen::MatrixXd& intf, int k, std::span<const int> order,
                       int target_pos);

struct WaveguidePlan {
  std::vector<int> order;             // Q_k, user indices by decode position
  std::vector<double> ratio;          // (I + sigma^2) / |h|^2 per position [W]
  std::vector<double> sic_constant;   // C per position [W]
};

// One entry per waveguide; idle waveguides have an empty order.
struct DecodingPlan {
  std::vector<WaveguidePlan> waveguides;

  const WaveguidePlan& operator[](int k) const { return waveguides[k]; }
};

// Sorts each coalition by (I + sigma^2) / |h|^2 descending, ties by ascending
// user index, and fills the SIC constants.
DecodingPlan optimal_order(const RateInputs& in, const Eigen::MatrixXd& intf);

// Ratios and SIC constants for caller-chosen orders (any permutation).
DecodingPlan plan_for_orders(const RateInputs& in, const Eigen::MatrixXd& intf,
                             const std::vector<std::vector<int>>& orders);

struct RateReport {
  std::vector<double> rate;           // per user [bit/s/Hz]
  std::vector<double> waveguide_sum;  // per waveguide
  double total = 0.0;
  std::vector<bool> outage;           // rate < R_min

  int outage_count() const;
};

// Closed form under the plan's SIC constants. The plan must have been built
// from the interference that `pa` produces (full budget on serving waveguides
// for plans from optimal_order over full_budget_interference).
RateReport rates_under_optimal_order(const RateInputs& in, const DecodingPlan& plan,
                                     const PowerAllocation& pa, double min_rate);

// Min-form rates for the plan's orders, interference recomputed from `pa`.
RateReport rates_min_form(const RateInputs& in, const DecodingPlan& plan,
                          const PowerAllocation& pa, double min_rate);

// log2(1 + x), accurate for tiny x.
double log2_1p(double x);

}  // namespace pinch
