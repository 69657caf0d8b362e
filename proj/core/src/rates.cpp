// SPDX-License-Identifier: Apache-2.0

#include "pinch/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace pinch {

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

AssignmentState::AssignmentState(int num_waveguides, std::vector<int> waveguide_of_user)
    : num_waveguides_(num_waveguides),
      waveguide_of_(std::move(waveguide_of_user)),
      sizes_(num_waveguides, 0) {
  for (int k : waveguide_of_) {
    if (k < 0 || k >= num_waveguides_) {
      throw std::out_of_range("user assigned to a waveguide that does not exist");
    }
    ++sizes_[k];
  }
}

std::vector<int> AssignmentState::members(int k) const {
  std::vector<int> out;
  out.reserve(sizes_[k]);
  for (int n = 0; n < num_users(); ++n) {
    if (waveguide_of_[n] == k) out.push_back(n);
  }
  return out;
}

void AssignmentState::move(int n, int k) {
  --sizes_[waveguide_of_[n]];
  waveguide_of_[n] = k;
  ++sizes_[k];
}

PowerAllocation PowerAllocation::equal_split(const AssignmentState& assign) {
  PowerAllocation pa;
  pa.p = Eigen::MatrixXd::Zero(assign.num_waveguides(), assign.num_users());
  for (int n = 0; n < assign.num_users(); ++n) {
    const int k = assign.waveguide_of(n);
    pa.p(k, n) = 1.0 / assign.size(k);
  }
  return pa;
}

namespace {

double per_antenna_power(const RateInputs& in, int k) {
  const int active = in.mask.active_count(k);
  return active > 0 ? in.tx_power_w / active : 0.0;
}

Eigen::MatrixXd interference_with_budget(const RateInputs& in, const Eigen::VectorXd& budget) {
  const int k_count = in.assign.num_waveguides();
  const int n_count = in.assign.num_users();
  // Received power from each waveguide at each user, then leave-one-out.
  Eigen::MatrixXd received = Eigen::MatrixXd::Zero(k_count, n_count);
  for (int k = 0; k < k_count; ++k) {
    if (!in.assign.serving(k) || budget[k] <= 0.0) continue;
    received.row(k) = per_antenna_power(in, k) * budget[k] * in.channel.gain2.row(k);
  }
  const Eigen::RowVectorXd total = received.colwise().sum();
  Eigen::MatrixXd out(k_count, n_count);
  for (int k = 0; k < k_count; ++k) out.row(k) = total - received.row(k);
  return out.cwiseMax(0.0);
}

double sinr(double p, double q, double later, double c) {
  const double num = p * q;
  if (num <= 0.0) return 0.0;
  return num / (q * later + c);
}

}  // namespace

Eigen::MatrixXd interference(const RateInputs& in, const PowerAllocation& pa) {
  Eigen::VectorXd budget(in.assign.num_waveguides());
  for (int k = 0; k < budget.size(); ++k) {
    double used = 0.0;
    for (int n = 0; n < in.assign.num_users(); ++n) {
      if (in.assign.assigned(k, n)) used += pa.p(k, n);
    }
    budget[k] = used;
  }
  return interference_with_budget(in, budget);
}

Eigen::MatrixXd full_budget_interference(const RateInputs& in) {
  return interference_with_budget(in, Eigen::VectorXd::Ones(in.assign.num_waveguides()));
}

double decode_rate(const RateInputs& in, const PowerAllocation& pa, const Eigen::MatrixXd& intf,
                   int k, std::span<const int> order, int decoder_pos, int target_pos) {
  if (decoder_pos < target_pos) {
    throw std::invalid_argument("decoder must sit at or after the target in the SIC order");
  }
  const double q = per_antenna_power(in, k);
  const int decoder = order[decoder_pos];
  const int target = order[target_pos];
  double later = 0.0;
  for (std::size_t i = target_pos + 1; i < order.size(); ++i) later += pa.p(k, order[i]);
  const double g = in.channel.gain2(k, decoder);
  const double num = pa.p(k, target) * q * g;
  if (num <= 0.0) return 0.0;
  return log2_1p(num / (q * g * later + intf(k, decoder) + in.noise_w));
}

double achievable_rate(const RateInputs& in, const PowerAllocation& pa,
                       const Eigen::MatrixXd& intf, int k, std::span<const int> order,
                       int target_pos) {
  double best = std::numeric_limits<double>::infinity();
  for (int d = target_pos; d < static_cast<int>(order.size()); ++d) {
    best = std::min(best, decode_rate(in, pa, intf, k, order, d, target_pos));
  }
  return best;
}

DecodingPlan plan_for_orders(const RateInputs& in, const Eigen::MatrixXd& intf,
                             const std::vector<std::vector<int>>& orders) {
  DecodingPlan plan;
  plan.waveguides.resize(in.assign.num_waveguides());
  for (int k = 0; k < in.assign.num_waveguides(); ++k) {
    auto& wp = plan.waveguides[k];
    wp.order = orders[k];
    const std::size_t size = wp.order.size();
    wp.ratio.resize(size);
    wp.sic_constant.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
      const int n = wp.order[i];
      const double g = in.channel.gain2(k, n);
      wp.ratio[i] = g > 0.0 ? (intf(k, n) + in.noise_w) / g
                            : std::numeric_limits<double>::infinity();
    }
    double running = 0.0;
    for (std::size_t i = size; i-- > 0;) {
      running = std::max(running, wp.ratio[i]);
      wp.sic_constant[i] = running;
    }
  }
  return plan;
}

DecodingPlan optimal_order(const RateInputs& in, const Eigen::MatrixXd& intf) {
  std::vector<std::vector<int>> orders(in.assign.num_waveguides());
  for (int k = 0; k < in.assign.num_waveguides(); ++k) {
    auto& order = orders[k];
    order = in.assign.members(k);
    std::vector<double> key(in.assign.num_users(), 0.0);
    for (int n : order) {
      const double g = in.channel.gain2(k, n);
      key[n] = g > 0.0 ? (intf(k, n) + in.noise_w) / g : std::numeric_limits<double>::infinity();
    }
    // members() is ascending, so a stable sort keeps index order on ties.
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return key[a] > key[b]; });
  }
  return plan_for_orders(in, intf, orders);
}

int RateReport::outage_count() const {
  return static_cast<int>(std::count(outage.begin(), outage.end(), true));
}

namespace {

RateReport empty_report(const RateInputs& in) {
  RateReport r;
  r.rate.assign(in.assign.num_users(), 0.0);
  r.waveguide_sum.assign(in.assign.num_waveguides(), 0.0);
  r.outage.assign(in.assign.num_users(), false);
  return r;
}

void finish_report(RateReport& r, double min_rate) {
  r.total = 0.0;
  for (double s : r.waveguide_sum) r.total += s;
  for (std::size_t n = 0; n < r.rate.size(); ++n) {
    r.outage[n] = r.rate[n] < min_rate - kRateTolerance;
  }
}

}  // namespace

RateReport rates_under_optimal_order(const RateInputs& in, const DecodingPlan& plan,
                                     const PowerAllocation& pa, double min_rate) {
  RateReport r = empty_report(in);
  for (int k = 0; k < in.assign.num_waveguides(); ++k) {
    const auto& wp = plan[k];
    if (wp.order.empty()) continue;
    const double q = per_antenna_power(in, k);
    double later = 0.0;
    for (std::size_t i = wp.order.size(); i-- > 0;) {
      const int n = wp.order[i];
      const double p = pa.p(k, n);
      r.rate[n] = q > 0.0 ? log2_1p(sinr(p, q, later, wp.sic_constant[i])) : 0.0;
      r.waveguide_sum[k] += r.rate[n];
      later += p;
    }
  }
  finish_report(r, min_rate);
  return r;
}

RateReport rates_min_form(const RateInputs& in, const DecodingPlan& plan,
                          const PowerAllocation& pa, double min_rate) {
  RateReport r = empty_report(in);
  const Eigen::MatrixXd intf = interference(in, pa);
  for (int k = 0; k < in.assign.num_waveguides(); ++k) {
    const auto& order = plan[k].order;
    for (int pos = 0; pos < static_cast<int>(order.size()); ++pos) {
      const int n = order[pos];
      r.rate[n] = achievable_rate(in, pa, intf, k, order, pos);
      r.waveguide_sum[k] += r.rate[n];
    }
  }
  finish_report(r, min_rate);
  return r;
}

}  // namespace pinch
