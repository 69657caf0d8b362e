// SPDX-License-Identifier: Apache-2.0

#include "pinch/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pinch {

RandomInstance make_random_instance(std::mt19937_64& rng, const InstanceShape& shape,
                                    const ScenarioConfig& base) {
  RandomInstance inst;
  inst.config = base;
  inst.config.num_waveguides = shape.num_waveguides;
  inst.config.num_users = shape.num_users;
  inst.config.num_antennas = shape.num_antennas;
  inst.config.waveguide_y.reset();
  std::uniform_int_distribution<int> pick_waveguide(0, shape.num_waveguides - 1);
  inst.drop = sample_drop(inst.config, rng);
  inst.consts = build_derived(inst.config);

  std::vector<int> wg(shape.num_users);
  std::vector<int> load(shape.num_waveguides, 0);
  for (int n = 0; n < shape.num_users; ++n) {
    int k = pick_waveguide(rng);
    for (int tries = 0; load[k] >= shape.max_per_waveguide && tries < 64; ++tries) {
      k = pick_waveguide(rng);
    }
    wg[n] = k;
    ++load[k];
  }
  inst.assign = AssignmentState(shape.num_waveguides, std::move(wg));

  inst.mask = ActivationMask(shape.num_waveguides, shape.num_antennas);
  std::uniform_int_distribution<int> pick_antenna(0, shape.num_antennas - 1);
  for (int k = 0; k < shape.num_waveguides; ++k) {
    if (!inst.assign.serving(k)) continue;
    for (int m = 0; m < shape.num_antennas; ++m) {
      if (uniform01(rng) < shape.activation_probability) inst.mask.set(k, m, true);
    }
    if (inst.mask.active_count(k) == 0) inst.mask.set(k, pick_antenna(rng), true);
  }
  inst.channel = effective_channel(inst.drop, inst.consts, inst.mask);
  return inst;
}

std::vector<double> random_simplex_point(std::mt19937_64& rng, int n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(n);
  for (double& x : p) x = e(rng);
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= s;
  return p;
}

std::vector<double> position_rates_for_order(const RateInputs& in, int k,
                                             std::span<const int> order,
                                             std::span<const double> position_powers) {
  PowerAllocation pa;
  pa.p = Eigen::MatrixXd::Zero(in.assign.num_waveguides(), in.assign.num_users());
  // Other serving waveguides spend their full budget.
  for (int j = 0; j < in.assign.num_waveguides(); ++j) {
    if (j == k || !in.assign.serving(j)) continue;
    for (int n : in.assign.members(j)) pa.p(j, n) = 1.0 / in.assign.size(j);
  }
  for (std::size_t i = 0; i < order.size(); ++i) pa.p(k, order[i]) = position_powers[i];
  const Eigen::MatrixXd intf = full_budget_interference(in);
  std::vector<double> rates(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    rates[i] = achievable_rate(in, pa, intf, k, order, static_cast<int>(i));
  }
  return rates;
}

std::vector<double> permutation_dominance_slack(const RateInputs& in, int k,
                                                std::span<const double> position_powers) {
  const DecodingPlan plan = optimal_order(in, full_budget_interference(in));
  const std::vector<int>& sorted = plan[k].order;
  const std::vector<double> reference = position_rates_for_order(in, k, sorted, position_powers);

  std::vector<double> slack(sorted.size(), std::numeric_limits<double>::infinity());
  std::vector<int> perm = in.assign.members(k);
  do {
    const auto rates = position_rates_for_order(in, k, perm, position_powers);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      slack[i] = std::min(slack[i], reference[i] - rates[i]);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return slack;
}

namespace {

void lattice(const WaveguideProblem& prob, int units, int pos, int left, std::vector<double>& p,
             std::optional<GridOptimum>& best) {
  const int n = prob.size();
  if (pos == n - 1) {
    p[pos] = static_cast<double>(left) / units;
    if (qos_slack(prob, p) < -1e-12) return;
    const double v = sum_rate(prob, p);
    if (!best || v > best->value) best = GridOptimum{p, v};
    return;
  }
  for (int i = 0; i <= left; ++i) {
    p[pos] = static_cast<double>(i) / units;
    lattice(prob, units, pos + 1, left - i, p, best);
  }
}

}  // namespace

std::optional<GridOptimum> simplex_grid_search(const WaveguideProblem& prob, double step) {
  if (prob.size() == 0) return std::nullopt;
  const int units = static_cast<int>(std::lround(1.0 / step));
  std::vector<double> p(prob.size());
  std::optional<GridOptimum> best;
  lattice(prob, units, 0, units, p, best);
  return best;
}

std::optional<GridOptimum> closed_form_optimum(const WaveguideProblem& prob) {
  const int n = prob.size();
  if (n == 0) return std::nullopt;
  // Tail sums T_i = sum_{j >= i} p_j, each pushed as high as QoS allows.
  std::vector<double> tail(n + 1, 0.0);
  tail[0] = 1.0;
  for (int i = 0; i + 1 < n; ++i) {
    const double g = prob.min_sinr[i];
    tail[i + 1] = (tail[i] + prob.sic[i]) / (1.0 + g) - prob.sic[i];
    if (tail[i + 1] < 0.0) return std::nullopt;
  }
  if (tail[n - 1] < prob.min_sinr[n - 1] * prob.sic[n - 1]) return std::nullopt;
  GridOptimum out;
  out.p.resize(n);
  for (int i = 0; i < n; ++i) out.p[i] = tail[i] - tail[i + 1];
  out.value = sum_rate(prob, out.p);
  return out;
}

}  // namespace pinch
