// SPDX-License-Identifier: Apache-2.0

#include "pinch/waveguide_power.hpp"

#include <cmath>
#include <limits>

namespace pinch {

double min_sinr_for(double min_rate) { return std::exp2(min_rate) - 1.0; }

WaveguideProblem make_waveguide_problem(const WaveguidePlan& plan, int active_antennas,
                                        double tx_power_w, double min_rate) {
  WaveguideProblem prob;
  const double scale = active_antennas / tx_power_w;
  prob.sic.reserve(plan.sic_constant.size());
  for (double c : plan.sic_constant) prob.sic.push_back(c * scale);
  prob.min_sinr.assign(prob.sic.size(), min_sinr_for(min_rate));
  return prob;
}

std::vector<double> position_sinr(const WaveguideProblem& prob, std::span<const double> p) {
  std::vector<double> out(prob.size());
  double later = 0.0;
  for (int n = prob.size() - 1; n >= 0; --n) {
    out[n] = p[n] > 0.0 ? p[n] / (later + prob.sic[n]) : 0.0;
    later += p[n];
  }
  return out;
}

std::vector<double> position_rates(const WaveguideProblem& prob, std::span<const double> p) {
  std::vector<double> out = position_sinr(prob, p);
  for (double& r : out) r = log2_1p(r);
  return out;
}

double sum_rate(const WaveguideProblem& prob, std::span<const double> p) {
  double total = 0.0;
  for (double r : position_rates(prob, p)) total += r;
  return total;
}

double qos_slack(const WaveguideProblem& prob, std::span<const double> p) {
  double slack = std::numeric_limits<double>::infinity();
  double later = 0.0;
  for (int n = prob.size() - 1; n >= 0; --n) {
    if (prob.min_sinr[n] > 0.0) {
      slack = std::min(slack, p[n] - prob.min_sinr[n] * (later + prob.sic[n]));
    }
    later += p[n];
  }
  return slack;
}

std::vector<double> min_power_allocation(const WaveguideProblem& prob) {
  std::vector<double> p(prob.size(), 0.0);
  double later = 0.0;
  for (int n = prob.size() - 1; n >= 0; --n) {
    p[n] = prob.min_sinr[n] * (later + prob.sic[n]);
    later += p[n];
  }
  return p;
}

WaveguideProblem restrict_to_satisfiable(const WaveguideProblem& prob) {
  WaveguideProblem out = prob;
  double later = 0.0;
  int n = prob.size() - 1;
  for (; n >= 0; --n) {
    const double need = prob.min_sinr[n] * (later + prob.sic[n]);
    if (later + need > 1.0) break;
    later += need;
  }
  for (; n >= 0; --n) out.min_sinr[n] = 0.0;
  return out;
}

std::string_view to_string(PaStatus status) {
  switch (status) {
    case PaStatus::kConverged:
      return "converged";
    case PaStatus::kIterationCap:
      return "iteration_cap";
    case PaStatus::kInfeasibleQos:
      return "infeasible_qos";
  }
  return "unknown";
}

void scatter(const WaveguidePlan& plan, int k, std::span<const double> p, PowerAllocation& pa) {
  for (std::size_t i = 0; i < plan.order.size(); ++i) pa.p(k, plan.order[i]) = p[i];
}

}  // namespace pinch
