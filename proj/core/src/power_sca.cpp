// SPDX-License-Identifier: Apache-2.0

#include "pinch/power_sca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pinch/barrier.hpp"

namespace pinch {

namespace {

// Keeps the surrogate bounded when a user's SINR collapses to zero.
constexpr double kTaylorFloor = 1e-9;
constexpr double kQosTolerance = 1e-9;

double total(const std::vector<double>& p) { return std::accumulate(p.begin(), p.end(), 0.0); }

struct Layout {
  int n;
  int p(int i) const { return i; }
  int gamma(int i) const { return n + i; }
  int mu(int i) const { return 2 * n + i; }
  int dimension() const { return 3 * n - 1; }
};

BarrierConstraint linear(int dim) {
  BarrierConstraint c;
  c.a = Eigen::VectorXd::Zero(dim);
  return c;
}

ConvexProgram build_program(const WaveguideProblem& prob, const ScaIterate& point,
                            BilinearBound bound) {
  const int n = prob.size();
  const Layout at{n};
  const int dim = at.dimension();
  ConvexProgram prog;
  prog.linear = Eigen::VectorXd::Zero(dim);
  for (int i = 0; i < n; ++i) prog.log_terms.push_back(at.gamma(i));

  auto add_later_sum = [&](BarrierConstraint& c, int i, double coeff) {
    for (int j = i + 1; j < n; ++j) c.a[at.p(j)] += coeff;
  };

  for (int i = 0; i < n; ++i) {
    auto nonneg = linear(dim);
    nonneg.a[at.p(i)] = -1.0;
    prog.constraints.push_back(nonneg);
  }
  {
    auto budget = linear(dim);
    for (int i = 0; i < n; ++i) budget.a[at.p(i)] = 1.0;
    budget.b = -1.0;
    prog.constraints.push_back(budget);
  }
  for (int i = 0; i < n; ++i) {
    const double g = prob.min_sinr[i];
    if (g > 0.0) {
      auto qos = linear(dim);
      qos.a[at.p(i)] = -1.0;
      add_later_sum(qos, i, g);
      qos.b = g * prob.sic[i];
      prog.constraints.push_back(qos);
    }
    auto floor = linear(dim);
    floor.a[at.gamma(i)] = -1.0;
    floor.b = g;
    prog.constraints.push_back(floor);
  }
  for (int i = 0; i + 1 < n; ++i) {
    auto lower = linear(dim);
    add_later_sum(lower, i, 1.0);
    lower.a[at.mu(i)] = -1.0;
    lower.b = prob.sic[i];
    prog.constraints.push_back(lower);

    auto upper = linear(dim);
    upper.a[at.mu(i)] = 1.0;
    upper.b = -(1.0 + prob.sic[i]);
    prog.constraints.push_back(upper);

    const double mu_t = point.mu[i];
    const double gamma_t = std::max(point.gamma[i], kTaylorFloor);
    auto bilinear = linear(dim);
    bilinear.a[at.p(i)] = -1.0;
    if (bound == BilinearBound::kArithmeticGeometric) {
      const double w = gamma_t / mu_t;
      bilinear.q = Eigen::VectorXd::Zero(dim);
      bilinear.q[at.mu(i)] = w;
      bilinear.q[at.gamma(i)] = 1.0 / w;
    } else {
      bilinear.a[at.mu(i)] = gamma_t;
      bilinear.a[at.gamma(i)] = mu_t;
      bilinear.b = -mu_t * gamma_t;
    }
    prog.constraints.push_back(bilinear);
  }
  {
    auto last = linear(dim);
    last.a[at.p(n - 1)] = -1.0;
    last.a[at.gamma(n - 1)] = prob.sic[n - 1];
    prog.constraints.push_back(last);
  }
  return prog;
}

}  // namespace

ScaIterate taylor_point(const WaveguideProblem& prob, const std::vector<double>& p, int t) {
  const int n = prob.size();
  ScaIterate it;
  it.p = p;
  it.t = t;
  it.gamma = position_sinr(prob, p);
  it.mu.resize(std::max(0, n - 1));
  double later = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    if (i < n - 1) it.mu[i] = later + prob.sic[i];
    later += p[i];
  }
  it.value = sum_rate(prob, p);
  return it;
}

std::optional<ScaIterate> convex_subproblem(const WaveguideProblem& prob, const ScaIterate& point,
                                            BilinearBound bound) {
  const int n = prob.size();
  if (n == 0) return std::nullopt;
  const Layout at{n};
  const ConvexProgram prog = build_program(prob, point, bound);

  // The Taylor point sits on the surrogate's boundary. Pulling gamma towards
  // its floor and pushing mu up usually lands strictly inside, which spares
  // the barrier solver its phase-I search.
  constexpr double kPull = 1e-3;
  Eigen::VectorXd start(at.dimension());
  for (int i = 0; i < n; ++i) {
    const double g_min = prob.min_sinr[i];
    start[at.p(i)] = point.p[i];
    start[at.gamma(i)] = g_min + (point.gamma[i] - g_min) * (1.0 - kPull);
    if (i + 1 < n) start[at.mu(i)] = point.mu[i] * (1.0 + 0.25 * kPull);
  }
  const BarrierResult sol = solve_barrier(prog, start);
  if (sol.status == BarrierStatus::kInfeasible) return std::nullopt;

  ScaIterate out;
  out.t = point.t + 1;
  out.p.resize(n);
  out.gamma.resize(n);
  out.mu.resize(n - 1);
  for (int i = 0; i < n; ++i) {
    out.p[i] = std::max(0.0, sol.x[at.p(i)]);
    out.gamma[i] = sol.x[at.gamma(i)];
    if (i + 1 < n) out.mu[i] = sol.x[at.mu(i)];
  }
  out.value = sum_rate(prob, out.p);
  return out;
}

ScaResult solve_sca(const WaveguideProblem& input, const ScaOptions& options) {
  ScaResult result;
  const int n = input.size();
  if (n == 0) return result;

  const bool feasible = total(min_power_allocation(input)) <= 1.0;
  const WaveguideProblem prob = feasible ? input : restrict_to_satisfiable(input);

  auto finish = [&](std::vector<double> p, PaStatus status) {
    const double used = total(p);
    if (used > 0.0) {
      // Scaling up every power only raises each SINR, so QoS survives.
      for (double& x : p) x /= used;
    }
    result.value = sum_rate(prob, p);
    result.p = std::move(p);
    result.status = feasible ? status : PaStatus::kInfeasibleQos;
    return result;
  };

  if (n == 1) {
    result.trace.push_back(sum_rate(prob, std::vector<double>{1.0}));
    return finish({1.0}, PaStatus::kConverged);
  }

  ScaIterate current = taylor_point(prob, std::vector<double>(n, 1.0 / n));
  bool current_feasible = qos_slack(prob, current.p) >= -kQosTolerance;
  std::optional<ScaIterate> next = convex_subproblem(prob, current, options.bound);
  if (!next) {
    std::vector<double> p = min_power_allocation(prob);
    const double used = total(p);
    if (used > 0.0) {
      for (double& x : p) x /= used;
    } else {
      std::fill(p.begin(), p.end(), 1.0 / n);
    }
    current = taylor_point(prob, p);
    current_feasible = true;
    next = convex_subproblem(prob, current, options.bound);
  }
  if (current_feasible) result.trace.push_back(current.value);

  PaStatus status = PaStatus::kIterationCap;
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    if (!next) {
      status = PaStatus::kConverged;
      break;
    }
    result.iterations = iter;
    const bool next_feasible = qos_slack(prob, next->p) >= -kQosTolerance;
    if (!next_feasible || (current_feasible && next->value < current.value)) {
      // The surrogate step would lose value or feasibility: keep the iterate.
      status = PaStatus::kConverged;
      break;
    }
    const double delta = next->value - current.value;
    const bool was_feasible = current_feasible;
    current = taylor_point(prob, next->p, next->t);
    current_feasible = true;
    result.trace.push_back(current.value);
    if (was_feasible && std::abs(delta) <= options.epsilon) {
      status = PaStatus::kConverged;
      break;
    }
    if (iter < options.max_iter) next = convex_subproblem(prob, current, options.bound);
  }
  return finish(current.p, status);
}

}  // namespace pinch
