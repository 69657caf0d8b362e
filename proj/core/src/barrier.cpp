// SPDX-License-Identifier: Apache-2.0

#include "pinch/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

namespace pinch {

double BarrierConstraint::value(const Eigen::VectorXd& x) const {
  double v = a.dot(x) + b;
  if (q.size() > 0) v += 0.5 * q.dot(x.cwiseAbs2());
  return v;
}

Eigen::VectorXd BarrierConstraint::gradient(const Eigen::VectorXd& x) const {
  if (q.size() == 0) return a;
  return a + q.cwiseProduct(x);
}

double ConvexProgram::objective(const Eigen::VectorXd& x) const {
  double v = linear.dot(x);
  for (int j : log_terms) v -= std::log1p(x[j]);
  return v;
}

double ConvexProgram::max_violation(const Eigen::VectorXd& x) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& c : constraints) worst = std::max(worst, c.value(x));
  return worst;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Barrier function t f0(x) - sum log(-f_i(x)); +inf outside the domain.
double barrier_value(const ConvexProgram& prog, const Eigen::VectorXd& x, double t) {
  double v = t * prog.linear.dot(x);
  for (int j : prog.log_terms) {
    if (x[j] <= -1.0) return kInf;
    v -= t * std::log1p(x[j]);
  }
  for (const auto& c : prog.constraints) {
    const double f = c.value(x);
    if (!(f < 0.0)) return kInf;
    v -= std::log(-f);
  }
  return v;
}

struct CenteringOutcome {
  bool ok = true;
  int steps = 0;
};

// Newton's method on the barrier function at fixed t. `stop` lets phase I bail
// out as soon as the iterate is good enough.
template <typename Stop>
CenteringOutcome center(const ConvexProgram& prog, Eigen::VectorXd& x, double t, int budget,
                        Stop stop) {
  const int n = prog.dimension();
  CenteringOutcome out;
  double current = barrier_value(prog, x, t);
  while (out.steps < budget) {
    Eigen::VectorXd grad = t * prog.linear;
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(n, n);
    for (int j : prog.log_terms) {
      const double d = 1.0 + x[j];
      grad[j] -= t / d;
      hess(j, j) += t / (d * d);
    }
    for (const auto& c : prog.constraints) {
      const double f = c.value(x);
      const Eigen::VectorXd g = c.gradient(x);
      grad += g / (-f);
      hess.noalias() += (g * g.transpose()) / (f * f);
      if (c.q.size() > 0) hess.diagonal() += c.q / (-f);
    }
    // Jacobi scaling keeps the factorisation sane as t grows.
    Eigen::VectorXd scale = hess.diagonal().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd scaled = scale.asDiagonal() * hess * scale.asDiagonal();
    scaled.diagonal().array() += 1e-14;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(scaled);
    if (ldlt.info() != Eigen::Success) {
      out.ok = false;
      return out;
    }
    const Eigen::VectorXd step = scale.cwiseProduct(ldlt.solve(-scale.cwiseProduct(grad)));
    const double decrement = -grad.dot(step);
    ++out.steps;
    if (!std::isfinite(decrement)) {
      out.ok = false;
      return out;
    }
    // Barrier values grow with t, so the attainable decrement is relative.
    if (decrement <= 1e-10 + 1e-14 * std::abs(current)) return out;

    double alpha = 1.0;
    double next = kInf;
    bool sufficient = false;
    for (int tries = 0; tries < 60 && !sufficient; ++tries) {
      next = barrier_value(prog, x + alpha * step, t);
      sufficient = next < current && next <= current - 0.01 * alpha * decrement;
      if (!sufficient) alpha *= 0.5;
    }
    if (!sufficient) return out;  // rounding noise dominates: centred enough
    x += alpha * step;
    current = next;
    if (stop(x)) return out;
  }
  out.ok = false;
  return out;
}

// Runs the barrier path; returns false when Newton failed outright.
template <typename Stop>
bool barrier_path(const ConvexProgram& prog, Eigen::VectorXd& x, const BarrierOptions& opt,
                  int& steps, Stop stop) {
  const double m = static_cast<double>(prog.constraints.size());
  double t = opt.t_initial;
  while (true) {
    const auto outcome = center(prog, x, t, opt.max_newton_steps - steps, stop);
    steps += outcome.steps;
    if (!outcome.ok) return false;
    if (stop(x)) return true;
    if (m / t < opt.duality_gap) return true;
    t *= opt.t_growth;
  }
}

bool strictly_feasible(const ConvexProgram& prog, const Eigen::VectorXd& x) {
  for (int j : prog.log_terms) {
    if (x[j] <= -1.0) return false;
  }
  return prog.max_violation(x) < 0.0;
}

}  // namespace

BarrierResult solve_barrier(const ConvexProgram& program, const Eigen::VectorXd& start,
                            const BarrierOptions& options) {
  BarrierResult result;
  Eigen::VectorXd x = start;
  int steps = 0;

  if (!strictly_feasible(program, x)) {
    // Phase I: minimise s subject to f_i(x) <= s, s >= -1.
    const int n = program.dimension();
    ConvexProgram phase1;
    phase1.linear = Eigen::VectorXd::Zero(n + 1);
    phase1.linear[n] = 1.0;
    for (const auto& c : program.constraints) {
      BarrierConstraint lifted;
      lifted.a.resize(n + 1);
      lifted.a << c.a, -1.0;
      lifted.b = c.b;
      if (c.q.size() > 0) {
        lifted.q = Eigen::VectorXd::Zero(n + 1);
        lifted.q.head(n) = c.q;
      }
      phase1.constraints.push_back(std::move(lifted));
    }
    BarrierConstraint floor;
    floor.a = Eigen::VectorXd::Zero(n + 1);
    floor.a[n] = -1.0;
    floor.b = -1.0;
    phase1.constraints.push_back(floor);

    Eigen::VectorXd z(n + 1);
    z << x, std::max(0.0, program.max_violation(x)) + 1.0;
    auto good_enough = [&](const Eigen::VectorXd& zz) {
      return zz[n] < 0.0 && strictly_feasible(program, zz.head(n));
    };
    barrier_path(phase1, z, options, steps, good_enough);
    result.newton_steps = steps;
    if (!good_enough(z)) {
      result.status = BarrierStatus::kInfeasible;
      result.x = z.head(n);
      result.objective = program.objective(result.x);
      return result;
    }
    x = z.head(n);
  }

  const bool ok = barrier_path(program, x, options, steps, [](const Eigen::VectorXd&) {
    return false;
  });
  result.status = ok ? BarrierStatus::kSolved : BarrierStatus::kStalled;
  result.x = x;
  result.objective = program.objective(x);
  result.newton_steps = steps;
  return result;
}

}  // namespace pinch
