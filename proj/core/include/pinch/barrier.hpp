// SPDX-License-Identifier: Apache-2.0
//
// Small dense log-barrier interior-point method for
//
//   minimize    c^T x - sum_{j in L} log(1 + x_j)
//   subject to  a_i^T x + b_i + 1/2 sum_j q_ij x_j^2 <= 0,   q_ij >= 0,
//
// i.e. a separable concave-log objective over linear and diagonal-quadratic
// convex constraints. A phase-I problem finds a strictly feasible start.

#pragma once

#include <vector>

#include <Eigen/Core>

namespace pinch {

struct BarrierConstraint {
  Eigen::VectorXd a;
  double b = 0.0;
  Eigen::VectorXd q;  // diagonal curvature; empty for a linear constraint

  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
};

struct ConvexProgram {
  Eigen::VectorXd linear;        // c
  std::vector<int> log_terms;    // L
  std::vector<BarrierConstraint> constraints;

  int dimension() const { return static_cast<int>(linear.size()); }
  double objective(const Eigen::VectorXd& x) const;
  double max_violation(const Eigen::VectorXd& x) const;
};

struct BarrierOptions {
  double duality_gap = 1e-10;  // stop when m / t falls below this
  double t_initial = 1.0;
  double t_growth = 20.0;
  int max_newton_steps = 500;
};

enum class BarrierStatus { kSolved, kInfeasible, kStalled };

struct BarrierResult {
  BarrierStatus status = BarrierStatus::kStalled;
  Eigen::VectorXd x;
  double objective = 0.0;
  int newton_steps = 0;
};

// `start` need not be feasible; phase I runs whenever it is not strictly so.
BarrierResult solve_barrier(const ConvexProgram& program, const Eigen::VectorXd& start,
                            const BarrierOptions& options = {});

}  // namespace pinch
