// SPDX-License-Identifier: Apache-2.0

#include "pinch/power_mo.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pinch {

namespace polyblock {

std::vector<double> project(std::span<const double> v) {
  const std::vector<double> ones(v.size(), 1.0);
  return project(v, ones, 1.0);
}

std::vector<double> project(std::span<const double> v, std::span<const double> weights,
                            double budget) {
  double load = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) load += weights[i] * v[i];
  if (load <= 0.0) throw std::invalid_argument("cannot project an all-zero vertex");
  const double zeta = std::min(1.0, budget / load);
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x *= zeta;
  return out;
}

std::vector<std::vector<double>> split(std::span<const double> v, std::span<const double> phi) {
  std::vector<std::vector<double>> children;
  children.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::vector<double> child(v.begin(), v.end());
    child[i] = phi[i];
    children.push_back(std::move(child));
  }
  return children;
}

bool dominated_by(std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

void prune(std::vector<Vertex>& vertices, double best) {
  std::vector<bool> keep(vertices.size(), false);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].bound <= best) continue;
    bool drop = false;
    for (std::size_t j = 0; j < vertices.size() && !drop; ++j) {
      if (i == j || vertices[j].bound <= best) continue;
      if (dominated_by(vertices[i].point, vertices[j].point)) {
        // Mutual domination means duplicates: keep the earlier one.
        drop = !dominated_by(vertices[j].point, vertices[i].point) || j < i;
      }
    }
    keep[i] = !drop;
  }
  std::vector<Vertex> kept;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (keep[i]) kept.push_back(std::move(vertices[i]));
  }
  vertices = std::move(kept);
}

}  // namespace polyblock

namespace {

constexpr double kZeroFloor = 1e-12;

class ShiftedSpace {
 public:
  explicit ShiftedSpace(const WaveguideProblem& prob) : prob_(prob) {
    const int n = prob.size();
    x_min_.resize(n);
    weights_.resize(n);
    double a = 1.0;
    for (int i = 0; i < n; ++i) {
      x_min_[i] = prob.min_sinr[i] * prob.sic[i];
      weights_[i] = a;
      a *= 1.0 + prob.min_sinr[i];
    }
    budget_ = 1.0;
    for (int i = 0; i < n; ++i) budget_ -= weights_[i] * x_min_[i];
  }

  double budget() const { return budget_; }
  std::span<const double> weights() const { return weights_; }

  std::vector<double> to_power(std::span<const double> y) const {
    const int n = prob_.size();
    std::vector<double> p(n);
    double later = 0.0;
    for (int i = n - 1; i >= 0; --i) {
      p[i] = x_min_[i] + y[i] + prob_.min_sinr[i] * later;
      later += p[i];
    }
    return p;
  }

  double value(std::span<const double> y) const { return sum_rate(prob_, to_power(y)); }

 private:
  const WaveguideProblem& prob_;
  std::vector<double> x_min_;
  std::vector<double> weights_;
  double budget_ = 1.0;
};

void floor_small(std::vector<double>& v) {
  for (double& x : v) {
    if (x < kZeroFloor) x = 0.0;
  }
}

PolyblockResult search(const WaveguideProblem& prob, const PolyblockOptions& opt) {
  using polyblock::Vertex;
  PolyblockResult result;
  const int n = prob.size();
  const ShiftedSpace space(prob);
  const double budget = std::max(0.0, space.budget());

  // The incumbent starts at the best extreme point of the budget simplex,
  // which are feasible boundary points like any projection.
  std::vector<double> best_y(n, 0.0);
  result.value = space.value(best_y);
  for (int i = 0; i < n; ++i) {
    std::vector<double> corner(n, 0.0);
    corner[i] = budget / space.weights()[i];
    floor_small(corner);
    const double v = space.value(corner);
    if (v > result.value) {
      result.value = v;
      best_y = std::move(corner);
    }
  }

  std::vector<Vertex> vertices;
  {
    Vertex root;
    root.point.resize(n);
    for (int i = 0; i < n; ++i) root.point[i] = budget / space.weights()[i];
    floor_small(root.point);
    root.bound = space.value(root.point);
    vertices.push_back(std::move(root));
  }
  result.upper_bound = vertices.front().bound;
  result.status = PaStatus::kIterationCap;

  for (int iter = 1; iter <= opt.max_iter; ++iter) {
    if (vertices.empty()) {
      result.upper_bound = result.value;
      result.status = PaStatus::kConverged;
      break;
    }
    const auto selected = std::max_element(
        vertices.begin(), vertices.end(),
        [](const Vertex& a, const Vertex& b) { return a.bound < b.bound; });
    const double upper = selected->bound;
    result.upper_bound = upper;
    if (upper - result.value <= opt.epsilon) {
      result.status = PaStatus::kConverged;
      break;
    }
    Vertex v = std::move(*selected);
    vertices.erase(selected);

    const double load = std::inner_product(v.point.begin(), v.point.end(),
                                           space.weights().begin(), 0.0);
    std::vector<double> phi =
        load > 0.0 ? polyblock::project(v.point, space.weights(), budget) : v.point;
    floor_small(phi);
    const double phi_value = space.value(phi);
    if (phi_value > result.value) {
      result.value = phi_value;
      best_y = phi;
    }

    auto children = polyblock::split(v.point, phi);
    for (int i = 0; i < n; ++i) {
      // A coordinate the projection did not shorten gives back v itself.
      if (phi[i] >= v.point[i]) continue;
      Vertex c{std::move(children[i]), 0.0};
      floor_small(c.point);
      c.bound = space.value(c.point);
      if (c.bound <= result.value) continue;
      const bool covered = std::any_of(vertices.begin(), vertices.end(), [&](const Vertex& w) {
        return polyblock::dominated_by(c.point, w.point);
      });
      if (!covered) vertices.push_back(std::move(c));
    }
    if (phi_value >= result.value) {
      std::erase_if(vertices, [&](const Vertex& w) { return w.bound <= result.value; });
    }
    result.iterations = iter;
    if (opt.record_trace) {
      result.trace.push_back({iter, upper, result.value, static_cast<int>(vertices.size())});
    }
  }
  result.p = space.to_power(best_y);
  return result;
}

}  // namespace

PolyblockResult solve_polyblock(const WaveguideProblem& prob, const PolyblockOptions& options) {
  if (prob.size() == 0) return {};
  const bool feasible = [&] {
    const auto p_min = min_power_allocation(prob);
    return std::accumulate(p_min.begin(), p_min.end(), 0.0) <= 1.0;
  }();
  if (!feasible) {
    PolyblockResult r = search(restrict_to_satisfiable(prob), options);
    r.status = PaStatus::kInfeasibleQos;
    return r;
  }
  return search(prob, options);
}

}  // namespace pinch
