// SPDX-License-Identifier: Apache-2.0

#include "pinch/baselines.hpp"

#include <array>
#include <cmath>
#include <string>

namespace pinch {

namespace {

constexpr std::array kSchemes = {SchemeId::kNomaCgSca,         SchemeId::kNomaCg,
                                 SchemeId::kNomaFixed,         SchemeId::kOmaPinching,
                                 SchemeId::kConventionalFixed, SchemeId::kSingleWaveguide};

}  // namespace

std::string_view to_string(SchemeId id) {
  switch (id) {
    case SchemeId::kNomaCgSca:
      return "noma_cg_sca";
    case SchemeId::kNomaCg:
      return "noma_cg";
    case SchemeId::kNomaFixed:
      return "noma_fixed";
    case SchemeId::kOmaPinching:
      return "oma_pinching";
    case SchemeId::kConventionalFixed:
      return "conventional_fixed";
    case SchemeId::kSingleWaveguide:
      return "single_waveguide";
  }
  return "unknown";
}

SchemeId parse_scheme(std::string_view name) {
  for (SchemeId id : kSchemes) {
    if (to_string(id) == name) return id;
  }
  throw InvalidConfig("unknown scheme: " + std::string(name));
}

std::span<const SchemeId> all_schemes() { return kSchemes; }

std::string_view to_string(PaSolver solver) {
  switch (solver) {
    case PaSolver::kMonotonic:
      return "mo";
    case PaSolver::kSca:
      return "sca";
    case PaSolver::kNone:
      return "none";
  }
  return "unknown";
}

PaSolver parse_pa_solver(std::string_view name) {
  if (name == "mo") return PaSolver::kMonotonic;
  if (name == "sca") return PaSolver::kSca;
  if (name == "none") return PaSolver::kNone;
  throw InvalidConfig("unknown power allocation solver: " + std::string(name));
}

PowerOutcome allocate_power(const GameState& state, const DerivedConstants& consts,
                            double min_rate, PaSolver solver, const PowerOptions& options) {
  const RateInputs in{state.channel, state.mask, state.assign, consts.tx_power_w, consts.noise_w};
  const DecodingPlan plan = optimal_order(in, full_budget_interference(in));
  PowerOutcome out;
  out.pa = PowerAllocation::equal_split(state.assign);
  if (solver != PaSolver::kNone) {
    for (int k = 0; k < state.assign.num_waveguides(); ++k) {
      if (!state.assign.serving(k)) continue;
      const WaveguideProblem prob =
          make_waveguide_problem(plan[k], state.mask.active_count(k), consts.tx_power_w, min_rate);
      const PaResult res = solver == PaSolver::kSca
                               ? static_cast<PaResult>(solve_sca(prob, options.sca))
                               : static_cast<PaResult>(solve_polyblock(prob, options.polyblock));
      out.iterations += res.iterations;
      out.qos_infeasible |= res.status == PaStatus::kInfeasibleQos;
      scatter(plan[k], k, res.p, out.pa);
    }
  }
  out.report = rates_under_optimal_order(in, plan, out.pa, min_rate);
  return out;
}

RateReport equal_split_rates(const GameState& state, const DerivedConstants& consts,
                             double min_rate) {
  return allocate_power(state, consts, min_rate, PaSolver::kNone).report;
}

Drop conventional_geometry(const Drop& drop, const DerivedConstants& consts) {
  Drop conv;
  conv.users = drop.users;
  conv.height = drop.height;
  const int m_count = drop.num_antennas();
  conv.antenna_x.resize(m_count);
  for (int m = 0; m < m_count; ++m) {
    conv.antenna_x[m] = (m - (m_count - 1) / 2.0) * consts.wavelength / 2.0;
  }
  conv.waveguide_y = {0.0};
  conv.feed_x = conv.antenna_x.front();
  return conv;
}

RateReport conventional_fixed(const Drop& drop, const DerivedConstants& consts,
                              double min_rate) {
  const Drop conv = conventional_geometry(drop, consts);
  GameState state;
  state.assign = AssignmentState(1, std::vector<int>(drop.num_users(), 0));
  state.mask = ActivationMask::all_active(1, conv.num_antennas());
  state.channel = effective_channel(conv, consts, state.mask);
  return equal_split_rates(state, consts, min_rate);
}

RateReport oma_pinching(const Drop& drop, const DerivedConstants& consts, double min_rate) {
  const int n_count = drop.num_users();
  RateReport r;
  r.rate.assign(n_count, 0.0);
  r.waveguide_sum.assign(drop.num_waveguides(), 0.0);
  r.outage.assign(n_count, false);
  for (int n = 0; n < n_count; ++n) {
    const Point2& u = drop.users[n];
    int k = 0;
    for (int j = 1; j < drop.num_waveguides(); ++j) {
      if (std::abs(drop.waveguide_y[j] - u.y) < std::abs(drop.waveguide_y[k] - u.y)) k = j;
    }
    int m = 0;
    for (int j = 1; j < drop.num_antennas(); ++j) {
      if (std::abs(drop.antenna_x[j] - u.x) < std::abs(drop.antenna_x[m] - u.x)) m = j;
    }
    const double gain = std::norm(antenna_term(drop, consts, drop.antenna_x[m],
                                               drop.waveguide_y[k], u));
    r.rate[n] = log2_1p(consts.tx_power_w * gain / consts.noise_w) / n_count;
    r.waveguide_sum[k] += r.rate[n];
    r.total += r.rate[n];
    r.outage[n] = r.rate[n] < min_rate - kRateTolerance;
  }
  return r;
}

RateReport noma_fixed(const Drop& drop, const DerivedConstants& consts, double min_rate) {
  const CoalitionGame game(drop, consts);
  return equal_split_rates(game.initialize(), consts, min_rate);
}

}  // namespace pinch
