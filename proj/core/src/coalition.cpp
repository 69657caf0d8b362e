// SPDX-License-Identifier: Apache-2.0

#include "pinch/coalition.hpp"

#include <cmath>
#include <ostream>

#include "json.hpp"

namespace pinch {

std::string_view to_string(MoveType type) {
  switch (type) {
    case MoveType::kUserMove:
      return "user_move";
    case MoveType::kAntennaOn:
      return "antenna_on";
    case MoveType::kAntennaOff:
      return "antenna_off";
  }
  return "unknown";
}

CoalitionGame::CoalitionGame(const Drop& drop, const DerivedConstants& consts,
                             GameOptions options)
    : drop_(drop), consts_(consts), terms_(drop, consts), options_(options) {
  if (options_.max_cycles <= 0) {
    options_.max_cycles = 10 * drop.num_waveguides() * drop.num_antennas() * drop.num_users();
  }
}

int CoalitionGame::nearest_antenna(int user) const {
  const double x = drop_.users[user].x;
  int best = 0;
  for (int m = 1; m < drop_.num_antennas(); ++m) {
    if (std::abs(drop_.antenna_x[m] - x) < std::abs(drop_.antenna_x[best] - x)) best = m;
  }
  return best;
}

double CoalitionGame::value(const AssignmentState& assign, const ActivationMask& mask,
                            const ChannelMatrix& channel) const {
  const RateInputs in{channel, mask, assign, consts_.tx_power_w, consts_.noise_w};
  const Eigen::MatrixXd intf = full_budget_interference(in);
  const DecodingPlan plan = optimal_order(in, intf);
  return rates_under_optimal_order(in, plan, PowerAllocation::equal_split(assign), 0.0).total;
}

GameState CoalitionGame::initialize() const {
  const int k_count = drop_.num_waveguides();
  std::vector<int> wg(drop_.num_users());
  for (int n = 0; n < drop_.num_users(); ++n) {
    const double y = drop_.users[n].y;
    int best = 0;
    for (int k = 1; k < k_count; ++k) {
      if (std::abs(drop_.waveguide_y[k] - y) < std::abs(drop_.waveguide_y[best] - y)) best = k;
    }
    wg[n] = best;
  }
  GameState state;
  state.assign = AssignmentState(k_count, std::move(wg));
  state.mask = ActivationMask(k_count, drop_.num_antennas());
  for (int n = 0; n < drop_.num_users(); ++n) {
    state.mask.set(state.assign.waveguide_of(n), nearest_antenna(n), true);
  }
  state.channel = effective_channel(terms_, state.mask);
  state.value = value(state.assign, state.mask, state.channel);
  return state;
}

CoalitionGame::Candidate CoalitionGame::user_move_candidate(const GameState& state, int user,
                                                            int waveguide) const {
  Candidate c{state.assign, state.mask, state.channel, 0.0};
  const int from = c.assign.waveguide_of(user);
  c.assign.move(user, waveguide);
  if (!c.assign.serving(from)) {
    c.mask.clear_waveguide(from);
    update_channel_row(terms_, c.mask, from, c.channel);
  }
  if (c.mask.active_count(waveguide) == 0) {
    c.mask.set(waveguide, nearest_antenna(user), true);
    update_channel_row(terms_, c.mask, waveguide, c.channel);
  }
  c.value = value(c.assign, c.mask, c.channel);
  return c;
}

bool CoalitionGame::toggle_allowed(const GameState& state, int waveguide, int antenna) const {
  return !(state.mask.active(waveguide, antenna) && state.mask.active_count(waveguide) == 1);
}

CoalitionGame::Candidate CoalitionGame::toggle_candidate(const GameState& state, int waveguide,
                                                         int antenna) const {
  if (!state.assign.serving(waveguide)) {
    throw std::invalid_argument("antenna toggles need a waveguide that serves users");
  }
  Candidate c{state.assign, state.mask, state.channel, 0.0};
  c.mask.set(waveguide, antenna, !c.mask.active(waveguide, antenna));
  update_channel_row(terms_, c.mask, waveguide, c.channel);
  c.value = value(c.assign, c.mask, c.channel);
  return c;
}

bool CoalitionGame::try_user_move(GameState& state, int user, int waveguide) const {
  if (state.assign.waveguide_of(user) == waveguide) return false;
  Candidate c = user_move_candidate(state, user, waveguide);
  if (!(c.value > state.value)) return false;
  state.move_log.push_back({state.cycle_count, MoveType::kUserMove, user, waveguide, -1,
                            state.value, c.value});
  state.assign = std::move(c.assign);
  state.mask = std::move(c.mask);
  state.channel = std::move(c.channel);
  state.value = c.value;
  return true;
}

bool CoalitionGame::try_antenna_toggle(GameState& state, int waveguide, int antenna) const {
  if (!toggle_allowed(state, waveguide, antenna)) return false;
  const bool turning_on = !state.mask.active(waveguide, antenna);
  Candidate c = toggle_candidate(state, waveguide, antenna);
  if (!(c.value > state.value)) return false;
  state.move_log.push_back({state.cycle_count,
                            turning_on ? MoveType::kAntennaOn : MoveType::kAntennaOff, -1,
                            waveguide, antenna, state.value, c.value});
  state.mask = std::move(c.mask);
  state.channel = std::move(c.channel);
  state.value = c.value;
  return true;
}

GameState CoalitionGame::run(GameState state) const {
  const int k_count = state.assign.num_waveguides();
  const int n_count = state.assign.num_users();
  const int m_count = state.mask.num_antennas();
  while (true) {
    if (state.cycle_count >= options_.max_cycles) {
      throw CoalitionDiverged("coalition game exceeded its cycle cap");
    }
    ++state.cycle_count;
    int evaluations = 0;
    bool changed = false;
    for (int k = 0; k < k_count; ++k) {
      for (int n = 0; n < n_count; ++n) {
        if (state.assign.waveguide_of(n) == k) continue;
        ++evaluations;
        changed |= try_user_move(state, n, k);
      }
      if (!state.assign.serving(k)) continue;
      for (int m = 0; m < m_count; ++m) {
        if (!toggle_allowed(state, k, m)) continue;
        ++evaluations;
        changed |= try_antenna_toggle(state, k, m);
      }
    }
    state.evaluations_per_cycle.push_back(evaluations);
    if (!changed) return state;
  }
}

bool CoalitionGame::is_nash_stable(const GameState& state) const {
  for (int n = 0; n < state.assign.num_users(); ++n) {
    for (int k = 0; k < state.assign.num_waveguides(); ++k) {
      if (state.assign.waveguide_of(n) == k) continue;
      if (user_move_candidate(state, n, k).value > state.value) return false;
    }
  }
  for (int k = 0; k < state.assign.num_waveguides(); ++k) {
    if (!state.assign.serving(k)) continue;
    for (int m = 0; m < state.mask.num_antennas(); ++m) {
      if (!toggle_allowed(state, k, m)) continue;
      if (toggle_candidate(state, k, m).value > state.value) return false;
    }
  }
  return true;
}

void write_move_log(std::ostream& out, const std::vector<MoveRecord>& moves) {
  for (const auto& mv : moves) {
    nlohmann::json j = {{"cycle", mv.cycle},
                        {"move", to_string(mv.type)},
                        {"user", mv.user},
                        {"waveguide", mv.waveguide},
                        {"antenna", mv.antenna},
                        {"value", mv.value_after},
                        {"delta", mv.delta()}};
    out << j.dump() << '\n';
  }
}

}  // namespace pinch
