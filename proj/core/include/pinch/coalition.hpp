// SPDX-License-Identifier: Apache-2.0
//
// Coalition-formation games for waveguide assignment (users switch waveguide)
// and antenna activation (antennas join or leave their waveguide's active
// set). A move is taken only when it strictly raises the coalition value, the
// system sum rate with equal power split and the optimal decoding order.

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "pinch/channel.hpp"
#include "pinch/rates.hpp"

namespace pinch {

enum class MoveType { kUserMove, kAntennaOn, kAntennaOff };

std::string_view to_string(MoveType type);

struct MoveRecord {
  int cycle = 0;
  MoveType type = MoveType::kUserMove;
  int user = -1;     // set for user moves
  int waveguide = 0; // destination waveguide, or the toggled antenna's
  int antenna = -1;  // set for toggles
  double value_before = 0.0;
  double value_after = 0.0;

  double delta() const { return value_after - value_before; }
};

struct GameState {
  AssignmentState assign;
  ActivationMask mask;
  ChannelMatrix channel;
  double value = 0.0;  // sum rate [bit/s/Hz]
  int cycle_count = 0;
  std::vector<MoveRecord> move_log;
  std::vector<int> evaluations_per_cycle;
};

struct GameOptions {
  int max_cycles = 0;  // 0 selects 10 K M N
};

class CoalitionDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CoalitionGame {
 public:
  CoalitionGame(const Drop& drop, const DerivedConstants& consts, GameOptions options = {});

  // Nearest waveguide per user (by |y|), nearest antenna per user activated.
  GameState initialize() const;

  // Equal-split sum rate of (assign, mask) with `channel` already matching mask.
  double value(const AssignmentState& assign, const ActivationMask& mask,
               const ChannelMatrix& channel) const;

  // Apply the move in place when it strictly improves the value. A user
  // joining an idle waveguide switches on its nearest antenna there; a
  // waveguide left empty has all antennas switched off.
  bool try_user_move(GameState& state, int user, int waveguide) const;

  // Toggling off the last active antenna of a serving waveguide is rejected
  // up front; toggles on idle waveguides throw std::invalid_argument.
  bool try_antenna_toggle(GameState& state, int waveguide, int antenna) const;

  // Cycles over waveguides (user moves, then toggles) until a full cycle
  // accepts nothing. Throws CoalitionDiverged past the cycle cap.
  GameState run(GameState state) const;

  bool is_nash_stable(const GameState& state) const;

  const AntennaTerms& terms() const { return terms_; }

 private:
  struct Candidate {
    AssignmentState assign;
    ActivationMask mask;
    ChannelMatrix channel;
    double value = 0.0;
  };

  Candidate user_move_candidate(const GameState& state, int user, int waveguide) const;
  Candidate toggle_candidate(const GameState& state, int waveguide, int antenna) const;
  bool toggle_allowed(const GameState& state, int waveguide, int antenna) const;
  int nearest_antenna(int user) const;

  const Drop& drop_;
  DerivedConstants consts_;
  AntennaTerms terms_;
  GameOptions options_;
};

// One JSON object per accepted move: cycle, move, user, waveguide, antenna,
// value, delta.
void write_move_log(std::ostream& out, const std::vector<MoveRecord>& moves);

}  // namespace pinch
