// SPDX-License-Identifier: Apache-2.0
//
// Scheme catalogue and the reference systems the optimised NOMA system is
// compared against, plus the power-allocation stage that follows the
// coalition game.

#pragma once

#include <span>
#include <string_view>

#include "pinch/coalition.hpp"
#include "pinch/power_mo.hpp"
#include "pinch/power_sca.hpp"

namespace pinch {

enum class SchemeId {
  kNomaCgSca,          // coalition game, then the configured PA solver
  kNomaCg,             // coalition game with equal power split
  kNomaFixed,          // nearest assignment/activation, equal split
  kOmaPinching,        // time sharing, nearest antenna on nearest waveguide
  kConventionalFixed,  // central fixed half-wavelength array
  kSingleWaveguide,    // one central waveguide, coalition game + PA solver
};

std::string_view to_string(SchemeId id);
// Accepts the CSV names (noma_cg_sca, ...). Throws InvalidConfig otherwise.
SchemeId parse_scheme(std::string_view name);
std::span<const SchemeId> all_schemes();

enum class PaSolver { kMonotonic, kSca, kNone };

std::string_view to_string(PaSolver solver);
// "mo", "sca" or "none".
PaSolver parse_pa_solver(std::string_view name);

struct PowerOutcome {
  PowerAllocation pa;
  RateReport report;
  int iterations = 0;         // summed over waveguides
  bool qos_infeasible = false;
};

struct PowerOptions {
  PolyblockOptions polyblock;
  ScaOptions sca;
};

// Optimal order under full-budget interference, then one independent PA
// problem per serving waveguide. kNone keeps the equal split.
PowerOutcome allocate_power(const GameState& state, const DerivedConstants& consts,
                            double min_rate, PaSolver solver, const PowerOptions& options = {});

// Equal split with the optimal order for a fixed structure.
RateReport equal_split_rates(const GameState& state, const DerivedConstants& consts,
                             double min_rate);

// M antennas at x = (m - (M-1)/2) lambda/2 on one waveguide at y = 0, fed at
// the first element. Users are the drop's users.
Drop conventional_geometry(const Drop& drop, const DerivedConstants& consts);

// All elements active, every user on the single waveguide, equal split.
RateReport conventional_fixed(const Drop& drop, const DerivedConstants& consts,
                              double min_rate);

// Each user gets a 1/N time share served alone by its nearest antenna on its
// nearest waveguide: R_n = log2(1 + P_t |h|^2 / sigma^2) / N.
RateReport oma_pinching(const Drop& drop, const DerivedConstants& consts, double min_rate);

// Coalition-game initial structure without any moves, equal split.
RateReport noma_fixed(const Drop& drop, const DerivedConstants& consts, double min_rate);

}  // namespace pinch
