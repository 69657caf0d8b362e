// SPDX-License-Identifier: Apache-2.0
//
// JSON scenario files. Keys mirror the symbolic field names:
//
//   {"K": 2, "M": 20, "N": 8, "D_x": 10, "D_y": 8, "d": 3, "f_c": 28e9,
//    "n_eff": 1.4, "P_t_dBm": 10, "sigma2_dBm": -90, "R_min": 0.1,
//    "seed": 1, "waveguide_y": [-2, 2]}
//
// Every key is optional; missing keys keep the ScenarioConfig defaults.
// Unknown keys are rejected so that typos do not silently fall back.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pinch/scenario.hpp"

namespace pinch {

ScenarioConfig parse_config(std::string_view json_text, ScenarioConfig base = {});
ScenarioConfig load_config(const std::filesystem::path& path, ScenarioConfig base = {});
std::string to_json(const ScenarioConfig& config);

}  // namespace pinch
