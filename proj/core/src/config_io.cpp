// SPDX-License-Identifier: Apache-2.0

#include "pinch/config_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pinch {

namespace {

using nlohmann::json;

template <typename T>
void read_if(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

}  // namespace

ScenarioConfig parse_config(std::string_view json_text, ScenarioConfig base) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidConfig(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidConfig("config must be a JSON object");

  static const char* kKeys[] = {"K",     "M",       "N",          "D_x",   "D_y",
                                "d",     "f_c",     "n_eff",      "P_t_dBm",
                                "sigma2_dBm", "R_min", "seed",    "waveguide_y"};
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : kKeys) known = known || key == k;
    if (!known) throw InvalidConfig("unknown config key '" + key + "'");
  }

  try {
    read_if(j, "K", base.num_waveguides);
    read_if(j, "M", base.num_antennas);
    read_if(j, "N", base.num_users);
    read_if(j, "D_x", base.area_length);
    read_if(j, "D_y", base.area_width);
    read_if(j, "d", base.height);
    read_if(j, "f_c", base.carrier_hz);
    read_if(j, "n_eff", base.n_eff);
    read_if(j, "P_t_dBm", base.tx_power_dbm);
    read_if(j, "sigma2_dBm", base.noise_dbm);
    read_if(j, "R_min", base.min_rate);
    read_if(j, "seed", base.seed);
    if (auto it = j.find("waveguide_y"); it != j.end() && !it->is_null()) {
      base.waveguide_y = it->get<std::vector<double>>();
    }
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("config field has the wrong type: ") + e.what());
  }
  validate(base);
  return base;
}

ScenarioConfig load_config(const std::filesystem::path& path, ScenarioConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string to_json(const ScenarioConfig& c) {
  json j = {{"K", c.num_waveguides},   {"M", c.num_antennas},      {"N", c.num_users},
            {"D_x", c.area_length},    {"D_y", c.area_width},      {"d", c.height},
            {"f_c", c.carrier_hz},     {"n_eff", c.n_eff},         {"P_t_dBm", c.tx_power_dbm},
            {"sigma2_dBm", c.noise_dbm}, {"R_min", c.min_rate},    {"seed", c.seed}};
  if (c.waveguide_y) j["waveguide_y"] = *c.waveguide_y;
  return j.dump(2);
}

}  // namespace pinch
