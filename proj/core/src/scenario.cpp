// SPDX-License-Identifier: Apache-2.0

#include "pinch/scenario.hpp"

#include <cmath>
#include <string>

namespace pinch {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

void validate(const ScenarioConfig& c) {
  auto fail = [](const std::string& what) { throw InvalidConfig("invalid scenario: " + what); };
  if (c.num_waveguides < 1) fail("K must be >= 1");
  if (c.num_antennas < 2) fail("M must be >= 2");
  if (c.num_users < 1) fail("N must be >= 1");
  if (!(c.area_length > 0.0)) fail("D_x must be positive");
  if (!(c.area_width > 0.0)) fail("D_y must be positive");
  if (!(c.height > 0.0)) fail("d must be positive");
  if (!(c.carrier_hz > 0.0)) fail("f_c must be positive");
  if (!(c.n_eff >= 1.0)) fail("n_eff must be >= 1");
  if (!std::isfinite(c.tx_power_dbm) || !std::isfinite(c.noise_dbm)) fail("powers must be finite");
  if (!(c.min_rate >= 0.0)) fail("R_min must be >= 0");
  if (c.waveguide_y && static_cast<int>(c.waveguide_y->size()) != c.num_waveguides) {
    fail("waveguide_y must list exactly K positions");
  }
  const double wavelength = kSpeedOfLight / c.carrier_hz;
  const double spacing = c.area_length / (c.num_antennas - 1);
  if (spacing < wavelength / 2.0) {
    fail("antenna spacing D_x/(M-1) is below half a wavelength");
  }
}

DerivedConstants build_derived(const ScenarioConfig& config) {
  validate(config);
  DerivedConstants out;
  out.wavelength = kSpeedOfLight / config.carrier_hz;
  out.guided_wavelength = out.wavelength / config.n_eff;
  out.eta = kSpeedOfLight / (4.0 * kPi * config.carrier_hz);
  out.tx_power_w = dbm_to_watts(config.tx_power_dbm);
  out.noise_w = dbm_to_watts(config.noise_dbm);
  return out;
}

std::vector<double> antenna_positions(const ScenarioConfig& config) {
  const int m_count = config.num_antennas;
  std::vector<double> x(m_count);
  const double step = config.area_length / (m_count - 1);
  for (int m = 0; m < m_count; ++m) x[m] = -config.area_length / 2.0 + m * step;
  return x;
}

std::vector<double> waveguide_positions(const ScenarioConfig& config) {
  if (config.waveguide_y) return *config.waveguide_y;
  const int k_count = config.num_waveguides;
  std::vector<double> y(k_count);
  for (int k = 0; k < k_count; ++k) {
    y[k] = ((k + 1) - (k_count + 1) / 2.0) * config.area_width / k_count;
  }
  return y;
}

Drop make_drop(const ScenarioConfig& config, std::vector<Point2> users) {
  validate(config);
  Drop drop;
  drop.users = std::move(users);
  drop.antenna_x = antenna_positions(config);
  drop.waveguide_y = waveguide_positions(config);
  drop.feed_x = -config.area_length / 2.0;
  drop.height = config.height;
  return drop;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Drop sample_drop(const ScenarioConfig& config, std::mt19937_64& rng) {
  std::vector<Point2> users(config.num_users);
  for (auto& u : users) {
    u.x = (uniform01(rng) - 0.5) * config.area_length;
    u.y = (uniform01(rng) - 0.5) * config.area_width;
  }
  return make_drop(config, std::move(users));
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace pinch
