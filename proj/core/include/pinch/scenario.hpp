// SPDX-License-Identifier: Apache-2.0
//
// Scenario configuration, physical constants and random user placement for a
// multi-waveguide pinching-antenna downlink.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pinch {

inline constexpr double kSpeedOfLight = 2.998e8;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// All physical and system parameters of one deployment. The JSON schema (see
// config_io.hpp) uses the short symbolic keys given in the trailing comments.
struct ScenarioConfig {
  int num_waveguides = 2;    // K
  int num_antennas = 20;     // M, potential pinching antennas per waveguide
  int num_users = 8;         // N
  double area_length = 10.0; // D_x [m], measured along the waveguides
  double area_width = 8.0;   // D_y [m]
  double height = 3.0;       // d [m], waveguide height above the users
  double carrier_hz = 28e9;  // f_c
  double n_eff = 1.4;        // effective refractive index of the waveguide
  double tx_power_dbm = 10.0;// P_t, available at each waveguide
  double noise_dbm = -90.0;  // sigma^2
  double min_rate = 0.1;     // R_min [bit/s/Hz]
  std::uint64_t seed = 1;

  // Overrides the default waveguide placement rule when set (size K).
  std::optional<std::vector<double>> waveguide_y;
};

struct DerivedConstants {
  double wavelength = 0.0;         // lambda = c / f_c
  double guided_wavelength = 0.0;  // lambda_g = lambda / n_eff
  double eta = 0.0;                // c / (4 pi f_c)
  double tx_power_w = 0.0;
  double noise_w = 0.0;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// One random user placement plus the fixed antenna/waveguide/feed geometry.
// Coordinates have their origin at the centre of the service area.
struct Drop {
  std::vector<Point2> users;
  std::vector<double> antenna_x;    // x of the M pre-configured positions
  std::vector<double> waveguide_y;  // y of each waveguide
  double feed_x = 0.0;              // x of every waveguide's feed point
  double height = 0.0;

  int num_users() const { return static_cast<int>(users.size()); }
  int num_antennas() const { return static_cast<int>(antenna_x.size()); }
  int num_waveguides() const { return static_cast<int>(waveguide_y.size()); }
};

double dbm_to_watts(double dbm);

// Throws InvalidConfig when a field is out of range or the antenna spacing
// D_x/(M-1) is below half a wavelength.
void validate(const ScenarioConfig& config);

DerivedConstants build_derived(const ScenarioConfig& config);

// x_m = -D_x/2 + (m-1) D_x/(M-1), m = 1..M.
std::vector<double> antenna_positions(const ScenarioConfig& config);

// y_k = (k - (K+1)/2) D_y / K unless overridden in the config.
std::vector<double> waveguide_positions(const ScenarioConfig& config);

// Geometry with caller-supplied user positions.
Drop make_drop(const ScenarioConfig& config, std::vector<Point2> users);

// Users i.i.d. uniform over [-D_x/2, D_x/2] x [-D_y/2, D_y/2].
Drop sample_drop(const ScenarioConfig& config, std::mt19937_64& rng);

// Uniform double in [0, 1) built from the top 53 bits of one engine draw, so
// drops are reproducible across standard library implementations.
double uniform01(std::mt19937_64& rng);

// SplitMix64 finaliser over (master, stream); used for per-trial seeding.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace pinch
