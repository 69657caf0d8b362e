// SPDX-License-Identifier: Apache-2.0

#include "pinch/config_io.hpp"

#include <gtest/gtest.h>

namespace pinch {
namespace {

TEST(ConfigIo, ParsesAllKeys) {
  const auto cfg = parse_config(R"({"K": 3, "M": 10, "N": 6, "D_x": 12, "D_y": 9, "d": 2.5,
      "f_c": 30e9, "n_eff": 1.5, "P_t_dBm": 20, "sigma2_dBm": -80, "R_min": 0.3,
      "seed": 99, "waveguide_y": [-3, 0, 3]})");
  EXPECT_EQ(cfg.num_waveguides, 3);
  EXPECT_EQ(cfg.num_antennas, 10);
  EXPECT_EQ(cfg.num_users, 6);
  EXPECT_DOUBLE_EQ(cfg.area_length, 12);
  EXPECT_DOUBLE_EQ(cfg.area_width, 9);
  EXPECT_DOUBLE_EQ(cfg.height, 2.5);
  EXPECT_DOUBLE_EQ(cfg.carrier_hz, 30e9);
  EXPECT_DOUBLE_EQ(cfg.n_eff, 1.5);
  EXPECT_DOUBLE_EQ(cfg.tx_power_dbm, 20);
  EXPECT_DOUBLE_EQ(cfg.noise_dbm, -80);
  EXPECT_DOUBLE_EQ(cfg.min_rate, 0.3);
  EXPECT_EQ(cfg.seed, 99u);
  ASSERT_TRUE(cfg.waveguide_y.has_value());
  EXPECT_EQ(cfg.waveguide_y->size(), 3u);
}

TEST(ConfigIo, MissingKeysKeepBase) {
  ScenarioConfig base;
  base.num_users = 5;
  const auto cfg = parse_config(R"({"K": 1})", base);
  EXPECT_EQ(cfg.num_waveguides, 1);
  EXPECT_EQ(cfg.num_users, 5);
}

TEST(ConfigIo, RejectsUnknownKey) {
  EXPECT_THROW(parse_config(R"({"Pt": 10})"), InvalidConfig);
}

TEST(ConfigIo, RejectsBadJsonAndTypes) {
  EXPECT_THROW(parse_config("{"), InvalidConfig);
  EXPECT_THROW(parse_config("[1, 2]"), InvalidConfig);
  EXPECT_THROW(parse_config(R"({"K": "two"})"), InvalidConfig);
}

TEST(ConfigIo, ValidatesResult) {
  EXPECT_THROW(parse_config(R"({"M": 1})"), InvalidConfig);
}

TEST(ConfigIo, RoundTrip) {
  ScenarioConfig cfg;
  cfg.num_waveguides = 3;
  cfg.min_rate = 0.25;
  cfg.waveguide_y = std::vector<double>{-2, 0, 2};
  const auto back = parse_config(to_json(cfg));
  EXPECT_EQ(back.num_waveguides, 3);
  EXPECT_DOUBLE_EQ(back.min_rate, 0.25);
  EXPECT_EQ(*back.waveguide_y, *cfg.waveguide_y);
  EXPECT_EQ(back.seed, cfg.seed);
}

}  // namespace
}  // namespace pinch
