// Copyright 2026 The mmshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mmshare/propagation.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace mmshare
{
namespace
{

using testing::layout;

TEST(PathLoss, LogDistanceExamples)
{
  const RadioConfig cfg;
  EXPECT_DOUBLE_EQ(path_loss_db(1.0, 0, false, cfg), 68.0);
  EXPECT_DOUBLE_EQ(path_loss_db(10.0, 0, false, cfg), 88.0);
  EXPECT_DOUBLE_EQ(path_loss_db(10.0, 2, false, cfg), 108.0);
  EXPECT_EQ(path_loss_db(10.0, 0, true, cfg), kInfinity);
}

TEST(PathLoss, RejectsNonPositiveDistance)
{
  const RadioConfig cfg;
  EXPECT_THROW(path_loss_db(0.0, 0, false, cfg), std::domain_error);
  EXPECT_THROW(path_loss_db(-3.0, 0, false, cfg), std::domain_error);
}

TEST(PathLoss, MonotoneInDistanceAndBlockers)
{
  const RadioConfig cfg;
  double prev = path_loss_db(0.5, 0, false, cfg);
  for (double d = 1.0; d < 500.0; d *= 1.3) {
    const double pl = path_loss_db(d, 0, false, cfg);
    EXPECT_GT(pl, prev);
    EXPECT_DOUBLE_EQ(path_loss_db(d, 3, false, cfg), pl + 30.0);
    prev = pl;
  }
}

TEST(AntennaGain, PatternExamples)
{
  const RadioConfig cfg;
  const double g0 = boresight_gain_dbi(15.0);
  // (1.6162 / sin(7.5 deg))^2 in dB, computed independently.
  const double expected = 20.0 * std::log10(1.6162 / std::sin(7.5 * std::numbers::pi / 180.0));
  EXPECT_NEAR(g0, expected, 1e-12);
  EXPECT_NEAR(g0, 21.86, 0.005);
  EXPECT_DOUBLE_EQ(antenna_gain_dbi(0.0, cfg), g0);
  EXPECT_NEAR(antenna_gain_dbi(7.5, cfg), g0 - 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(antenna_gain_dbi(90.0, cfg), -10.0);
  EXPECT_DOUBLE_EQ(antenna_gain_dbi(180.0, cfg), -10.0);
}

TEST(AntennaGain, SymmetricAndNonIncreasing)
{
  RadioConfig cfg;
  for (const double bw : {5.0, 15.0, 30.0, 60.0}) {
    cfg.beamwidth_3dB = bw;
    double prev = antenna_gain_dbi(0.0, cfg);
    for (double off = 0.5; off <= 180.0; off += 0.5) {
      const double gain = antenna_gain_dbi(off, cfg);
      EXPECT_LE(gain, prev);
      EXPECT_GE(gain, cfg.sidelobe_floor);
      prev = gain;
    }
  }
}

TEST(LinkBudget, DerivedThresholds)
{
  const RadioConfig cfg;
  const LinkBudget lb = link_budget(cfg);
  EXPECT_NEAR(lb.noise_power_dbm, -174.0 + 10.0 * std::log10(2.16e9), 1e-12);
  EXPECT_NEAR(lb.noise_power_dbm, -80.65, 0.01);
  EXPECT_NEAR(lb.sinr_threshold_Theta, std::pow(2.0, 1.0 / 2.16) - 1.0, 1e-12);
  EXPECT_NEAR(lb.sinr_threshold_Theta, 0.3784, 1e-4);
  // A boresight link at exactly theta loss sits exactly at the SINR threshold.
  const double snr_db = cfg.tx_power_Pt + 2 * lb.boresight_gain_g0 - lb.loss_threshold_theta_db - lb.noise_power_dbm;
  EXPECT_NEAR(db_to_linear(snr_db), lb.sinr_threshold_Theta, 1e-12);
  EXPECT_NEAR(lb.loss_threshold_theta_db, 138.6, 0.05);
}

TEST(RadioConfig, ValidationRejectsBadValues)
{
  auto expect_bad = [](auto mutate) {
    RadioConfig c;
    mutate(c);
    EXPECT_THROW(c.validate(), ConfigError);
  };
  expect_bad([](RadioConfig & c) { c.bandwidth_B = 0; });
  expect_bad([](RadioConfig & c) { c.rate_req = -1; });
  expect_bad([](RadioConfig & c) { c.beamwidth_3dB = 0; });
  expect_bad([](RadioConfig & c) { c.beamwidth_3dB = 400; });
  expect_bad([](RadioConfig & c) { c.pathloss_exponent = 0; });
  EXPECT_NO_THROW(RadioConfig{}.validate());
}

TEST(OffsetAngle, Basics)
{
  EXPECT_NEAR(offset_angle_deg({1, 0}, {0, 1}), 90.0, 1e-12);
  EXPECT_NEAR(offset_angle_deg({1, 0}, {-1, 0}), 180.0, 1e-12);
  EXPECT_NEAR(offset_angle_deg({1, 1}, {2, 2}), 0.0, 1e-6);
  EXPECT_THROW(offset_angle_deg({0, 0}, {1, 0}), std::invalid_argument);
}

TEST(ReceivedPower, MutualBoresightAtTenMetres)
{
  const RadioConfig cfg;
  const Scenario s = layout({{30.0, -1.75}, {40.0, -1.75}});
  const Vehicle & a = s.vehicles[0];
  const Vehicle & b = s.vehicles[1];
  const double p = received_power_dbm(a, b.position, b, a.position, s, cfg);
  EXPECT_NEAR(p, 10.0 + 2 * boresight_gain_dbi(15.0) - 88.0, 1e-9);
  EXPECT_NEAR(p, -34.3, 0.05);
  const double snr_db = p - link_budget(cfg).noise_power_dbm;
  EXPECT_NEAR(snr_db, 46.37, 0.01);
}

TEST(ReceivedPower, ReceiverAimedAway)
{
  const RadioConfig cfg;
  const Scenario s = layout({{30.0, -1.75}, {40.0, -1.75}});
  const Vehicle & a = s.vehicles[0];
  const Vehicle & b = s.vehicles[1];
  const Point aim_north{b.position.x, b.position.y + 5.0};
  const double p = received_power_dbm(a, b.position, b, aim_north, s, cfg);
  EXPECT_NEAR(p, 10.0 + boresight_gain_dbi(15.0) - 10.0 - 88.0, 1e-9);
  EXPECT_NEAR(p, -66.1, 0.05);
}

TEST(ReceivedPower, BuildingBlockedIsMinusInfinity)
{
  const RadioConfig cfg;
  const Scenario s = layout({{40.0, -1.75}, {-1.75, 40.0}});
  const double p = received_power_dbm(
    s.vehicles[0], s.vehicles[1].position, s.vehicles[1], s.vehicles[0].position, s, cfg);
  EXPECT_EQ(p, -kInfinity);
  EXPECT_EQ(db_to_linear(p), 0.0);
}

TEST(ReceivedPower, SameVehicleThrows)
{
  const RadioConfig cfg;
  const Scenario s = layout({{40.0, -1.75}, {60.0, -1.75}});
  EXPECT_THROW(
    received_power_dbm(s.vehicles[0], s.vehicles[1].position, s.vehicles[0], s.vehicles[1].position, s, cfg),
    std::invalid_argument);
}

TEST(ChannelTable, AgreesWithDirectComputation)
{
  RadioConfig cfg;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    ScenarioConfig sc;
    sc.rng_seed = seed;
    sc.num_vehicles_Nv = 9;
    cfg.beamwidth_3dB = 10.0 + 5.0 * static_cast<double>(seed);
    const Scenario s = build_scenario(sc);
    const ChannelTable ch(s, cfg);
    ASSERT_EQ(ch.size(), s.size());
    for (VehicleId i = 0; i < s.size(); ++i) {
      for (VehicleId j = 0; j < s.size(); ++j) {
        if (i == j) {
          continue;
        }
        EXPECT_EQ(ch.blockers(i, j), count_blockers(s, i, j));
        for (VehicleId a = 0; a < s.size(); ++a) {
          for (VehicleId b = 0; b < s.size(); ++b) {
            if (a == i || b == j) {
              continue;
            }
            const double direct = received_power_dbm(
              s.vehicles[i], s.vehicles[a].position, s.vehicles[j], s.vehicles[b].position, s, cfg);
            const double table = ch.power_dbm(i, a, j, b);
            if (direct == -kInfinity) {
              EXPECT_EQ(table, -kInfinity);
            } else {
              EXPECT_NEAR(table, direct, 1e-9);
            }
          }
        }
      }
    }
  }
}

}  // namespace
}  // namespace mmshare
