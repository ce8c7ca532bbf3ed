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

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mmshare
{

void RadioConfig::validate() const
{
  if (!(bandwidth_B > 0.0)) {
    throw ConfigError("invalid radio config: bandwidth_B must be > 0");
  }
  if (!(rate_req > 0.0)) {
    throw ConfigError("invalid radio config: rate_req must be > 0");
  }
  if (!(beamwidth_3dB > 0.0 && beamwidth_3dB < 180.0)) {
    throw ConfigError("invalid radio config: beamwidth_3dB must lie in (0, 180)");
  }
  if (!(pathloss_exponent > 0.0)) {
    throw ConfigError("invalid radio config: pathloss_exponent must be > 0");
  }
  if (per_blocker_loss < 0.0) {
    throw ConfigError("invalid radio config: per_blocker_loss must be >= 0");
  }
}

double path_loss_db(double distance_m, int blockers, bool building_blocked, const RadioConfig & cfg)
{
  if (!(distance_m > 0.0)) {
    throw std::domain_error("path_loss_db: distance must be > 0, got " + std::to_string(distance_m));
  }
  if (building_blocked) {
    return kInfinity;
  }
  return cfg.pathloss_ref_db + 10.0 * cfg.pathloss_exponent * std::log10(distance_m) +
         blockers * cfg.per_blocker_loss;
}

double boresight_gain_dbi(double beamwidth_deg)
{
  const double half = 0.5 * beamwidth_deg * std::numbers::pi / 180.0;
  const double amplitude = 1.6162 / std::sin(half);
  return 10.0 * std::log10(amplitude * amplitude);
}

double antenna_gain_dbi(double offset_deg, const RadioConfig & cfg)
{
  const double ratio = offset_deg / cfg.beamwidth_3dB;
  return std::max(boresight_gain_dbi(cfg.beamwidth_3dB) - 12.0 * ratio * ratio, cfg.sidelobe_floor);
}

LinkBudget link_budget(const RadioConfig & cfg)
{
  cfg.validate();
  LinkBudget lb;
  lb.noise_power_dbm = cfg.noise_density_N + 10.0 * std::log10(cfg.bandwidth_B);
  lb.sinr_threshold_Theta = std::exp2(cfg.rate_req / cfg.bandwidth_B) - 1.0;
  lb.boresight_gain_g0 = boresight_gain_dbi(cfg.beamwidth_3dB);
  // theta = Pt Gt Gr / (B N Theta), in dB.
  lb.loss_threshold_theta_db = cfg.tx_power_Pt + 2.0 * lb.boresight_gain_g0 - lb.noise_power_dbm -
                               linear_to_db(lb.sinr_threshold_Theta);
  return lb;
}

double offset_angle_deg(Point a, Point b)
{
  const double na = norm(a);
  const double nb = norm(b);
  if (!(na > 0.0) || !(nb > 0.0)) {
    throw std::invalid_argument("offset_angle_deg: zero-length direction");
  }
  // atan2 stays accurate near 0 and 180 degrees, where acos does not.
  const double cross = a.x * b.y - a.y * b.x;
  return std::atan2(std::abs(cross), dot(a, b)) * 180.0 / std::numbers::pi;
}

double received_power_dbm(
  const Vehicle & tx, Point tx_aim, const Vehicle & rx, Point rx_aim, const Scenario & s,
  const RadioConfig & cfg)
{
  if (tx.id == rx.id) {
    throw std::invalid_argument("received_power_dbm: tx and rx are the same vehicle");
  }
  const BlockerCount bc = count_blockers(s, tx.id, rx.id);
  const double loss =
    path_loss_db(distance(tx.position, rx.position), bc.blocker_count, bc.building_blocked, cfg);
  if (loss == kInfinity) {
    return -kInfinity;
  }
  const double g_tx =
    antenna_gain_dbi(offset_angle_deg(tx_aim - tx.position, rx.position - tx.position), cfg);
  const double g_rx =
    antenna_gain_dbi(offset_angle_deg(rx_aim - rx.position, tx.position - rx.position), cfg);
  return cfg.tx_power_Pt + g_tx + g_rx - loss;
}

ChannelTable::ChannelTable(const Scenario & s, const RadioConfig & cfg)
: n_(s.size()),
  tx_power_dbm_(cfg.tx_power_Pt),
  loss_db_(n_ * n_, kInfinity),
  blockers_(n_ * n_),
  gain_(n_ * n_ * n_, cfg.sidelobe_floor)
{
  for (VehicleId i = 0; i < n_; ++i) {
    for (VehicleId j = i + 1; j < n_; ++j) {
      const BlockerCount bc = count_blockers(s, i, j);
      const double loss = path_loss_db(
        distance(s.vehicles[i].position, s.vehicles[j].position), bc.blocker_count,
        bc.building_blocked, cfg);
      loss_db_[i * n_ + j] = loss_db_[j * n_ + i] = loss;
      blockers_[i * n_ + j] = blockers_[j * n_ + i] = bc;
    }
  }
  for (VehicleId at = 0; at < n_; ++at) {
    const Point p = s.vehicles[at].position;
    for (VehicleId aim = 0; aim < n_; ++aim) {
      if (aim == at) {
        continue;
      }
      const Point boresight = s.vehicles[aim].position - p;
      for (VehicleId toward = 0; toward < n_; ++toward) {
        if (toward == at) {
          continue;
        }
        gain_[(at * n_ + aim) * n_ + toward] =
          antenna_gain_dbi(offset_angle_deg(boresight, s.vehicles[toward].position - p), cfg);
      }
    }
  }
}

}  // namespace mmshare
