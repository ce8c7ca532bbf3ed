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

#ifndef MMSHARE__PROPAGATION_HPP_
#define MMSHARE__PROPAGATION_HPP_

#include "mmshare/geometry.hpp"

#include <limits>
#include <vector>

namespace mmshare
{

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// dB <-> linear. Power levels in dBm map to milliwatts.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

struct RadioConfig
{
  double bandwidth_B{2.16e9};       // Hz
  double noise_density_N{-174.0};   // dBm/Hz
  double rate_req{1.0e9};           // bit/s
  double tx_power_Pt{10.0};         // dBm
  double beamwidth_3dB{15.0};       // degrees
  double sidelobe_floor{-10.0};     // dBi
  double pathloss_exponent{2.0};
  double pathloss_ref_db{68.0};     // dB at 1 m (60 GHz free space)
  double per_blocker_loss{10.0};    // dB per blocking vehicle

  void validate() const;
};

struct LinkBudget
{
  double noise_power_dbm{0.0};
  double sinr_threshold_Theta{0.0};  // linear
  double loss_threshold_theta_db{0.0};
  double boresight_gain_g0{0.0};     // dBi, used for both ends

  double noise_power_mw() const { return db_to_linear(noise_power_dbm); }
};

/// Log-distance loss plus a fixed penalty per blocking vehicle; infinite when
/// a building cuts the line of sight. Throws std::domain_error for distance <= 0.
double path_loss_db(double distance_m, int blockers, bool building_blocked, const RadioConfig & cfg);

/// Boresight gain of the reference pattern for a given half-power beamwidth.
double boresight_gain_dbi(double beamwidth_deg);

/// Gaussian main lobe (-12 (offset/bw)^2 dB) over a flat side-lobe floor.
double antenna_gain_dbi(double offset_deg, const RadioConfig & cfg);

LinkBudget link_budget(const RadioConfig & cfg);

/// Angle in degrees in [0, 180] between two nonzero vectors.
double offset_angle_deg(Point a, Point b);

/// Received power with the transmitter beam pointed at `tx_aim` and the
/// receiver beam at `rx_aim`. -inf when a building blocks the path.
double received_power_dbm(
  const Vehicle & tx, Point tx_aim, const Vehicle & rx, Point rx_aim, const Scenario & s,
  const RadioConfig & cfg);

/// Pairwise channel state of one scenario: loss per vehicle pair and antenna
/// gains for every (from, towards, aimed-at) triple. Values equal those of
/// the free functions above; the tables make per-slot SINR sums cheap.
class ChannelTable
{
public:
  ChannelTable(const Scenario & s, const RadioConfig & cfg);

  std::size_t size() const { return n_; }
  double loss_db(VehicleId i, VehicleId j) const { return loss_db_[i * n_ + j]; }
  const BlockerCount & blockers(VehicleId i, VehicleId j) const { return blockers_[i * n_ + j]; }
  /// Gain (dBi) at vehicle `at` toward vehicle `toward` when aimed at `aim`.
  double gain_dbi(VehicleId at, VehicleId aim, VehicleId toward) const
  {
    return gain_[(at * n_ + aim) * n_ + toward];
  }
  /// Power (dBm) at `rx` (aimed at `rx_aim`) from `tx` (aimed at `tx_aim`).
  double power_dbm(VehicleId tx, VehicleId tx_aim, VehicleId rx, VehicleId rx_aim) const
  {
    return tx_power_dbm_ + gain_dbi(tx, tx_aim, rx) + gain_dbi(rx, rx_aim, tx) - loss_db(tx, rx);
  }
  double power_mw(VehicleId tx, VehicleId tx_aim, VehicleId rx, VehicleId rx_aim) const
  {
    return db_to_linear(power_dbm(tx, tx_aim, rx, rx_aim));
  }

private:
  std::size_t n_;
  double tx_power_dbm_;
  std::vector<double> loss_db_;
  std::vector<BlockerCount> blockers_;
  std::vector<double> gain_;
};

}  // namespace mmshare

#endif  // MMSHARE__PROPAGATION_HPP_
