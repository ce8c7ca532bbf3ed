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

#ifndef MMSHARE__SCHEDGRAPH_HPP_
#define MMSHARE__SCHEDGRAPH_HPP_

#include "mmshare/geometry.hpp"
#include "mmshare/netgraph.hpp"
#include "mmshare/propagation.hpp"

#include <compare>
#include <cstdint>
#include <ostream>
#include <string_view>
#include <utility>
#include <vector>

namespace mmshare
{

/// A datum is identified by the vehicle that sensed it.
using DatumId = VehicleId;

/// Vehicle `tx` sends datum `datum` to vehicle `rx`.
struct Transmission
{
  VehicleId tx{0};
  VehicleId rx{0};
  DatumId datum{0};

  friend auto operator<=>(const Transmission &, const Transmission &) = default;
};

/// Per-vehicle held data for one slot. Every vehicle starts with its own datum.
class DatasetState
{
public:
  DatasetState() = default;
  explicit DatasetState(std::size_t num_vehicles);

  std::size_t num_vehicles() const { return n_; }
  bool holds(VehicleId i, DatumId k) const { return held_[i * n_ + k] != 0; }
  /// Returns true iff the datum was new to the vehicle.
  bool add(VehicleId i, DatumId k);
  std::size_t count(VehicleId i) const { return counts_[i]; }
  /// n_tau: total number of (vehicle, datum) holdings.
  std::size_t total() const;
  bool complete(VehicleId i) const { return counts_[i] == n_; }
  bool all_complete() const;
  /// Held data of one vehicle, ascending.
  std::vector<DatumId> data(VehicleId i) const;

  std::size_t slot{0};

  friend bool operator==(const DatasetState & a, const DatasetState & b)
  {
    return a.n_ == b.n_ && a.held_ == b.held_;
  }

private:
  std::size_t n_{0};
  std::vector<char> held_;
  std::vector<std::size_t> counts_;
};

enum class ConflictMode { kBasicOnly, kConventional, kMmWave };
enum class WeightMode { kMaxTransmission, kMaxDistance };

std::string_view to_string(ConflictMode mode);
std::string_view to_string(WeightMode mode);
ConflictMode parse_conflict_mode(std::string_view text);
WeightMode parse_weight_mode(std::string_view text);

struct ConflictPolicy
{
  ConflictMode mode{ConflictMode::kMmWave};
  double sinr_threshold_Theta{0.0};  // linear
};

inline constexpr double kMinWeight = 1e-6;

/// All t_ijk with {i, j} a link, k held by i and missing at j, ordered by (tx, rx, datum).
std::vector<Transmission> enumerate_transmissions(const VehNetGraph & g, const DatasetState & ds);

/// SINR at victim.rx (beam on victim.tx) with the single interferer
/// interferer.tx beaming at interferer.rx, linear.
double sinr_pairwise(
  const Transmission & victim, const Transmission & interferer, const Scenario & s,
  const RadioConfig & cfg);

/// Conflict rules: (a) shared transmitter, (b) shared receiver and (c)
/// half-duplex always apply; (d) neighbor interference in conventional mode;
/// (d') pairwise SINR <= Theta in mmWave mode, for four distinct vehicles.
bool conflicts(
  const Transmission & a, const Transmission & b, const ConflictPolicy & policy,
  const VehNetGraph & g, const Scenario & s, const RadioConfig & cfg);

double weight(const Transmission & t, WeightMode mode, const Scenario & s);

/// Conflict relation between directed links of G_v, evaluated once per
/// scenario. Two transmissions conflict iff they share a link or their links
/// conflict, so this is all a slot's scheduling graph needs. Keeps a
/// reference to `channel`, which must outlive the table.
class ConflictTable
{
public:
  ConflictTable(
    const VehNetGraph & g, const ChannelTable & channel, const LinkBudget & lb,
    const ConflictPolicy & policy);

  std::size_t link_count() const { return links_.size(); }
  const std::pair<VehicleId, VehicleId> & link(std::size_t l) const { return links_[l]; }
  /// Index of directed link i->j, or -1 when {i, j} is not an edge.
  std::ptrdiff_t link_index(VehicleId i, VehicleId j) const { return index_[i * n_ + j]; }
  bool links_conflict(std::size_t l1, std::size_t l2) const { return bits_[l1 * links_.size() + l2] != 0; }
  bool conflicts(const Transmission & a, const Transmission & b) const;

  /// Pairwise SINR of victim link against interferer link, from the channel table.
  double sinr(std::size_t victim, std::size_t interferer) const;

  const ConflictPolicy & policy() const { return policy_; }

private:
  std::size_t n_;
  ConflictPolicy policy_;
  const ChannelTable * channel_;
  double noise_mw_;
  std::vector<std::pair<VehicleId, VehicleId>> links_;
  std::vector<std::ptrdiff_t> index_;
  std::vector<char> bits_;
};

/// Vertices are transmissions, edges are conflicts, weights are priorities.
struct SchedulingGraph
{
  std::vector<Transmission> vertices;
  std::vector<double> weights;
  std::vector<std::vector<std::uint32_t>> adjacency;  // ascending

  std::size_t size() const { return vertices.size(); }
  std::size_t max_degree() const;
  std::size_t edge_count() const;
  bool adjacent(std::uint32_t u, std::uint32_t v) const;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;
};

/// Transmissions of one directed link. All members conflict with each other
/// and share every conflict outside the group.
struct LinkGroup
{
  VehicleId tx{0};
  VehicleId rx{0};
  std::vector<DatumId> data;        // ascending
  std::vector<double> weights;
  std::vector<std::uint32_t> conflicting;  // indices of conflicting groups, ascending
};

/// Scheduling graph stored per link group; expands to the same SchedulingGraph.
struct GroupedSchedulingGraph
{
  std::vector<LinkGroup> groups;  // ordered by (tx, rx)

  std::size_t vertex_count() const;
  SchedulingGraph expand() const;
};

SchedulingGraph build_scheduling_graph(
  const VehNetGraph & g, const DatasetState & ds, const ConflictPolicy & policy, WeightMode mode,
  const Scenario & s, const RadioConfig & cfg);

SchedulingGraph build_scheduling_graph(
  const VehNetGraph & g, const DatasetState & ds, const ConflictTable & table, WeightMode mode,
  const Scenario & s);

GroupedSchedulingGraph build_grouped_scheduling_graph(
  const VehNetGraph & g, const DatasetState & ds, const ConflictTable & table, WeightMode mode,
  const Scenario & s);

/// "v <index> <tx> <rx> <datum> <weight>" lines, then "e <u> <v>" lines.
void write_scheduling_graph(std::ostream & out, const SchedulingGraph & sg);

}  // namespace mmshare

#endif  // MMSHARE__SCHEDGRAPH_HPP_
