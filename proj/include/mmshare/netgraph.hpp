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

#ifndef MMSHARE__NETGRAPH_HPP_
#define MMSHARE__NETGRAPH_HPP_

#include "mmshare/geometry.hpp"
#include "mmshare/propagation.hpp"

#include <ostream>
#include <utility>
#include <vector>

namespace mmshare
{

/// Undirected V2V connectivity graph: {i, j} is an edge iff the mutual-boresight
/// path loss between the two vehicles does not exceed the loss threshold.
class VehNetGraph
{
public:
  VehNetGraph() = default;
  explicit VehNetGraph(std::size_t num_vertices);

  void add_edge(VehicleId i, VehicleId j);

  std::size_t size() const { return neighbors_.size(); }
  bool adjacent(VehicleId i, VehicleId j) const { return matrix_[i * size() + j] != 0; }
  /// Ascending neighbor ids.
  const std::vector<VehicleId> & neighbors(VehicleId i) const { return neighbors_[i]; }
  /// Edges as (i, j) with i < j, ascending.
  std::vector<std::pair<VehicleId, VehicleId>> edges() const;
  std::size_t edge_count() const;

private:
  std::vector<std::vector<VehicleId>> neighbors_;
  std::vector<char> matrix_;
};

VehNetGraph build_network_graph(const Scenario & s, const LinkBudget & lb, const RadioConfig & cfg);
VehNetGraph build_network_graph(const ChannelTable & channel, const LinkBudget & lb);

/// Empty and single-vertex graphs count as connected.
bool is_connected(const VehNetGraph & g);

/// One "i j" pair per line.
void write_edge_list(std::ostream & out, const VehNetGraph & g);

}  // namespace mmshare

#endif  // MMSHARE__NETGRAPH_HPP_
