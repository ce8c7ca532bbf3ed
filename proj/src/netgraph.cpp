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

#include "mmshare/netgraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace mmshare
{

VehNetGraph::VehNetGraph(std::size_t num_vertices)
: neighbors_(num_vertices), matrix_(num_vertices * num_vertices, 0)
{
}

void VehNetGraph::add_edge(VehicleId i, VehicleId j)
{
  if (i == j) {
    throw std::invalid_argument("VehNetGraph: self-loop");
  }
  if (i >= size() || j >= size()) {
    throw std::out_of_range("VehNetGraph: vertex out of range");
  }
  if (adjacent(i, j)) {
    return;
  }
  matrix_[i * size() + j] = matrix_[j * size() + i] = 1;
  auto insert_sorted = [](std::vector<VehicleId> & v, VehicleId x) {
    v.insert(std::upper_bound(v.begin(), v.end(), x), x);
  };
  insert_sorted(neighbors_[i], j);
  insert_sorted(neighbors_[j], i);
}

std::vector<std::pair<VehicleId, VehicleId>> VehNetGraph::edges() const
{
  std::vector<std::pair<VehicleId, VehicleId>> out;
  for (VehicleId i = 0; i < size(); ++i) {
    for (const VehicleId j : neighbors_[i]) {
      if (i < j) {
        out.emplace_back(i, j);
      }
    }
  }
  return out;
}

std::size_t VehNetGraph::edge_count() const
{
  std::size_t twice = 0;
  for (const auto & nb : neighbors_) {
    twice += nb.size();
  }
  return twice / 2;
}

VehNetGraph build_network_graph(const ChannelTable & channel, const LinkBudget & lb)
{
  VehNetGraph g(channel.size());
  for (VehicleId i = 0; i < channel.size(); ++i) {
    for (VehicleId j = i + 1; j < channel.size(); ++j) {
      if (channel.loss_db(i, j) <= lb.loss_threshold_theta_db) {
        g.add_edge(i, j);
      }
    }
  }
  return g;
}

VehNetGraph build_network_graph(const Scenario & s, const LinkBudget & lb, const RadioConfig & cfg)
{
  VehNetGraph g(s.size());
  for (VehicleId i = 0; i < s.size(); ++i) {
    for (VehicleId j = i + 1; j < s.size(); ++j) {
      const BlockerCount bc = count_blockers(s, i, j);
      const double loss = path_loss_db(
        distance(s.vehicles[i].position, s.vehicles[j].position), bc.blocker_count,
        bc.building_blocked, cfg);
      if (loss <= lb.loss_threshold_theta_db) {
        g.add_edge(i, j);
      }
    }
  }
  return g;
}

bool is_connected(const VehNetGraph & g)
{
  if (g.size() <= 1) {
    return true;
  }
  std::vector<char> seen(g.size(), 0);
  std::vector<VehicleId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VehicleId v = stack.back();
    stack.pop_back();
    for (const VehicleId w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == g.size();
}

void write_edge_list(std::ostream & out, const VehNetGraph & g)
{
  for (const auto & [i, j] : g.edges()) {
    out << i << ' ' << j << '\n';
  }
}

}  // namespace mmshare
