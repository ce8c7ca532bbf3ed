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

#include "mmshare/schedgraph.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace mmshare
{

DatasetState::DatasetState(std::size_t num_vehicles)
: n_(num_vehicles), held_(num_vehicles * num_vehicles, 0), counts_(num_vehicles, 1)
{
  for (std::size_t i = 0; i < n_; ++i) {
    held_[i * n_ + i] = 1;
  }
}

bool DatasetState::add(VehicleId i, DatumId k)
{
  char & cell = held_.at(i * n_ + k);
  if (cell != 0) {
    return false;
  }
  cell = 1;
  ++counts_[i];
  return true;
}

std::size_t DatasetState::total() const
{
  std::size_t t = 0;
  for (const auto c : counts_) {
    t += c;
  }
  return t;
}

bool DatasetState::all_complete() const
{
  return std::all_of(counts_.begin(), counts_.end(), [this](std::size_t c) { return c == n_; });
}

std::vector<DatumId> DatasetState::data(VehicleId i) const
{
  std::vector<DatumId> out;
  out.reserve(counts_[i]);
  for (DatumId k = 0; k < n_; ++k) {
    if (holds(i, k)) {
      out.push_back(k);
    }
  }
  return out;
}

std::string_view to_string(ConflictMode mode)
{
  switch (mode) {
    case ConflictMode::kBasicOnly:
      return "basic-only";
    case ConflictMode::kConventional:
      return "conventional-d";
    case ConflictMode::kMmWave:
      return "mmwave-d-prime";
  }
  return "?";
}

std::string_view to_string(WeightMode mode)
{
  return mode == WeightMode::kMaxTransmission ? "max-transmission" : "max-distance";
}

ConflictMode parse_conflict_mode(std::string_view text)
{
  for (const auto m : {ConflictMode::kBasicOnly, ConflictMode::kConventional, ConflictMode::kMmWave}) {
    if (text == to_string(m)) {
      return m;
    }
  }
  throw ConfigError(
    "unknown conflict mode '" + std::string(text) +
    "' (expected basic-only, conventional-d or mmwave-d-prime)");
}

WeightMode parse_weight_mode(std::string_view text)
{
  for (const auto m : {WeightMode::kMaxTransmission, WeightMode::kMaxDistance}) {
    if (text == to_string(m)) {
      return m;
    }
  }
  throw ConfigError(
    "unknown weight mode '" + std::string(text) + "' (expected max-transmission or max-distance)");
}

std::vector<Transmission> enumerate_transmissions(const VehNetGraph & g, const DatasetState & ds)
{
  std::vector<Transmission> out;
  for (VehicleId i = 0; i < g.size(); ++i) {
    for (const VehicleId j : g.neighbors(i)) {
      for (DatumId k = 0; k < ds.num_vehicles(); ++k) {
        if (ds.holds(i, k) && !ds.holds(j, k)) {
          out.push_back({i, j, k});
        }
      }
    }
  }
  return out;
}

double sinr_pairwise(
  const Transmission & victim, const Transmission & interferer, const Scenario & s,
  const RadioConfig & cfg)
{
  const Vehicle & tx = s.vehicles.at(victim.tx);
  const Vehicle & rx = s.vehicles.at(victim.rx);
  const Vehicle & itx = s.vehicles.at(interferer.tx);
  const Vehicle & irx = s.vehicles.at(interferer.rx);
  const double desired = db_to_linear(received_power_dbm(tx, rx.position, rx, tx.position, s, cfg));
  const double interference =
    db_to_linear(received_power_dbm(itx, irx.position, rx, tx.position, s, cfg));
  const double noise = db_to_linear(cfg.noise_density_N + 10.0 * std::log10(cfg.bandwidth_B));
  return desired / (noise + interference);
}

namespace
{

bool basic_rules(VehicleId i, VehicleId j, VehicleId i2, VehicleId j2)
{
  return i == i2 || j == j2 || i == j2 || j == i2;
}

}  // namespace

bool conflicts(
  const Transmission & a, const Transmission & b, const ConflictPolicy & policy,
  const VehNetGraph & g, const Scenario & s, const RadioConfig & cfg)
{
  if (basic_rules(a.tx, a.rx, b.tx, b.rx)) {
    return true;
  }
  switch (policy.mode) {
    case ConflictMode::kBasicOnly:
      return false;
    case ConflictMode::kConventional:
      return g.adjacent(a.rx, b.tx) || g.adjacent(b.rx, a.tx);
    case ConflictMode::kMmWave:
      return sinr_pairwise(a, b, s, cfg) <= policy.sinr_threshold_Theta ||
             sinr_pairwise(b, a, s, cfg) <= policy.sinr_threshold_Theta;
  }
  return false;
}

double weight(const Transmission & t, WeightMode mode, const Scenario & s)
{
  if (mode == WeightMode::kMaxTransmission) {
    return 1.0;
  }
  return std::max(distance(s.vehicles.at(t.datum).position, s.center), kMinWeight);
}

ConflictTable::ConflictTable(
  const VehNetGraph & g, const ChannelTable & channel, const LinkBudget & lb,
  const ConflictPolicy & policy)
: n_(g.size()),
  policy_(policy),
  channel_(&channel),
  noise_mw_(lb.noise_power_mw()),
  index_(n_ * n_, -1)
{
  if (channel.size() != n_) {
    throw std::invalid_argument("ConflictTable: channel table and graph sizes differ");
  }
  for (VehicleId i = 0; i < n_; ++i) {
    for (const VehicleId j : g.neighbors(i)) {
      index_[i * n_ + j] = static_cast<std::ptrdiff_t>(links_.size());
      links_.emplace_back(i, j);
    }
  }
  const std::size_t m = links_.size();
  bits_.assign(m * m, 0);
  for (std::size_t l1 = 0; l1 < m; ++l1) {
    bits_[l1 * m + l1] = 1;
    const auto [i, j] = links_[l1];
    for (std::size_t l2 = l1 + 1; l2 < m; ++l2) {
      const auto [i2, j2] = links_[l2];
      bool hit = basic_rules(i, j, i2, j2);
      if (!hit && policy.mode == ConflictMode::kConventional) {
        hit = g.adjacent(j, i2) || g.adjacent(j2, i);
      } else if (!hit && policy.mode == ConflictMode::kMmWave) {
        hit = sinr(l1, l2) <= policy.sinr_threshold_Theta || sinr(l2, l1) <= policy.sinr_threshold_Theta;
      }
      bits_[l1 * m + l2] = bits_[l2 * m + l1] = hit ? 1 : 0;
    }
  }
}

double ConflictTable::sinr(std::size_t victim, std::size_t interferer) const
{
  const auto [i, j] = links_[victim];
  const auto [i2, j2] = links_[interferer];
  const double desired = channel_->power_mw(i, j, j, i);
  const double interference = channel_->power_mw(i2, j2, j, i);
  return desired / (noise_mw_ + interference);
}

bool ConflictTable::conflicts(const Transmission & a, const Transmission & b) const
{
  const auto la = link_index(a.tx, a.rx);
  const auto lb = link_index(b.tx, b.rx);
  if (la < 0 || lb < 0) {
    throw std::invalid_argument("ConflictTable: transmission over a non-link");
  }
  return links_conflict(static_cast<std::size_t>(la), static_cast<std::size_t>(lb));
}

std::size_t SchedulingGraph::max_degree() const
{
  std::size_t d = 0;
  for (const auto & adj : adjacency) {
    d = std::max(d, adj.size());
  }
  return d;
}

std::size_t SchedulingGraph::edge_count() const
{
  std::size_t twice = 0;
  for (const auto & adj : adjacency) {
    twice += adj.size();
  }
  return twice / 2;
}

bool SchedulingGraph::adjacent(std::uint32_t u, std::uint32_t v) const
{
  const auto & adj = adjacency.at(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> SchedulingGraph::edges() const
{
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t u = 0; u < adjacency.size(); ++u) {
    for (const auto v : adjacency[u]) {
      if (u < v) {
        out.emplace_back(u, v);
      }
    }
  }
  return out;
}

std::size_t GroupedSchedulingGraph::vertex_count() const
{
  std::size_t n = 0;
  for (const auto & grp : groups) {
    n += grp.data.size();
  }
  return n;
}

SchedulingGraph GroupedSchedulingGraph::expand() const
{
  SchedulingGraph sg;
  std::vector<std::uint32_t> offset(groups.size() + 1, 0);
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    offset[gi + 1] = offset[gi] + static_cast<std::uint32_t>(groups[gi].data.size());
    for (std::size_t k = 0; k < groups[gi].data.size(); ++k) {
      sg.vertices.push_back({groups[gi].tx, groups[gi].rx, groups[gi].data[k]});
      sg.weights.push_back(groups[gi].weights[k]);
    }
  }
  sg.adjacency.resize(sg.vertices.size());
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    // Conflicting groups merged with the group itself, in ascending order.
    std::vector<std::uint32_t> around = groups[gi].conflicting;
    around.insert(std::upper_bound(around.begin(), around.end(), gi), static_cast<std::uint32_t>(gi));
    std::vector<std::uint32_t> nbrs;
    for (const auto h : around) {
      for (std::uint32_t v = offset[h]; v < offset[h + 1]; ++v) {
        nbrs.push_back(v);
      }
    }
    for (std::uint32_t u = offset[gi]; u < offset[gi + 1]; ++u) {
      auto & adj = sg.adjacency[u];
      adj.reserve(nbrs.size() - 1);
      for (const auto v : nbrs) {
        if (v != u) {
          adj.push_back(v);
        }
      }
    }
  }
  return sg;
}

GroupedSchedulingGraph build_grouped_scheduling_graph(
  const VehNetGraph & g, const DatasetState & ds, const ConflictTable & table, WeightMode mode,
  const Scenario & s)
{
  GroupedSchedulingGraph out;
  std::vector<std::size_t> link_of_group;
  for (VehicleId i = 0; i < g.size(); ++i) {
    for (const VehicleId j : g.neighbors(i)) {
      LinkGroup grp{i, j, {}, {}, {}};
      for (DatumId k = 0; k < ds.num_vehicles(); ++k) {
        if (ds.holds(i, k) && !ds.holds(j, k)) {
          grp.data.push_back(k);
          grp.weights.push_back(weight({i, j, k}, mode, s));
        }
      }
      if (!grp.data.empty()) {
        link_of_group.push_back(static_cast<std::size_t>(table.link_index(i, j)));
        out.groups.push_back(std::move(grp));
      }
    }
  }
  for (std::size_t a = 0; a < out.groups.size(); ++a) {
    for (std::size_t b = a + 1; b < out.groups.size(); ++b) {
      if (table.links_conflict(link_of_group[a], link_of_group[b])) {
        out.groups[a].conflicting.push_back(static_cast<std::uint32_t>(b));
        out.groups[b].conflicting.push_back(static_cast<std::uint32_t>(a));
      }
    }
  }
  for (auto & grp : out.groups) {
    std::sort(grp.conflicting.begin(), grp.conflicting.end());
  }
  return out;
}

SchedulingGraph build_scheduling_graph(
  const VehNetGraph & g, const DatasetState & ds, const ConflictTable & table, WeightMode mode,
  const Scenario & s)
{
  SchedulingGraph sg;
  sg.vertices = enumerate_transmissions(g, ds);
  const auto n = static_cast<std::uint32_t>(sg.vertices.size());
  sg.weights.reserve(n);
  for (const auto & t : sg.vertices) {
    sg.weights.push_back(weight(t, mode, s));
  }
  sg.adjacency.resize(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (table.conflicts(sg.vertices[u], sg.vertices[v])) {
        sg.adjacency[u].push_back(v);
        sg.adjacency[v].push_back(u);
      }
    }
  }
  return sg;
}

SchedulingGraph build_scheduling_graph(
  const VehNetGraph & g, const DatasetState & ds, const ConflictPolicy & policy, WeightMode mode,
  const Scenario & s, const RadioConfig & cfg)
{
  SchedulingGraph sg;
  sg.vertices = enumerate_transmissions(g, ds);
  const auto n = static_cast<std::uint32_t>(sg.vertices.size());
  for (const auto & t : sg.vertices) {
    sg.weights.push_back(weight(t, mode, s));
  }
  sg.adjacency.resize(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (conflicts(sg.vertices[u], sg.vertices[v], policy, g, s, cfg)) {
        sg.adjacency[u].push_back(v);
        sg.adjacency[v].push_back(u);
      }
    }
  }
  return sg;
}

void write_scheduling_graph(std::ostream & out, const SchedulingGraph & sg)
{
  char buf[40];
  for (std::size_t u = 0; u < sg.size(); ++u) {
    std::snprintf(buf, sizeof(buf), "%.17g", sg.weights[u]);
    out << "v " << u << ' ' << sg.vertices[u].tx << ' ' << sg.vertices[u].rx << ' '
        << sg.vertices[u].datum << ' ' << buf << '\n';
  }
  for (const auto & [u, v] : sg.edges()) {
    out << "e " << u << ' ' << v << '\n';
  }
}

}  // namespace mmshare
