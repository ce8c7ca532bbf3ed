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

#include "mmshare/mwis.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace mmshare
{

namespace
{

double score(double weight, std::size_t degree_plus_one, GreedyRule rule)
{
  return rule == GreedyRule::kGwmin ? weight / static_cast<double>(degree_plus_one) : weight;
}

}  // namespace

IndependentSet greedy_mwis(const SchedulingGraph & g, GreedyRule rule)
{
  const std::size_t n = g.size();
  std::vector<char> alive(n, 1);
  std::vector<std::size_t> degree(n);
  for (std::size_t v = 0; v < n; ++v) {
    degree[v] = g.adjacency[v].size();
  }
  IndependentSet out;
  std::size_t remaining = n;
  while (remaining > 0) {
    std::size_t best = n;
    double best_score = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (!alive[v]) {
        continue;
      }
      const double sc = score(g.weights[v], degree[v] + 1, rule);
      if (best == n || sc > best_score) {
        best = v;
        best_score = sc;
      }
    }
    out.vertices.push_back(static_cast<std::uint32_t>(best));
    // Drop the closed neighborhood of the pick and update surviving degrees.
    std::vector<std::uint32_t> removed{static_cast<std::uint32_t>(best)};
    for (const auto u : g.adjacency[best]) {
      if (alive[u]) {
        removed.push_back(u);
      }
    }
    for (const auto r : removed) {
      alive[r] = 0;
    }
    remaining -= removed.size();
    for (const auto r : removed) {
      for (const auto u : g.adjacency[r]) {
        if (alive[u]) {
          --degree[u];
        }
      }
    }
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  for (const auto v : out.vertices) {
    out.total_weight += g.weights[v];
  }
  return out;
}

IndependentSet greedy_mwis(const GroupedSchedulingGraph & g, GreedyRule rule)
{
  const std::size_t m = g.groups.size();
  std::vector<std::uint32_t> offset(m + 1, 0);
  std::vector<std::size_t> best_member(m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    const LinkGroup & grp = g.groups[a];
    offset[a + 1] = offset[a] + static_cast<std::uint32_t>(grp.data.size());
    for (std::size_t k = 1; k < grp.weights.size(); ++k) {
      if (grp.weights[k] > grp.weights[best_member[a]]) {
        best_member[a] = k;
      }
    }
  }
  // Closed-neighborhood size of any member: own group plus conflicting groups.
  std::vector<std::size_t> closed(m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    closed[a] = g.groups[a].data.size();
    for (const auto b : g.groups[a].conflicting) {
      closed[a] += g.groups[b].data.size();
    }
  }
  std::vector<char> alive(m, 1);
  std::size_t remaining = m;
  IndependentSet out;
  while (remaining > 0) {
    std::size_t best = m;
    double best_score = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      if (!alive[a]) {
        continue;
      }
      const double sc = score(g.groups[a].weights[best_member[a]], closed[a], rule);
      if (best == m || sc > best_score) {
        best = a;
        best_score = sc;
      }
    }
    out.vertices.push_back(offset[best] + static_cast<std::uint32_t>(best_member[best]));
    out.total_weight += g.groups[best].weights[best_member[best]];
    std::vector<std::uint32_t> removed{static_cast<std::uint32_t>(best)};
    for (const auto b : g.groups[best].conflicting) {
      if (alive[b]) {
        removed.push_back(b);
      }
    }
    for (const auto r : removed) {
      alive[r] = 0;
    }
    remaining -= removed.size();
    for (const auto r : removed) {
      const std::size_t size_r = g.groups[r].data.size();
      for (const auto q : g.groups[r].conflicting) {
        if (alive[q]) {
          closed[q] -= size_r;
        }
      }
    }
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  // Re-sum in vertex order so totals match the expanded-graph route bit for bit.
  out.total_weight = 0.0;
  for (const auto v : out.vertices) {
    const auto a = static_cast<std::size_t>(
      std::upper_bound(offset.begin(), offset.end(), v) - offset.begin() - 1);
    out.total_weight += g.groups[a].weights[v - offset[a]];
  }
  return out;
}

namespace
{

struct ExactSearch
{
  std::vector<std::uint32_t> closed_nbhd;  // bitmask incl. self
  std::vector<double> weights;
  double best_weight{-1.0};
  std::uint32_t best_set{0};

  void run(std::uint32_t candidates, std::uint32_t chosen, double weight)
  {
    if (candidates == 0) {
      if (weight > best_weight) {
        best_weight = weight;
        best_set = chosen;
      }
      return;
    }
    double bound = weight;
    for (std::uint32_t c = candidates; c != 0; c &= c - 1) {
      bound += weights[static_cast<std::size_t>(std::countr_zero(c))];
    }
    if (bound <= best_weight) {
      return;
    }
    const auto v = static_cast<std::size_t>(std::countr_zero(candidates));
    const std::uint32_t bit = std::uint32_t{1} << v;
    run(candidates & ~closed_nbhd[v], chosen | bit, weight + weights[v]);
    run(candidates & ~bit, chosen, weight);
  }
};

}  // namespace

IndependentSet exact_mwis(const SchedulingGraph & g)
{
  const std::size_t n = g.size();
  if (n > kExactMwisLimit) {
    throw std::length_error(
      "exact_mwis: " + std::to_string(n) + " vertices exceeds the limit of " +
      std::to_string(kExactMwisLimit));
  }
  ExactSearch search;
  search.weights = g.weights;
  search.closed_nbhd.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    search.closed_nbhd[v] = std::uint32_t{1} << v;
    for (const auto u : g.adjacency[v]) {
      search.closed_nbhd[v] |= std::uint32_t{1} << u;
    }
  }
  const std::uint32_t all = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
  search.run(all, 0, 0.0);

  IndependentSet out;
  for (std::size_t v = 0; v < n; ++v) {
    if ((search.best_set >> v) & 1U) {
      out.vertices.push_back(static_cast<std::uint32_t>(v));
      out.total_weight += g.weights[v];
    }
  }
  return out;
}

bool is_independent(const SchedulingGraph & g, const std::vector<std::uint32_t> & vertices)
{
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (g.adjacent(vertices[a], vertices[b])) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace mmshare
