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
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace mmshare
{
namespace
{

SchedulingGraph random_graph(std::mt19937_64 & rng, std::size_t n, double p)
{
  SchedulingGraph g;
  std::uniform_real_distribution<double> w(0.01, 10.0);
  std::bernoulli_distribution edge(p);
  for (std::size_t v = 0; v < n; ++v) {
    g.vertices.push_back({static_cast<VehicleId>(v), 0, 0});
    g.weights.push_back(w(rng));
  }
  g.adjacency.resize(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (edge(rng)) {
        g.adjacency[u].push_back(v);
        g.adjacency[v].push_back(u);
      }
    }
  }
  return g;
}

std::vector<std::vector<char>> matrix(const SchedulingGraph & g)
{
  std::vector<std::vector<char>> m(g.size(), std::vector<char>(g.size(), 0));
  for (std::size_t u = 0; u < g.size(); ++u) {
    for (const auto v : g.adjacency[u]) {
      m[u][v] = 1;
    }
  }
  return m;
}

TEST(ExactMwis, MatchesSubsetEnumeration)
{
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const SchedulingGraph g = random_graph(rng, rng() % 15, 0.1 + 0.05 * (trial % 10));
    const IndependentSet best = exact_mwis(g);
    EXPECT_TRUE(is_independent(g, best.vertices));
    EXPECT_NEAR(best.total_weight, oracle::naive_mwis_weight(g.weights, matrix(g)), 1e-9) << trial;
  }
}

TEST(ExactMwis, LimitEnforced)
{
  std::mt19937_64 rng(1);
  EXPECT_NO_THROW(exact_mwis(random_graph(rng, kExactMwisLimit, 0.5)));
  EXPECT_THROW(exact_mwis(random_graph(rng, kExactMwisLimit + 1, 0.5)), std::length_error);
}

TEST(ExactMwis, LexicographicallySmallestOptimum)
{
  SchedulingGraph g;
  g.vertices.resize(3);
  g.weights = {1.0, 1.0, 1.0};
  g.adjacency = {{1}, {0, 2}, {1}};
  EXPECT_EQ(exact_mwis(g).vertices, (std::vector<std::uint32_t>{0, 2}));
  g.adjacency = {{1, 2}, {0, 2}, {0, 1}};
  EXPECT_EQ(exact_mwis(g).vertices, (std::vector<std::uint32_t>{0}));
}

TEST(GreedyMwis, IndependentAndWithinDeltaOfOptimum)
{
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    const SchedulingGraph g = random_graph(rng, 1 + rng() % 18, 0.05 + 0.05 * (trial % 12));
    for (const auto rule : {GreedyRule::kGwmin, GreedyRule::kMaxWeightFirst}) {
      const IndependentSet greedy = greedy_mwis(g, rule);
      EXPECT_TRUE(is_independent(g, greedy.vertices));
      // Maximal: every vertex outside the set has a neighbour inside.
      std::vector<char> in(g.size(), 0);
      for (const auto v : greedy.vertices) {
        in[v] = 1;
      }
      for (std::uint32_t v = 0; v < g.size(); ++v) {
        if (in[v]) {
          continue;
        }
        bool covered = false;
        for (const auto u : g.adjacency[v]) {
          covered = covered || in[u];
        }
        EXPECT_TRUE(covered);
      }
    }
    const double opt = exact_mwis(g).total_weight;
    const double delta = static_cast<double>(std::max<std::size_t>(g.max_degree(), 1));
    EXPECT_GE(greedy_mwis(g).total_weight, opt / delta - 1e-9) << "trial " << trial;
  }
}

TEST(GreedyMwis, GwminScoreAndTieBreak)
{
  // Star: centre 0 (w=3, deg 3 -> 0.75) and leaves (w=1, deg 1 -> 0.5). GWMIN takes the centre.
  SchedulingGraph g;
  g.vertices.resize(4);
  g.weights = {3.0, 1.0, 1.0, 1.0};
  g.adjacency = {{1, 2, 3}, {0}, {0}, {0}};
  EXPECT_EQ(greedy_mwis(g).vertices, std::vector<std::uint32_t>{0});
  // With centre weight 1.9 the leaves win (0.475 < 0.5); ties go to the lowest index.
  g.weights[0] = 1.9;
  EXPECT_EQ(greedy_mwis(g).vertices, (std::vector<std::uint32_t>{1, 2, 3}));
  EXPECT_EQ(greedy_mwis(g, GreedyRule::kMaxWeightFirst).vertices, std::vector<std::uint32_t>{0});
  g.weights = {1.0, 1.0, 1.0, 1.0};
  g.adjacency = {{1}, {0}, {3}, {2}};
  EXPECT_EQ(greedy_mwis(g).vertices, (std::vector<std::uint32_t>{0, 2}));
}

TEST(GreedyMwis, EmptyGraph)
{
  const SchedulingGraph g;
  EXPECT_TRUE(greedy_mwis(g).vertices.empty());
  EXPECT_EQ(exact_mwis(g).total_weight, 0.0);
}

GroupedSchedulingGraph random_grouped(std::mt19937_64 & rng)
{
  GroupedSchedulingGraph gg;
  const std::size_t m = 1 + rng() % 12;
  std::uniform_real_distribution<double> w(0.5, 5.0);
  for (std::size_t a = 0; a < m; ++a) {
    LinkGroup grp;
    grp.tx = static_cast<VehicleId>(a);
    grp.rx = static_cast<VehicleId>(a + 1);
    const std::size_t size = 1 + rng() % 4;
    for (std::size_t k = 0; k < size; ++k) {
      grp.data.push_back(static_cast<DatumId>(k));
      // Coarse weights produce ties on purpose.
      grp.weights.push_back(rng() % 3 == 0 ? 1.0 : std::round(w(rng)));
    }
    gg.groups.push_back(grp);
  }
  for (std::uint32_t a = 0; a < m; ++a) {
    for (std::uint32_t b = a + 1; b < m; ++b) {
      if (rng() % 3 == 0) {
        gg.groups[a].conflicting.push_back(b);
        gg.groups[b].conflicting.push_back(a);
      }
    }
  }
  return gg;
}

TEST(GreedyMwis, GroupedRouteEqualsExpandedRoute)
{
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const GroupedSchedulingGraph gg = random_grouped(rng);
    const SchedulingGraph expanded = gg.expand();
    for (const auto rule : {GreedyRule::kGwmin, GreedyRule::kMaxWeightFirst}) {
      const IndependentSet a = greedy_mwis(gg, rule);
      const IndependentSet b = greedy_mwis(expanded, rule);
      EXPECT_EQ(a.vertices, b.vertices) << "trial " << trial;
      EXPECT_EQ(a.total_weight, b.total_weight) << "trial " << trial;
    }
  }
}

TEST(GroupedSchedulingGraph, ExpandMakesGroupsCliquesAndTwins)
{
  std::mt19937_64 rng(5);
  const GroupedSchedulingGraph gg = random_grouped(rng);
  const SchedulingGraph g = gg.expand();
  ASSERT_EQ(g.size(), gg.vertex_count());
  std::vector<std::size_t> group_of;
  for (std::size_t a = 0; a < gg.groups.size(); ++a) {
    group_of.insert(group_of.end(), gg.groups[a].data.size(), a);
  }
  for (std::uint32_t u = 0; u < g.size(); ++u) {
    for (std::uint32_t v = 0; v < g.size(); ++v) {
      if (u == v) {
        continue;
      }
      const auto & conf = gg.groups[group_of[u]].conflicting;
      const bool want = group_of[u] == group_of[v] ||
                        std::binary_search(conf.begin(), conf.end(), static_cast<std::uint32_t>(group_of[v]));
      EXPECT_EQ(g.adjacent(u, v), want);
    }
  }
}

}  // namespace
}  // namespace mmshare
