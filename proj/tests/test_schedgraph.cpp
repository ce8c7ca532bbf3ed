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
#include "mmshare/schedgraph.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

namespace mmshare
{
namespace
{

using testing::layout;

DatasetState random_state(std::size_t n, std::mt19937_64 & rng, double p)
{
  DatasetState ds(n);
  std::bernoulli_distribution hold(p);
  for (VehicleId i = 0; i < n; ++i) {
    for (DatumId k = 0; k < n; ++k) {
      if (hold(rng)) {
        ds.add(i, k);
      }
    }
  }
  return ds;
}

TEST(DatasetState, InitialHoldsOwnDatumOnly)
{
  DatasetState ds(3);
  EXPECT_EQ(ds.total(), 3U);
  for (VehicleId i = 0; i < 3; ++i) {
    EXPECT_EQ(ds.data(i), std::vector<DatumId>{i});
    EXPECT_EQ(ds.count(i), 1U);
    EXPECT_FALSE(ds.complete(i));
  }
  EXPECT_TRUE(ds.add(0, 2));
  EXPECT_FALSE(ds.add(0, 2));
  EXPECT_EQ(ds.data(0), (std::vector<DatumId>{0, 2}));
  EXPECT_EQ(ds.total(), 4U);
  EXPECT_THROW(ds.add(3, 0), std::out_of_range);
}

TEST(DatasetState, Completion)
{
  DatasetState ds(2);
  ds.add(0, 1);
  EXPECT_TRUE(ds.complete(0));
  EXPECT_FALSE(ds.all_complete());
  ds.add(1, 0);
  EXPECT_TRUE(ds.all_complete());
  EXPECT_TRUE(DatasetState(1).all_complete());
}

TEST(ModeNames, RoundTrip)
{
  for (const auto m : {ConflictMode::kBasicOnly, ConflictMode::kConventional, ConflictMode::kMmWave}) {
    EXPECT_EQ(parse_conflict_mode(to_string(m)), m);
  }
  for (const auto m : {WeightMode::kMaxTransmission, WeightMode::kMaxDistance}) {
    EXPECT_EQ(parse_weight_mode(to_string(m)), m);
  }
  EXPECT_EQ(to_string(ConflictMode::kMmWave), "mmwave-d-prime");
  EXPECT_EQ(to_string(ConflictMode::kConventional), "conventional-d");
  EXPECT_THROW(parse_conflict_mode("mmwave"), ConfigError);
  EXPECT_THROW(parse_weight_mode(""), ConfigError);
}

TEST(Weight, Modes)
{
  const Scenario s = layout({{30.0, 0.0}, {0.0, 0.0}, {-3.0, 4.0}});
  EXPECT_DOUBLE_EQ(weight({1, 2, 0}, WeightMode::kMaxTransmission, s), 1.0);
  EXPECT_DOUBLE_EQ(weight({1, 2, 0}, WeightMode::kMaxDistance, s), 30.0);
  EXPECT_DOUBLE_EQ(weight({0, 2, 1}, WeightMode::kMaxDistance, s), kMinWeight);
  EXPECT_DOUBLE_EQ(weight({0, 1, 2}, WeightMode::kMaxDistance, s), 5.0);
}

TEST(EnumerateTransmissions, MatchesTripleLoop)
{
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    VehNetGraph g(n);
    for (VehicleId i = 0; i < n; ++i) {
      for (VehicleId j = i + 1; j < n; ++j) {
        if (rng() % 2) {
          g.add_edge(i, j);
        }
      }
    }
    const DatasetState ds = random_state(n, rng, 0.3);
    std::vector<Transmission> want;
    for (VehicleId i = 0; i < n; ++i) {
      for (VehicleId j = 0; j < n; ++j) {
        for (DatumId k = 0; k < n; ++k) {
          if (g.adjacent(i, j) && ds.holds(i, k) && !ds.holds(j, k)) {
            want.push_back({i, j, k});
          }
        }
      }
    }
    EXPECT_EQ(enumerate_transmissions(g, ds), want);
  }
}

TEST(Conflicts, BasicRules)
{
  const RadioConfig cfg;
  const Scenario s = layout({{-60, -1.75}, {-40, -1.75}, {40, 1.75}, {60, 1.75}});
  const VehNetGraph g = build_network_graph(s, link_budget(cfg), cfg);
  const ConflictPolicy basic{ConflictMode::kBasicOnly, link_budget(cfg).sinr_threshold_Theta};
  EXPECT_TRUE(conflicts({0, 1, 0}, {0, 2, 0}, basic, g, s, cfg));  // (a) same transmitter
  EXPECT_TRUE(conflicts({0, 1, 0}, {2, 1, 2}, basic, g, s, cfg));  // (b) same receiver
  EXPECT_TRUE(conflicts({0, 1, 0}, {1, 2, 1}, basic, g, s, cfg));  // (c) receiver transmits
  EXPECT_TRUE(conflicts({0, 1, 0}, {2, 0, 2}, basic, g, s, cfg));  // (c) transmitter receives
  EXPECT_FALSE(conflicts({0, 1, 0}, {2, 3, 2}, basic, g, s, cfg));
}

TEST(Conflicts, NeighbourRuleVersusSinrRule)
{
  // Two parallel links 30 m apart: neighbours in G_v, yet the narrow beams keep them apart.
  const RadioConfig cfg;
  const LinkBudget lb = link_budget(cfg);
  const Scenario s = layout({{-60, -5.25}, {-40, -5.25}, {-30, 5.25}, {-10, 5.25}});
  const VehNetGraph g = build_network_graph(s, lb, cfg);
  ASSERT_TRUE(g.adjacent(1, 2));
  const Transmission a{0, 1, 0};
  const Transmission b{2, 3, 2};
  EXPECT_TRUE(conflicts(a, b, {ConflictMode::kConventional, lb.sinr_threshold_Theta}, g, s, cfg));
  EXPECT_FALSE(conflicts(a, b, {ConflictMode::kMmWave, lb.sinr_threshold_Theta}, g, s, cfg));
  EXPECT_GT(sinr_pairwise(a, b, s, cfg), lb.sinr_threshold_Theta);
  EXPECT_GT(sinr_pairwise(b, a, s, cfg), lb.sinr_threshold_Theta);
}

TEST(Conflicts, SinrRuleCatchesAimedInterferer)
{
  // Interferer 2 -> 3 fires straight down the victim receiver's beam.
  const RadioConfig cfg;
  const LinkBudget lb = link_budget(cfg);
  const Scenario s = layout({{20, 1.75}, {40, 1.75}, {-10, 5.25}, {10, 5.25}});
  const VehNetGraph g = build_network_graph(s, lb, cfg);
  const Transmission victim{0, 1, 0};
  const Transmission interferer{2, 3, 2};
  const double sinr = sinr_pairwise(victim, interferer, s, cfg);
  const oracle::Radio r;
  EXPECT_NEAR(sinr, oracle::pairwise_sinr(s, r, victim, interferer), 1e-9 * sinr);
  EXPECT_EQ(
    conflicts(victim, interferer, {ConflictMode::kMmWave, lb.sinr_threshold_Theta}, g, s, cfg),
    sinr <= lb.sinr_threshold_Theta ||
      sinr_pairwise(interferer, victim, s, cfg) <= lb.sinr_threshold_Theta);
}

TEST(ConflictTable, AgreesWithPairPredicate)
{
  const RadioConfig cfg;
  const LinkBudget lb = link_budget(cfg);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    ScenarioConfig sc;
    sc.rng_seed = seed;
    sc.num_vehicles_Nv = 8;
    const Scenario s = build_scenario(sc);
    const ChannelTable ch(s, cfg);
    const VehNetGraph g = build_network_graph(ch, lb);
    for (const auto mode : {ConflictMode::kBasicOnly, ConflictMode::kConventional, ConflictMode::kMmWave}) {
      const ConflictPolicy policy{mode, lb.sinr_threshold_Theta};
      const ConflictTable table(g, ch, lb, policy);
      EXPECT_EQ(table.link_count(), 2 * g.edge_count());
      const std::vector<Transmission> all = enumerate_transmissions(g, DatasetState(s.size()));
      for (const auto & a : all) {
        for (const auto & b : all) {
          if (a == b) {
            continue;
          }
          EXPECT_EQ(table.conflicts(a, b), conflicts(a, b, policy, g, s, cfg))
            << "seed " << seed << " mode " << to_string(mode);
        }
      }
    }
  }
}

TEST(ConflictTable, RejectsNonLinks)
{
  const RadioConfig cfg;
  const LinkBudget lb = link_budget(cfg);
  const Scenario s = layout({{40.0, -1.75}, {-1.75, 40.0}, {0.0, 0.0}});
  const ChannelTable ch(s, cfg);
  const VehNetGraph g = build_network_graph(ch, lb);
  const ConflictTable table(g, ch, lb, {ConflictMode::kMmWave, lb.sinr_threshold_Theta});
  EXPECT_EQ(table.link_index(0, 1), -1);
  EXPECT_THROW((void)table.conflicts({0, 1, 0}, {2, 0, 2}), std::invalid_argument);
}

void expect_matches_oracle(const SchedulingGraph & sg, const oracle::Graph & want)
{
  ASSERT_EQ(sg.size(), want.weights.size());
  for (std::size_t u = 0; u < sg.size(); ++u) {
    const auto it = want.weights.find(sg.vertices[u]);
    ASSERT_NE(it, want.weights.end());
    EXPECT_NEAR(sg.weights[u], it->second, 1e-9);
  }
  std::set<std::pair<Transmission, Transmission>> got;
  for (const auto & [u, v] : sg.edges()) {
    const auto a = sg.vertices[u];
    const auto b = sg.vertices[v];
    got.insert(a < b ? std::pair{a, b} : std::pair{b, a});
  }
  EXPECT_EQ(got, want.edges);
}

TEST(BuildSchedulingGraph, MatchesBruteForceOracle)
{
  const RadioConfig cfg;
  const LinkBudget lb = link_budget(cfg);
  const oracle::Radio r;
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    ScenarioConfig sc;
    sc.rng_seed = seed;
    sc.num_vehicles_Nv = 5;
    sc.avg_gap_lavg = seed % 2 ? 40.0 : 20.0;
    const Scenario s = build_scenario(sc);
    const VehNetGraph g = build_network_graph(s, lb, cfg);
    const DatasetState ds = random_state(s.size(), rng, 0.25);
    for (const auto mode : {ConflictMode::kBasicOnly, ConflictMode::kConventional, ConflictMode::kMmWave}) {
      for (const auto wmode : {WeightMode::kMaxTransmission, WeightMode::kMaxDistance}) {
        const ConflictPolicy policy{mode, lb.sinr_threshold_Theta};
        const SchedulingGraph sg = build_scheduling_graph(g, ds, policy, wmode, s, cfg);
        expect_matches_oracle(sg, oracle::scheduling_graph(s, ds, mode, wmode, r));
      }
    }
  }
}

TEST(BuildSchedulingGraph, TableRouteAndGroupedRouteAgree)
{
  const RadioConfig cfg;
  const LinkBudget lb = link_budget(cfg);
  std::mt19937_64 rng(12);
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    ScenarioConfig sc;
    sc.rng_seed = seed;
    sc.num_vehicles_Nv = 10;
    const Scenario s = build_scenario(sc);
    const ChannelTable ch(s, cfg);
    const VehNetGraph g = build_network_graph(ch, lb);
    const DatasetState ds = random_state(s.size(), rng, 0.3);
    for (const auto mode : {ConflictMode::kBasicOnly, ConflictMode::kConventional, ConflictMode::kMmWave}) {
      const ConflictPolicy policy{mode, lb.sinr_threshold_Theta};
      const ConflictTable table(g, ch, lb, policy);
      const SchedulingGraph direct = build_scheduling_graph(g, ds, policy, WeightMode::kMaxDistance, s, cfg);
      const SchedulingGraph tabled = build_scheduling_graph(g, ds, table, WeightMode::kMaxDistance, s);
      const GroupedSchedulingGraph grouped =
        build_grouped_scheduling_graph(g, ds, table, WeightMode::kMaxDistance, s);
      const SchedulingGraph expanded = grouped.expand();
      EXPECT_EQ(grouped.vertex_count(), direct.size());
      EXPECT_EQ(direct.vertices, tabled.vertices);
      EXPECT_EQ(direct.vertices, expanded.vertices);
      EXPECT_EQ(direct.weights, expanded.weights);
      EXPECT_EQ(direct.adjacency, tabled.adjacency);
      EXPECT_EQ(direct.adjacency, expanded.adjacency);
    }
  }
}

TEST(BuildSchedulingGraph, InitialStateOnCompleteGraph)
{
  // Three mutually linked vehicles: 6 transmissions, every pair shares an endpoint.
  const RadioConfig cfg;
  const LinkBudget lb = link_budget(cfg);
  const Scenario s = layout({{20, -1.75}, {40, -1.75}, {60, -1.75}});
  const VehNetGraph g = build_network_graph(s, lb, cfg);
  ASSERT_EQ(g.edge_count(), 3U);
  const SchedulingGraph sg = build_scheduling_graph(
    g, DatasetState(3), {ConflictMode::kMmWave, lb.sinr_threshold_Theta}, WeightMode::kMaxTransmission, s, cfg);
  EXPECT_EQ(sg.size(), 6U);
  EXPECT_EQ(sg.edge_count(), 15U);
  EXPECT_EQ(sg.max_degree(), 5U);
}

TEST(WriteSchedulingGraph, Format)
{
  SchedulingGraph sg;
  sg.vertices = {{0, 1, 0}, {1, 0, 1}};
  sg.weights = {1.0, 2.5};
  sg.adjacency = {{1}, {0}};
  std::ostringstream out;
  write_scheduling_graph(out, sg);
  EXPECT_EQ(out.str(), "v 0 0 1 0 1\nv 1 1 0 1 2.5\ne 0 1\n");
}

}  // namespace
}  // namespace mmshare
