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

#ifndef MMSHARE__MWIS_HPP_
#define MMSHARE__MWIS_HPP_

#include "mmshare/schedgraph.hpp"

#include <cstdint>
#include <vector>

namespace mmshare
{

struct IndependentSet
{
  std::vector<std::uint32_t> vertices;  // ascending
  double total_weight{0.0};
};

enum class GreedyRule {
  kGwmin,          // maximize W(v) / (deg(v) + 1) over the remaining graph
  kMaxWeightFirst  // maximize W(v)
};

/// Greedy maximum-weight independent set; ties go to the lowest vertex index.
/// Nonempty whenever the graph is nonempty. GWMIN attains at least 1/Delta of
/// the optimum.
IndependentSet greedy_mwis(const SchedulingGraph & g, GreedyRule rule = GreedyRule::kGwmin);

/// Same selection as greedy_mwis(g.expand(), rule), computed on link groups.
/// Vertex indices refer to the expanded graph.
IndependentSet greedy_mwis(const GroupedSchedulingGraph & g, GreedyRule rule = GreedyRule::kGwmin);

inline constexpr std::size_t kExactMwisLimit = 24;

/// Optimal independent set by branch and bound; among equal-weight optima the
/// lexicographically smallest vertex list wins. Throws std::length_error above
/// kExactMwisLimit vertices.
IndependentSet exact_mwis(const SchedulingGraph & g);

bool is_independent(const SchedulingGraph & g, const std::vector<std::uint32_t> & vertices);

}  // namespace mmshare

#endif  // MMSHARE__MWIS_HPP_
