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

#ifndef MMSHARE__SIMULATOR_HPP_
#define MMSHARE__SIMULATOR_HPP_

#include "mmshare/coverage.hpp"
#include "mmshare/mwis.hpp"
#include "mmshare/netgraph.hpp"
#include "mmshare/propagation.hpp"
#include "mmshare/schedgraph.hpp"

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace mmshare
{

inline constexpr std::size_t kUnlimitedSlots = std::numeric_limits<std::size_t>::max();

struct PlannerOptions
{
  /// Number of usable slots; planning stops after this many.
  std::size_t tau_max{kUnlimitedSlots};
  GreedyRule rule{GreedyRule::kGwmin};
  /// Build every slot's scheduling graph vertex by vertex instead of per link
  /// group. Same schedule, much slower; kept as a cross-check.
  bool explicit_graph{false};
};

/// Planned transmissions per slot, assuming every reception succeeds.
struct Schedule
{
  std::vector<std::vector<Transmission>> slots;
  DatasetState planned_final;
  /// True when planning stopped because no transmission was left.
  bool exhausted{false};

  std::size_t planned_tau_end() const { return slots.size(); }
};

Schedule plan_schedule(
  const VehNetGraph & g, const ConflictTable & table, WeightMode mode, const Scenario & s,
  const PlannerOptions & options = {});

Schedule plan_schedule(
  const VehNetGraph & g, const ConflictPolicy & policy, WeightMode mode, std::size_t tau_max,
  const Scenario & s, const RadioConfig & cfg);

struct ExecutionOptions
{
  /// Transmitters that lack their scheduled datum still radiate (and interfere).
  bool skipped_radiate{false};
};

struct SlotOutcome
{
  std::vector<Transmission> scheduled;
  std::vector<Transmission> delivered;
  std::vector<Transmission> failed;   // SINR below threshold
  std::vector<Transmission> skipped;  // transmitter lacked the datum
};

struct SimResult
{
  std::vector<SlotOutcome> slots;
  /// datasets[tau] is the state before slot tau; size tau_end + 1.
  std::vector<DatasetState> datasets;
  std::vector<std::size_t> n_tau;
  /// normalized[tau][vehicle]
  std::vector<std::vector<double>> normalized;
  double all_area_m2{0.0};
  std::size_t tau_end{0};
  bool connected{false};
  /// Co-slot pairs of radiating transmissions that fail a pairwise SINR check
  /// (only evaluated under the mmWave conflict rule).
  std::size_t pairwise_violations{0};

  std::size_t scheduled_count() const;
  std::size_t delivered_count() const;
  std::size_t failed_count() const;
  std::size_t skipped_count() const;
  bool complete() const { return !datasets.empty() && datasets.back().all_complete(); }
  /// Normalized area at slot tau, holding the final value after tau_end.
  const std::vector<double> & normalized_at(std::size_t tau) const;
};

SimResult execute_schedule(
  const Schedule & schedule, const Scenario & s, const ChannelTable & channel,
  const LinkBudget & lb, const VehNetGraph & g, const ConflictPolicy & policy,
  const ExecutionOptions & options = {});

SimResult execute_schedule(
  const Schedule & schedule, const Scenario & s, const RadioConfig & cfg,
  const ConflictPolicy & policy, const ExecutionOptions & options = {});

/// Slot-count bounds for complete sharing over a connected graph:
/// (ceil((N^2 - N) / floor(N / 2)), N^2 - N). Throws std::domain_error for N < 2.
std::pair<std::size_t, std::size_t> tau_bounds(std::size_t num_vehicles);

}  // namespace mmshare

#endif  // MMSHARE__SIMULATOR_HPP_
