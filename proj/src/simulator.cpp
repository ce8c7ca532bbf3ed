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

#include "mmshare/simulator.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mmshare
{

namespace
{

std::vector<Transmission> grouped_selection(const GroupedSchedulingGraph & sg, const IndependentSet & set)
{
  std::vector<Transmission> out;
  out.reserve(set.vertices.size());
  std::size_t group = 0;
  std::uint32_t base = 0;
  for (const auto v : set.vertices) {
    while (v >= base + sg.groups[group].data.size()) {
      base += static_cast<std::uint32_t>(sg.groups[group].data.size());
      ++group;
    }
    const LinkGroup & grp = sg.groups[group];
    out.push_back({grp.tx, grp.rx, grp.data[v - base]});
  }
  return out;
}

}  // namespace

Schedule plan_schedule(
  const VehNetGraph & g, const ConflictTable & table, WeightMode mode, const Scenario & s,
  const PlannerOptions & options)
{
  Schedule schedule;
  DatasetState ds(s.size());
  while (schedule.slots.size() < options.tau_max) {
    std::vector<Transmission> chosen;
    if (options.explicit_graph) {
      const SchedulingGraph sg = build_scheduling_graph(g, ds, table, mode, s);
      if (sg.size() == 0) {
        schedule.exhausted = true;
        break;
      }
      for (const auto v : greedy_mwis(sg, options.rule).vertices) {
        chosen.push_back(sg.vertices[v]);
      }
    } else {
      const GroupedSchedulingGraph sg = build_grouped_scheduling_graph(g, ds, table, mode, s);
      if (sg.groups.empty()) {
        schedule.exhausted = true;
        break;
      }
      chosen = grouped_selection(sg, greedy_mwis(sg, options.rule));
    }
    for (const Transmission & t : chosen) {
      ds.add(t.rx, t.datum);
    }
    schedule.slots.push_back(std::move(chosen));
    ds.slot = schedule.slots.size();
  }
  if (!schedule.exhausted && enumerate_transmissions(g, ds).empty()) {
    schedule.exhausted = true;
  }
  schedule.planned_final = std::move(ds);
  return schedule;
}

Schedule plan_schedule(
  const VehNetGraph & g, const ConflictPolicy & policy, WeightMode mode, std::size_t tau_max,
  const Scenario & s, const RadioConfig & cfg)
{
  const ChannelTable channel(s, cfg);
  const ConflictTable table(g, channel, link_budget(cfg), policy);
  PlannerOptions options;
  options.tau_max = tau_max;
  return plan_schedule(g, table, mode, s, options);
}

std::size_t SimResult::scheduled_count() const
{
  std::size_t n = 0;
  for (const auto & slot : slots) {
    n += slot.scheduled.size();
  }
  return n;
}

std::size_t SimResult::delivered_count() const
{
  std::size_t n = 0;
  for (const auto & slot : slots) {
    n += slot.delivered.size();
  }
  return n;
}

std::size_t SimResult::failed_count() const
{
  std::size_t n = 0;
  for (const auto & slot : slots) {
    n += slot.failed.size();
  }
  return n;
}

std::size_t SimResult::skipped_count() const
{
  std::size_t n = 0;
  for (const auto & slot : slots) {
    n += slot.skipped.size();
  }
  return n;
}

const std::vector<double> & SimResult::normalized_at(std::size_t tau) const
{
  if (normalized.empty()) {
    throw std::logic_error("SimResult has no coverage trajectory");
  }
  return normalized[std::min(tau, normalized.size() - 1)];
}

SimResult execute_schedule(
  const Schedule & schedule, const Scenario & s, const ChannelTable & channel,
  const LinkBudget & lb, const VehNetGraph & g, const ConflictPolicy & policy,
  const ExecutionOptions & options)
{
  SimResult result;
  result.connected = is_connected(g);
  const double noise = lb.noise_power_mw();
  const double theta = lb.sinr_threshold_Theta;

  DatasetState ds(s.size());
  CoverageTracker coverage(s, ds);
  result.all_area_m2 = coverage.all_area();
  result.datasets.push_back(ds);
  result.n_tau.push_back(ds.total());
  result.normalized.push_back(coverage.normalized_all());

  for (const auto & planned : schedule.slots) {
    SlotOutcome outcome;
    outcome.scheduled = planned;
    std::vector<Transmission> radiating;
    std::vector<char> carries;  // radiating[k] actually holds its datum
    for (const Transmission & t : planned) {
      const bool holds = ds.holds(t.tx, t.datum);
      if (!holds) {
        outcome.skipped.push_back(t);
      }
      if (holds || options.skipped_radiate) {
        radiating.push_back(t);
        carries.push_back(holds ? 1 : 0);
      }
    }

    if (policy.mode == ConflictMode::kMmWave) {
      for (std::size_t a = 0; a < radiating.size(); ++a) {
        for (std::size_t b = a + 1; b < radiating.size(); ++b) {
          const Transmission & x = radiating[a];
          const Transmission & y = radiating[b];
          if (x.tx == y.tx || x.rx == y.rx || x.tx == y.rx || x.rx == y.tx) {
            ++result.pairwise_violations;
            continue;
          }
          const double sinr_xy =
            channel.power_mw(x.tx, x.rx, x.rx, x.tx) / (noise + channel.power_mw(y.tx, y.rx, x.rx, x.tx));
          const double sinr_yx =
            channel.power_mw(y.tx, y.rx, y.rx, y.tx) / (noise + channel.power_mw(x.tx, x.rx, y.rx, y.tx));
          if (!(sinr_xy > theta) || !(sinr_yx > theta)) {
            ++result.pairwise_violations;
          }
        }
      }
    }

    std::vector<Transmission> successes;
    for (std::size_t a = 0; a < radiating.size(); ++a) {
      if (!carries[a]) {
        continue;
      }
      const Transmission & t = radiating[a];
      bool half_duplex_clash = false;
      double interference = 0.0;
      for (std::size_t b = 0; b < radiating.size(); ++b) {
        if (b == a) {
          continue;
        }
        const Transmission & u = radiating[b];
        if (u.tx == t.rx) {
          half_duplex_clash = true;
          break;
        }
        if (u.tx == t.tx) {
          continue;  // one beam per transmitter; this signal is not interference from a third party
        }
        interference += channel.power_mw(u.tx, u.rx, t.rx, t.tx);
      }
      const double sinr = channel.power_mw(t.tx, t.rx, t.rx, t.tx) / (noise + interference);
      if (!half_duplex_clash && sinr >= theta) {
        successes.push_back(t);
        outcome.delivered.push_back(t);
      } else {
        outcome.failed.push_back(t);
      }
    }

    for (const Transmission & t : successes) {
      if (ds.add(t.rx, t.datum)) {
        coverage.add(t.rx, t.datum);
      }
    }
    ds.slot = result.slots.size() + 1;
    result.slots.push_back(std::move(outcome));
    result.datasets.push_back(ds);
    result.n_tau.push_back(ds.total());
    result.normalized.push_back(coverage.normalized_all());
  }
  result.tau_end = result.slots.size();
  return result;
}

SimResult execute_schedule(
  const Schedule & schedule, const Scenario & s, const RadioConfig & cfg,
  const ConflictPolicy & policy, const ExecutionOptions & options)
{
  const ChannelTable channel(s, cfg);
  const LinkBudget lb = link_budget(cfg);
  const VehNetGraph g = build_network_graph(channel, lb);
  return execute_schedule(schedule, s, channel, lb, g, policy, options);
}

std::pair<std::size_t, std::size_t> tau_bounds(std::size_t num_vehicles)
{
  if (num_vehicles < 2) {
    throw std::domain_error(
      "tau_bounds: need at least 2 vehicles, got " + std::to_string(num_vehicles));
  }
  const std::size_t pairs = num_vehicles * num_vehicles - num_vehicles;
  const std::size_t per_slot = num_vehicles / 2;
  return {(pairs + per_slot - 1) / per_slot, pairs};
}

}  // namespace mmshare
