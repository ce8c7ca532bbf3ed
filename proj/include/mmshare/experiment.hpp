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

#ifndef MMSHARE__EXPERIMENT_HPP_
#define MMSHARE__EXPERIMENT_HPP_

#include "mmshare/geometry.hpp"
#include "mmshare/propagation.hpp"
#include "mmshare/schedgraph.hpp"
#include "mmshare/simulator.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mmshare
{

/// A CSV input does not match the pinned column layout.
class SchemaError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig
{
  ScenarioConfig scenario;
  RadioConfig radio;

  // Sweep axes. The cartesian product is run in this nesting order.
  std::vector<double> avg_gap_lavg{40.0};
  std::vector<int> num_vehicles_Nv{20};
  std::vector<double> beamwidth_3dB{15.0};
  std::vector<ConflictMode> conflict_mode{ConflictMode::kMmWave};
  std::vector<WeightMode> weight_mode{WeightMode::kMaxDistance};

  std::size_t tau_max{380};
  std::size_t replications{1};
  std::uint64_t seed_base{1};
  std::filesystem::path output{"out"};
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t threads{0};
  bool skipped_radiate{false};

  void validate() const;
};

/// Applies one `key = value` assignment. Sweep keys take comma-separated lists.
/// Throws ConfigError on an unknown key or a malformed value.
void apply_setting(ExperimentConfig & cfg, std::string_view key, std::string_view value);

/// Parses a line-oriented `key = value` document; `#` starts a comment.
ExperimentConfig parse_experiment_config(std::istream & in, ExperimentConfig base = {});
ExperimentConfig load_experiment_config(const std::filesystem::path & path, ExperimentConfig base = {});

/// One point of the parameter sweep.
struct SweepCase
{
  double avg_gap_lavg{0.0};
  int num_vehicles_Nv{0};
  double beamwidth_3dB{0.0};
  ConflictMode conflict_mode{ConflictMode::kMmWave};
  WeightMode weight_mode{WeightMode::kMaxDistance};

  std::string key() const;
  auto operator<=>(const SweepCase &) const = default;
};

std::vector<SweepCase> expand_sweep(const ExperimentConfig & cfg);

struct SlotRow
{
  std::size_t case_index{0};
  std::size_t run{0};
  std::uint64_t seed{0};
  SweepCase sweep;
  std::size_t slot{0};
  VehicleId vehicle{0};
  double normalized_area{0.0};
  std::size_t m_tau{0};
  std::size_t failures{0};
  std::size_t skipped{0};
};

struct RunRow
{
  std::size_t case_index{0};
  std::size_t run{0};
  std::uint64_t seed{0};
  SweepCase sweep;
  std::size_t tau_end{0};
  std::size_t planned_tau_end{0};
  bool planned_complete{false};
  bool connected{false};
  bool complete{false};
  double s_all_m2{0.0};
  std::size_t scheduled{0};
  std::size_t delivered{0};
  std::size_t failed{0};
  std::size_t skipped{0};
  std::size_t pairwise_violations{0};
  std::size_t lower_bound{0};
  std::size_t upper_bound{0};
};

inline constexpr std::string_view kSlotCsvHeader =
  "case,run,seed,avg_gap_lavg,num_vehicles_Nv,beamwidth_3dB,conflict_mode,weight_mode,"
  "slot,vehicle,normalized_area,m_tau,failures,skipped";
inline constexpr std::string_view kRunCsvHeader =
  "case,run,seed,avg_gap_lavg,num_vehicles_Nv,beamwidth_3dB,conflict_mode,weight_mode,"
  "tau_end,planned_tau_end,planned_complete,connected,complete,s_all_m2,scheduled,delivered,"
  "failed,skipped,pairwise_violations,lower_bound,upper_bound";
inline constexpr std::string_view kSummaryFormat = "mmshare-summary/1";

/// Everything one replication of one sweep case produces.
struct RunOutput
{
  RunRow run;
  std::vector<SlotRow> slots;
};

/// Simulates one replication (seed = seed_base + run) of one sweep case.
RunOutput run_replication(
  const ExperimentConfig & cfg, const SweepCase & sweep, std::size_t case_index, std::size_t run);

/// Runs every replication of every sweep case in a worker pool. Rows come
/// back ordered by case, then replication, then slot, then vehicle.
std::vector<RunOutput> run_all(const ExperimentConfig & cfg);

void write_slot_csv(std::ostream & out, const std::vector<RunOutput> & runs);
void write_run_csv(std::ostream & out, const std::vector<RunOutput> & runs);

std::vector<SlotRow> read_slot_csv(std::istream & in, std::string_view source = "<stream>");
std::vector<RunRow> read_run_csv(std::istream & in, std::string_view source = "<stream>");

struct ExperimentFiles
{
  std::filesystem::path slots_csv;
  std::filesystem::path runs_csv;
  std::filesystem::path summary_json;
};

/// Runs the sweep and writes slots.csv, runs.csv and summary.json under
/// cfg.output. On failure the files written so far are removed.
ExperimentFiles run_experiment(const ExperimentConfig & cfg);

/// Aggregates rows into the summary document (JSON text).
std::string summarize_rows(const std::vector<SlotRow> & slots, const std::vector<RunRow> & runs);

/// Reads per-slot and per-run CSVs (told apart by header) and summarizes them.
/// Throws SchemaError when a file matches neither layout.
std::string summarize(const std::vector<std::filesystem::path> & csv_paths);

/// `num_vehicles,lower,upper` rows for each requested vehicle count.
std::string bounds_table(const std::vector<std::size_t> & vehicle_counts);

}  // namespace mmshare

#endif  // MMSHARE__EXPERIMENT_HPP_
