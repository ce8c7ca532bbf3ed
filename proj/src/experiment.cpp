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

#include "mmshare/experiment.hpp"

#include "mmshare/coverage.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>
#include <unordered_map>

namespace mmshare
{

namespace
{

std::string_view trim(std::string_view text)
{
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) {
      return out;
    }
    start = pos + 1;
  }
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected)
{
  throw ConfigError(
    "invalid value '" + std::string(value) + "' for " + std::string(key) + " (expected " +
    std::string(expected) + ")");
}

double to_double(std::string_view key, std::string_view text)
{
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    bad_value(key, text, "a number");
  }
  return v;
}

template <typename Int>
Int to_integer(std::string_view key, std::string_view text)
{
  text = trim(text);
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    bad_value(key, text, "an integer");
  }
  return v;
}

bool to_bool(std::string_view key, std::string_view text)
{
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") {
    return true;
  }
  if (text == "false" || text == "0" || text == "no") {
    return false;
  }
  bad_value(key, text, "true or false");
}

template <typename T, typename Parse>
std::vector<T> to_list(std::string_view key, std::string_view text, Parse parse)
{
  std::vector<T> out;
  for (const auto item : split(text, ',')) {
    if (trim(item).empty()) {
      bad_value(key, text, "a comma-separated list without empty items");
    }
    out.push_back(parse(key, trim(item)));
  }
  return out;
}

std::string format_double(double v, const char * spec = "%.10g")
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

using Setter = std::function<void(ExperimentConfig &, std::string_view, std::string_view)>;

const std::map<std::string, Setter, std::less<>> & setters()
{
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    auto num = [](double ScenarioConfig::*field) {
      return [field](ExperimentConfig & c, std::string_view k, std::string_view v) {
        c.scenario.*field = to_double(k, v);
      };
    };
    auto radio = [](double RadioConfig::*field) {
      return [field](ExperimentConfig & c, std::string_view k, std::string_view v) {
        c.radio.*field = to_double(k, v);
      };
    };
    t["lanes_per_road"] = [](ExperimentConfig & c, std::string_view k, std::string_view v) {
      c.scenario.lanes_per_road = to_integer<int>(k, v);
    };
    t["lane_width"] = num(&ScenarioConfig::lane_width);
    t["sidewalk_width"] = num(&ScenarioConfig::sidewalk_width);
    t["sensor_range_rs"] = num(&ScenarioConfig::sensor_range_rs);
    t["vehicle_length"] = num(&ScenarioConfig::vehicle_length);
    t["vehicle_width"] = num(&ScenarioConfig::vehicle_width);
    t["road_extent"] = num(&ScenarioConfig::road_extent);
    t["grid_res"] = num(&ScenarioConfig::grid_res);
    t["sensor_shape"] = [](ExperimentConfig & c, std::string_view k, std::string_view v) {
      v = trim(v);
      if (v == "arm") {
        c.scenario.sensor_shape = SensorShape::kArm;
      } else if (v == "euclidean") {
        c.scenario.sensor_shape = SensorShape::kEuclidean;
      } else {
        bad_value(k, v, "arm or euclidean");
      }
    };
    t["sensor_extent"] = [](ExperimentConfig & c, std::string_view k, std::string_view v) {
      v = trim(v);
      if (v == "span") {
        c.scenario.sensor_extent = SensorExtent::kSpan;
      } else if (v == "radius") {
        c.scenario.sensor_extent = SensorExtent::kRadius;
      } else {
        bad_value(k, v, "span or radius");
      }
    };
    t["junction_vehicles"] = [](ExperimentConfig & c, std::string_view k, std::string_view v) {
      c.scenario.junction_vehicles = to_bool(k, v);
    };

    t["bandwidth_B"] = radio(&RadioConfig::bandwidth_B);
    t["noise_density_N"] = radio(&RadioConfig::noise_density_N);
    t["rate_req"] = radio(&RadioConfig::rate_req);
    t["tx_power_Pt"] = radio(&RadioConfig::tx_power_Pt);
    t["sidelobe_floor"] = radio(&RadioConfig::sidelobe_floor);
    t["pathloss_exponent"] = radio(&RadioConfig::pathloss_exponent);
    t["pathloss_ref_db"] = radio(&RadioConfig::pathloss_ref_db);
    t["per_blocker_loss"] = radio(&RadioConfig::per_blocker_loss);

    t["avg_gap_lavg"] = [](ExperimentConfig & c, std::string_view k, std::string_view v) {
      c.avg_gap_lavg = to_list<double>(k, v, to_double);
    };
    t["num_vehicles_Nv"] = [](ExperimentConfig & c, std::string_view k, std::string_view v) {
      c.num_vehicles_Nv = to_list<int>(k, v, to_integer<int>);
    };
    t["beamwidth_3dB"] = [](ExperimentConfig & c, std::string_view k, std::string_view v) {
      c.beamwidth_3dB = to_list<double>(k, v, to_double);
    };
    t["conflict_mode"] = [](ExperimentConfig & c, std::string_view k, std::string_view v) {
      c.conflict_mode = to_list<ConflictMode>(
        k, v, [](std::string_view, std::string_view item) { return parse_conflict_mode(item); });
    };
    t["weight_mode"] = [](ExperimentConfig & c, std::string_view k, std::string_view v) {
      c.weight_mode = to_list<WeightMode>(
        k, v, [](std::string_view, std::string_view item) { return parse_weight_mode(item); });
    };

    t["tau_max"] = [](ExperimentConfig & c, std::string_view k, std::string_view v) {
      v = trim(v);
      c.tau_max = (v == "inf" || v == "unlimited") ? kUnlimitedSlots : to_integer<std::size_t>(k, v);
    };
    t["replications"] = [](ExperimentConfig & c, std::string_view k, std::string_view v) {
      c.replications = to_integer<std::size_t>(k, v);
    };
    t["seed_base"] = [](ExperimentConfig & c, std::string_view k, std::string_view v) {
      c.seed_base = to_integer<std::uint64_t>(k, v);
    };
    t["output"] = [](ExperimentConfig & c, std::string_view k, std::string_view v) {
      if (trim(v).empty()) {
        bad_value(k, v, "a path");
      }
      c.output = std::string(trim(v));
    };
    t["threads"] = [](ExperimentConfig & c, std::string_view k, std::string_view v) {
      c.threads = to_integer<std::size_t>(k, v);
    };
    t["skipped_radiate"] = [](ExperimentConfig & c, std::string_view k, std::string_view v) {
      c.skipped_radiate = to_bool(k, v);
    };
    return t;
  }();
  return table;
}

}  // namespace

void ExperimentConfig::validate() const
{
  if (avg_gap_lavg.empty() || num_vehicles_Nv.empty() || beamwidth_3dB.empty() ||
      conflict_mode.empty() || weight_mode.empty()) {
    throw ConfigError("every sweep list needs at least one value");
  }
  if (replications < 1) {
    throw ConfigError("replications must be at least 1");
  }
  if (tau_max < 1) {
    throw ConfigError("tau_max must be at least 1");
  }
  for (const double l : avg_gap_lavg) {
    for (const int n : num_vehicles_Nv) {
      ScenarioConfig sc = scenario;
      sc.avg_gap_lavg = l;
      sc.num_vehicles_Nv = n;
      sc.validate();
    }
  }
  for (const double bw : beamwidth_3dB) {
    RadioConfig rc = radio;
    rc.beamwidth_3dB = bw;
    rc.validate();
  }
}

void apply_setting(ExperimentConfig & cfg, std::string_view key, std::string_view value)
{
  key = trim(key);
  const auto it = setters().find(key);
  if (it == setters().end()) {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
  it->second(cfg, key, value);
}

ExperimentConfig parse_experiment_config(std::istream & in, ExperimentConfig base)
{
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) {
      continue;
    }
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    try {
      apply_setting(base, view.substr(0, eq), view.substr(eq + 1));
    } catch (const ConfigError & e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

ExperimentConfig load_experiment_config(const std::filesystem::path & path, ExperimentConfig base)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open configuration file " + path.string());
  }
  try {
    return parse_experiment_config(in, std::move(base));
  } catch (const ConfigError & e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string SweepCase::key() const
{
  return "lavg=" + format_double(avg_gap_lavg) + " nv=" + std::to_string(num_vehicles_Nv) +
         " bw=" + format_double(beamwidth_3dB) + " mode=" + std::string(to_string(conflict_mode)) +
         " weight=" + std::string(to_string(weight_mode));
}

std::vector<SweepCase> expand_sweep(const ExperimentConfig & cfg)
{
  std::vector<SweepCase> out;
  for (const double l : cfg.avg_gap_lavg) {
    for (const int n : cfg.num_vehicles_Nv) {
      for (const double bw : cfg.beamwidth_3dB) {
        for (const ConflictMode m : cfg.conflict_mode) {
          for (const WeightMode w : cfg.weight_mode) {
            out.push_back({l, n, bw, m, w});
          }
        }
      }
    }
  }
  return out;
}

RunOutput run_replication(
  const ExperimentConfig & cfg, const SweepCase & sweep, std::size_t case_index, std::size_t run)
{
  ScenarioConfig sc = cfg.scenario;
  sc.avg_gap_lavg = sweep.avg_gap_lavg;
  sc.num_vehicles_Nv = sweep.num_vehicles_Nv;
  sc.rng_seed = cfg.seed_base + run;
  RadioConfig rc = cfg.radio;
  rc.beamwidth_3dB = sweep.beamwidth_3dB;

  const Scenario s = build_scenario(sc);
  const LinkBudget lb = link_budget(rc);
  const ChannelTable channel(s, rc);
  const VehNetGraph g = build_network_graph(channel, lb);
  const ConflictPolicy policy{sweep.conflict_mode, lb.sinr_threshold_Theta};
  const ConflictTable table(g, channel, lb, policy);
  PlannerOptions planner;
  planner.tau_max = cfg.tau_max;
  const Schedule schedule = plan_schedule(g, table, sweep.weight_mode, s, planner);
  ExecutionOptions exec;
  exec.skipped_radiate = cfg.skipped_radiate;
  const SimResult result = execute_schedule(schedule, s, channel, lb, g, policy, exec);

  RunOutput out;
  RunRow & r = out.run;
  r.case_index = case_index;
  r.run = run;
  r.seed = sc.rng_seed;
  r.sweep = sweep;
  r.tau_end = result.tau_end;
  r.planned_tau_end = schedule.planned_tau_end();
  r.planned_complete = schedule.planned_final.all_complete();
  r.connected = result.connected;
  r.complete = result.complete();
  r.s_all_m2 = result.all_area_m2;
  r.scheduled = result.scheduled_count();
  r.delivered = result.delivered_count();
  r.failed = result.failed_count();
  r.skipped = result.skipped_count();
  r.pairwise_violations = result.pairwise_violations;
  if (s.size() >= 2) {
    std::tie(r.lower_bound, r.upper_bound) = tau_bounds(s.size());
  }

  out.slots.reserve((result.tau_end + 1) * s.size());
  for (std::size_t tau = 0; tau <= result.tau_end; ++tau) {
    for (VehicleId v = 0; v < s.size(); ++v) {
      SlotRow row;
      row.case_index = case_index;
      row.run = run;
      row.seed = r.seed;
      row.sweep = sweep;
      row.slot = tau;
      row.vehicle = v;
      row.normalized_area = result.normalized[tau][v];
      if (tau > 0) {
        const SlotOutcome & o = result.slots[tau - 1];
        row.m_tau = o.scheduled.size();
        row.failures = o.failed.size();
        row.skipped = o.skipped.size();
      }
      out.slots.push_back(row);
    }
  }
  return out;
}

std::vector<RunOutput> run_all(const ExperimentConfig & cfg)
{
  cfg.validate();
  const std::vector<SweepCase> cases = expand_sweep(cfg);
  const std::size_t jobs = cases.size() * cfg.replications;
  std::vector<RunOutput> out(jobs);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      try {
        const std::size_t c = j / cfg.replications;
        out[j] = run_replication(cfg, cases[c], c, j % cfg.replications);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        next = jobs;
      }
    }
  };

  std::size_t threads = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(jobs, 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
    for (auto & th : pool) {
      th.join();
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return out;
}

namespace
{

void write_sweep_columns(std::ostream & out, std::size_t c, std::size_t run, std::uint64_t seed, const SweepCase & s)
{
  out << c << ',' << run << ',' << seed << ',' << format_double(s.avg_gap_lavg) << ','
      << s.num_vehicles_Nv << ',' << format_double(s.beamwidth_3dB) << ','
      << to_string(s.conflict_mode) << ',' << to_string(s.weight_mode);
}

}  // namespace

void write_slot_csv(std::ostream & out, const std::vector<RunOutput> & runs)
{
  out << kSlotCsvHeader << '\n';
  for (const RunOutput & r : runs) {
    for (const SlotRow & row : r.slots) {
      write_sweep_columns(out, row.case_index, row.run, row.seed, row.sweep);
      out << ',' << row.slot << ',' << row.vehicle << ',' << format_double(row.normalized_area, "%.9f")
          << ',' << row.m_tau << ',' << row.failures << ',' << row.skipped << '\n';
    }
  }
}

void write_run_csv(std::ostream & out, const std::vector<RunOutput> & runs)
{
  out << kRunCsvHeader << '\n';
  for (const RunOutput & ro : runs) {
    const RunRow & r = ro.run;
    write_sweep_columns(out, r.case_index, r.run, r.seed, r.sweep);
    out << ',' << r.tau_end << ',' << r.planned_tau_end << ',' << int{r.planned_complete} << ','
        << int{r.connected} << ',' << int{r.complete} << ',' << format_double(r.s_all_m2, "%.4f") << ','
        << r.scheduled << ',' << r.delivered << ',' << r.failed << ',' << r.skipped << ','
        << r.pairwise_violations << ',' << r.lower_bound << ',' << r.upper_bound << '\n';
  }
}

namespace
{

class CsvReader
{
public:
  CsvReader(std::istream & in, std::string_view source, std::string_view header)
  : in_(in), source_(source)
  {
    std::string line;
    if (!std::getline(in_, line)) {
      throw SchemaError(source_ + ": empty file, expected header '" + std::string(header) + "'");
    }
    check_header(trim(line), header);
    columns_ = split(header, ',').size();
  }

  bool next()
  {
    while (std::getline(in_, line_)) {
      ++line_no_;
      if (trim(line_).empty()) {
        continue;
      }
      std::string_view view = line_;
      if (!view.empty() && view.back() == '\r') {
        view.remove_suffix(1);
      }
      fields_ = split(view, ',');
      if (fields_.size() != columns_) {
        throw SchemaError(
          where() + ": expected " + std::to_string(columns_) + " fields, found " +
          std::to_string(fields_.size()));
      }
      return true;
    }
    return false;
  }

  std::string_view field(std::size_t k) const { return fields_[k]; }

  template <typename T>
  T integer(std::size_t k) const
  {
    try {
      return to_integer<T>("column " + std::to_string(k + 1), fields_[k]);
    } catch (const ConfigError & e) {
      throw SchemaError(where() + ": " + e.what());
    }
  }

  double real(std::size_t k) const
  {
    try {
      return to_double("column " + std::to_string(k + 1), fields_[k]);
    } catch (const ConfigError & e) {
      throw SchemaError(where() + ": " + e.what());
    }
  }

  bool flag(std::size_t k) const
  {
    try {
      return to_bool("column " + std::to_string(k + 1), fields_[k]);
    } catch (const ConfigError & e) {
      throw SchemaError(where() + ": " + e.what());
    }
  }

  SweepCase sweep() const
  {
    SweepCase s;
    s.avg_gap_lavg = real(3);
    s.num_vehicles_Nv = integer<int>(4);
    s.beamwidth_3dB = real(5);
    try {
      s.conflict_mode = parse_conflict_mode(field(6));
      s.weight_mode = parse_weight_mode(field(7));
    } catch (const ConfigError & e) {
      throw SchemaError(where() + ": " + e.what());
    }
    return s;
  }

private:
  std::string where() const { return source_ + ":" + std::to_string(line_no_ + 1); }

  void check_header(std::string_view found, std::string_view expected) const
  {
    const auto f = split(found, ',');
    const auto e = split(expected, ',');
    for (std::size_t k = 0; k < std::max(f.size(), e.size()); ++k) {
      if (k >= f.size()) {
        throw SchemaError(source_ + ": missing column '" + std::string(e[k]) + "'");
      }
      if (k >= e.size()) {
        throw SchemaError(source_ + ": unexpected column '" + std::string(f[k]) + "'");
      }
      if (trim(f[k]) != e[k]) {
        throw SchemaError(
          source_ + ": column " + std::to_string(k + 1) + " is '" + std::string(f[k]) +
          "', expected '" + std::string(e[k]) + "'");
      }
    }
  }

  std::istream & in_;
  std::string source_;
  std::string line_;
  std::vector<std::string_view> fields_;
  std::size_t columns_{0};
  std::size_t line_no_{0};
};

}  // namespace

std::vector<SlotRow> read_slot_csv(std::istream & in, std::string_view source)
{
  CsvReader csv(in, source, kSlotCsvHeader);
  std::vector<SlotRow> out;
  while (csv.next()) {
    SlotRow r;
    r.case_index = csv.integer<std::size_t>(0);
    r.run = csv.integer<std::size_t>(1);
    r.seed = csv.integer<std::uint64_t>(2);
    r.sweep = csv.sweep();
    r.slot = csv.integer<std::size_t>(8);
    r.vehicle = csv.integer<VehicleId>(9);
    r.normalized_area = csv.real(10);
    r.m_tau = csv.integer<std::size_t>(11);
    r.failures = csv.integer<std::size_t>(12);
    r.skipped = csv.integer<std::size_t>(13);
    out.push_back(r);
  }
  return out;
}

std::vector<RunRow> read_run_csv(std::istream & in, std::string_view source)
{
  CsvReader csv(in, source, kRunCsvHeader);
  std::vector<RunRow> out;
  while (csv.next()) {
    RunRow r;
    r.case_index = csv.integer<std::size_t>(0);
    r.run = csv.integer<std::size_t>(1);
    r.seed = csv.integer<std::uint64_t>(2);
    r.sweep = csv.sweep();
    r.tau_end = csv.integer<std::size_t>(8);
    r.planned_tau_end = csv.integer<std::size_t>(9);
    r.planned_complete = csv.flag(10);
    r.connected = csv.flag(11);
    r.complete = csv.flag(12);
    r.s_all_m2 = csv.real(13);
    r.scheduled = csv.integer<std::size_t>(14);
    r.delivered = csv.integer<std::size_t>(15);
    r.failed = csv.integer<std::size_t>(16);
    r.skipped = csv.integer<std::size_t>(17);
    r.pairwise_violations = csv.integer<std::size_t>(18);
    r.lower_bound = csv.integer<std::size_t>(19);
    r.upper_bound = csv.integer<std::size_t>(20);
    out.push_back(r);
  }
  return out;
}

namespace
{

nlohmann::ordered_json cdf_json(const std::vector<double> & values)
{
  auto arr = nlohmann::ordered_json::array();
  for (const auto & [x, f] : empirical_cdf(values)) {
    arr.push_back({x, f});
  }
  return arr;
}

nlohmann::ordered_json distribution_json(const std::vector<double> & values)
{
  nlohmann::ordered_json j;
  j["count"] = values.size();
  if (values.empty()) {
    return j;
  }
  j["mean"] = mean(values);
  j["p10"] = percentile(values, 0.1);
  j["median"] = percentile(values, 0.5);
  j["p90"] = percentile(values, 0.9);
  j["cdf"] = cdf_json(values);
  return j;
}

struct CaseAccumulator
{
  // (run, seed) -> slot -> per-vehicle areas
  std::map<std::pair<std::size_t, std::uint64_t>, std::map<std::size_t, std::vector<double>>> areas;
  std::vector<RunRow> runs;
};

}  // namespace

std::string summarize_rows(const std::vector<SlotRow> & slots, const std::vector<RunRow> & runs)
{
  std::map<SweepCase, CaseAccumulator> cases;
  for (const SlotRow & r : slots) {
    auto & by_slot = cases[r.sweep].areas[{r.run, r.seed}];
    by_slot[r.slot].push_back(r.normalized_area);
  }
  for (const RunRow & r : runs) {
    cases[r.sweep].runs.push_back(r);
  }

  nlohmann::ordered_json doc;
  doc["format"] = kSummaryFormat;
  doc["cases"] = nlohmann::ordered_json::array();
  for (const auto & [sweep, acc] : cases) {
    nlohmann::ordered_json c;
    c["avg_gap_lavg"] = sweep.avg_gap_lavg;
    c["num_vehicles_Nv"] = sweep.num_vehicles_Nv;
    c["beamwidth_3dB"] = sweep.beamwidth_3dB;
    c["conflict_mode"] = to_string(sweep.conflict_mode);
    c["weight_mode"] = to_string(sweep.weight_mode);

    if (!acc.areas.empty()) {
      // Per-run mean over vehicles, held at its last value past that run's end.
      std::size_t horizon = 0;
      std::vector<std::vector<double>> run_means;
      std::vector<double> final_areas;
      for (const auto & [id, by_slot] : acc.areas) {
        std::vector<double> means;
        for (const auto & [slot, values] : by_slot) {
          if (slot != means.size()) {
            throw SchemaError(
              "slot rows of run " + std::to_string(id.first) + " (seed " + std::to_string(id.second) +
              ") skip slot " + std::to_string(means.size()));
          }
          means.push_back(mean(values));
        }
        final_areas.insert(final_areas.end(), by_slot.rbegin()->second.begin(), by_slot.rbegin()->second.end());
        horizon = std::max(horizon, means.size());
        run_means.push_back(std::move(means));
      }
      std::vector<double> by_slot_mean(horizon, 0.0);
      for (std::size_t tau = 0; tau < horizon; ++tau) {
        double sum = 0.0;
        for (const auto & m : run_means) {
          sum += m[std::min(tau, m.size() - 1)];
        }
        by_slot_mean[tau] = sum / static_cast<double>(run_means.size());
      }
      c["slot_runs"] = run_means.size();
      c["mean_area_by_slot"] = by_slot_mean;
      c["final_area"] = distribution_json(final_areas);
    }

    if (!acc.runs.empty()) {
      std::size_t connected = 0;
      std::size_t violations = 0;
      std::size_t scheduled = 0;
      std::size_t failed = 0;
      std::size_t skipped = 0;
      std::size_t pairwise = 0;
      std::vector<double> s_all;
      std::vector<double> tau_end;
      for (const RunRow & r : acc.runs) {
        s_all.push_back(r.s_all_m2);
        scheduled += r.scheduled;
        failed += r.failed;
        skipped += r.skipped;
        pairwise += r.pairwise_violations;
        if (!r.connected) {
          continue;
        }
        ++connected;
        tau_end.push_back(static_cast<double>(r.planned_tau_end));
        if (r.planned_complete &&
            (r.planned_tau_end < r.lower_bound || r.planned_tau_end > r.upper_bound)) {
          ++violations;
        }
      }
      c["runs"] = acc.runs.size();
      c["connected_runs"] = connected;
      c["mean_s_all_m2"] = mean(s_all);
      c["tau_end_connected"] = distribution_json(tau_end);
      c["lower_bound"] = acc.runs.front().lower_bound;
      c["upper_bound"] = acc.runs.front().upper_bound;
      c["bound_violations"] = violations;
      c["scheduled"] = scheduled;
      c["failed"] = failed;
      c["skipped"] = skipped;
      c["failure_rate"] = scheduled > 0 ? static_cast<double>(failed) / static_cast<double>(scheduled) : 0.0;
      c["pairwise_violations"] = pairwise;
    }
    doc["cases"].push_back(std::move(c));
  }
  return doc.dump(2) + "\n";
}

std::string summarize(const std::vector<std::filesystem::path> & csv_paths)
{
  if (csv_paths.empty()) {
    throw SchemaError("summarize: no input files");
  }
  std::vector<SlotRow> slots;
  std::vector<RunRow> runs;
  for (const auto & path : csv_paths) {
    std::ifstream in(path);
    if (!in) {
      throw std::runtime_error("cannot open " + path.string());
    }
    std::string header;
    std::getline(in, header);
    in.clear();
    in.seekg(0);
    if (trim(header) == kRunCsvHeader) {
      auto rows = read_run_csv(in, path.string());
      runs.insert(runs.end(), rows.begin(), rows.end());
    } else if (trim(header) == kSlotCsvHeader) {
      auto rows = read_slot_csv(in, path.string());
      slots.insert(slots.end(), rows.begin(), rows.end());
    } else {
      // Report against the layout it most resembles.
      const bool run_like = header.find("tau_end") != std::string::npos;
      if (run_like) {
        read_run_csv(in, path.string());
      } else {
        read_slot_csv(in, path.string());
      }
    }
  }
  return summarize_rows(slots, runs);
}

ExperimentFiles run_experiment(const ExperimentConfig & cfg)
{
  cfg.validate();
  ExperimentFiles files{cfg.output / "slots.csv", cfg.output / "runs.csv", cfg.output / "summary.json"};
  const bool dir_existed = std::filesystem::exists(cfg.output);
  auto cleanup = [&] {
    std::error_code ec;
    std::filesystem::remove(files.slots_csv, ec);
    std::filesystem::remove(files.runs_csv, ec);
    std::filesystem::remove(files.summary_json, ec);
    if (!dir_existed) {
      std::filesystem::remove(cfg.output, ec);
    }
  };
  try {
    std::filesystem::create_directories(cfg.output);
    const std::vector<RunOutput> runs = run_all(cfg);
    auto write = [](const std::filesystem::path & path, auto && body) {
      std::ofstream out(path, std::ios::binary);
      if (!out) {
        throw std::runtime_error("cannot write " + path.string());
      }
      body(out);
      out.flush();
      if (!out) {
        throw std::runtime_error("error while writing " + path.string());
      }
    };
    write(files.slots_csv, [&](std::ostream & o) { write_slot_csv(o, runs); });
    write(files.runs_csv, [&](std::ostream & o) { write_run_csv(o, runs); });
    const std::string summary = summarize({files.slots_csv, files.runs_csv});
    write(files.summary_json, [&](std::ostream & o) { o << summary; });
  } catch (...) {
    cleanup();
    throw;
  }
  return files;
}

std::string bounds_table(const std::vector<std::size_t> & vehicle_counts)
{
  std::ostringstream out;
  out << "num_vehicles,lower,upper\n";
  for (const std::size_t n : vehicle_counts) {
    const auto [lo, hi] = tau_bounds(n);
    out << n << ',' << lo << ',' << hi << '\n';
  }
  return out.str();
}

}  // namespace mmshare
