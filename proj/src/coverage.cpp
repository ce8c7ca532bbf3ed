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

#include "mmshare/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mmshare
{

Region region_union(const std::vector<DatumId> & datums, const Scenario & s)
{
  Region out(s.grid);
  for (const DatumId k : datums) {
    out |= sensor_region(s, s.vehicles.at(k));
  }
  return out;
}

std::vector<double> normalized_area(const DatasetState & ds, const Scenario & s)
{
  if (s.size() == 0) {
    throw std::invalid_argument("normalized_area: scenario has no vehicles");
  }
  if (ds.num_vehicles() != s.size()) {
    throw std::invalid_argument("normalized_area: dataset state does not match scenario");
  }
  std::vector<DatumId> everything(s.size());
  std::iota(everything.begin(), everything.end(), 0);
  const double all = region_union(everything, s).area();
  std::vector<double> out;
  out.reserve(s.size());
  for (VehicleId i = 0; i < s.size(); ++i) {
    out.push_back(all > 0.0 ? region_union(ds.data(i), s).area() / all : 1.0);
  }
  return out;
}

CoverageTracker::CoverageTracker(const Scenario & s, const DatasetState & initial)
{
  if (initial.num_vehicles() != s.size()) {
    throw std::invalid_argument("CoverageTracker: dataset state does not match scenario");
  }
  sensors_.reserve(s.size());
  Region all(s.grid);
  for (const Vehicle & v : s.vehicles) {
    sensors_.push_back(sensor_region(s, v));
    all |= sensors_.back();
  }
  all_area_ = all.area();
  unions_.reserve(s.size());
  areas_.reserve(s.size());
  for (VehicleId i = 0; i < s.size(); ++i) {
    Region u(s.grid);
    for (const DatumId k : initial.data(i)) {
      u |= sensors_[k];
    }
    areas_.push_back(u.area());
    unions_.push_back(std::move(u));
  }
}

void CoverageTracker::add(VehicleId i, DatumId k)
{
  unions_.at(i) |= sensors_.at(k);
  areas_[i] = unions_[i].area();
}

std::vector<double> CoverageTracker::normalized_all() const
{
  std::vector<double> out(areas_.size());
  for (std::size_t i = 0; i < areas_.size(); ++i) {
    out[i] = normalized(static_cast<VehicleId>(i));
  }
  return out;
}

double mean(std::span<const double> values)
{
  if (values.empty()) {
    return 0.0;
  }
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double percentile(std::vector<double> values, double q)
{
  if (values.empty()) {
    throw std::invalid_argument("percentile of an empty sample");
  }
  std::sort(values.begin(), values.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> values)
{
  std::vector<std::pair<double, double>> out;
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k + 1 < values.size() && values[k + 1] == values[k]) {
      continue;
    }
    out.emplace_back(values[k], static_cast<double>(k + 1) / n);
  }
  return out;
}

CoverageReport coverage_report(const DatasetState & ds, const Scenario & s)
{
  CoverageTracker tracker(s, ds);
  CoverageReport r;
  r.all_area_m2 = tracker.all_area();
  for (VehicleId i = 0; i < s.size(); ++i) {
    r.area_m2.push_back(tracker.area(i));
  }
  r.normalized = tracker.normalized_all();
  r.mean_normalized = mean(r.normalized);
  if (!r.normalized.empty()) {
    r.p10 = percentile(r.normalized, 0.1);
    r.median = percentile(r.normalized, 0.5);
    r.p90 = percentile(r.normalized, 0.9);
  }
  r.cdf = empirical_cdf(r.normalized);
  return r;
}

}  // namespace mmshare
