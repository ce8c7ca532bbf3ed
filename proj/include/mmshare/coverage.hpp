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

#ifndef MMSHARE__COVERAGE_HPP_
#define MMSHARE__COVERAGE_HPP_

#include "mmshare/geometry.hpp"
#include "mmshare/schedgraph.hpp"

#include <span>
#include <utility>
#include <vector>

namespace mmshare
{

/// Union of the sensor regions of the data's origin vehicles.
Region region_union(const std::vector<DatumId> & datums, const Scenario & s);

/// S(R_i) / S(R_all) for every vehicle. When nothing at all is perceivable
/// every vehicle reports 1. Throws std::invalid_argument on an empty scenario.
std::vector<double> normalized_area(const DatasetState & ds, const Scenario & s);

/// Incremental per-vehicle union regions: each received datum ORs one region in.
class CoverageTracker
{
public:
  CoverageTracker(const Scenario & s, const DatasetState & initial);

  void add(VehicleId i, DatumId k);
  double area(VehicleId i) const { return areas_[i]; }
  double all_area() const { return all_area_; }
  double normalized(VehicleId i) const { return all_area_ > 0.0 ? areas_[i] / all_area_ : 1.0; }
  std::vector<double> normalized_all() const;
  const Region & sensor(VehicleId k) const { return sensors_[k]; }

private:
  std::vector<Region> sensors_;
  std::vector<Region> unions_;
  std::vector<double> areas_;
  double all_area_{0.0};
};

double mean(std::span<const double> values);
/// Linear interpolation between closest ranks; q in [0, 1].
double percentile(std::vector<double> values, double q);
/// Step points (x, F(x)) at each distinct value, ascending.
std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> values);

struct CoverageReport
{
  std::vector<double> area_m2;
  std::vector<double> normalized;
  double all_area_m2{0.0};
  double mean_normalized{0.0};
  double p10{0.0};
  double median{0.0};
  double p90{0.0};
  std::vector<std::pair<double, double>> cdf;
};

CoverageReport coverage_report(const DatasetState & ds, const Scenario & s);

}  // namespace mmshare

#endif  // MMSHARE__COVERAGE_HPP_
