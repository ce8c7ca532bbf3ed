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

#include "mmshare/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace mmshare
{

std::pair<double, double> clip_segment(Point a, Point b, const Box & box)
{
  const Point d = b - a;
  double t0 = 0.0;
  double t1 = 1.0;
  const std::array<double, 4> p{-d.x, d.x, -d.y, d.y};
  const std::array<double, 4> q{a.x - box.min_x, box.max_x - a.x, a.y - box.min_y, box.max_y - a.y};
  for (std::size_t k = 0; k < 4; ++k) {
    if (p[k] == 0.0) {
      if (q[k] < 0.0) {
        return {1.0, 0.0};
      }
      continue;
    }
    const double r = q[k] / p[k];
    if (p[k] < 0.0) {
      t0 = std::max(t0, r);
    } else {
      t1 = std::min(t1, r);
    }
  }
  return {t0, t1};
}

bool segment_crosses_interior(Point a, Point b, const Box & box)
{
  const auto [t0, t1] = clip_segment(a, b, box);
  if (!(t0 < t1)) {
    return false;
  }
  // A chord running along an edge clips to positive length without entering.
  const Point mid = a + (0.5 * (t0 + t1)) * (b - a);
  return mid.x > box.min_x && mid.x < box.max_x && mid.y > box.min_y && mid.y < box.max_y;
}

void ScenarioConfig::validate() const
{
  auto require = [](bool ok, const char * what) {
    if (!ok) {
      throw ConfigError(std::string("invalid scenario config: ") + what);
    }
  };
  require(lanes_per_road > 0, "lanes_per_road must be > 0");
  require(lanes_per_road % 2 == 0, "lanes_per_road must be even (two directions)");
  require(lane_width > 0.0, "lane_width must be > 0");
  require(sidewalk_width > 0.0, "sidewalk_width must be > 0");
  require(sensor_range_rs >= 0.0, "sensor_range_rs must be >= 0");
  require(avg_gap_lavg > 0.0, "avg_gap_lavg must be > 0");
  require(num_vehicles_Nv >= 0, "num_vehicles_Nv must be >= 0");
  require(vehicle_length > 0.0, "vehicle_length must be > 0");
  require(vehicle_width > 0.0, "vehicle_width must be > 0");
  require(vehicle_width < lane_width, "vehicle_width must fit in a lane");
  require(road_extent > corridor_half_width(), "road_extent must exceed the junction");
  require(grid_res > 0.0, "grid_res must be > 0");
}

std::array<Point, 4> Vehicle::corners() const
{
  const Point normal{-heading.y, heading.x};
  const Point half_l = (0.5 * length) * heading;
  const Point half_w = (0.5 * width) * normal;
  return {position - half_l - half_w, position + half_l - half_w, position + half_l + half_w,
          position - half_l + half_w};
}

bool Vehicle::footprint_hits_segment(Point a, Point b) const
{
  const Point normal{-heading.y, heading.x};
  auto to_local = [&](Point p) {
    const Point r = p - position;
    return Point{dot(r, heading), dot(r, normal)};
  };
  const Box local{-0.5 * length, -0.5 * width, 0.5 * length, 0.5 * width};
  const auto [t0, t1] = clip_segment(to_local(a), to_local(b), local);
  return t0 <= t1;
}

bool Vehicle::footprint_overlaps(const Vehicle & other) const
{
  const auto ca = corners();
  const auto cb = other.corners();
  const std::array<Point, 4> axes{heading, Point{-heading.y, heading.x}, other.heading,
                                  Point{-other.heading.y, other.heading.x}};
  for (const Point & axis : axes) {
    double a_lo = std::numeric_limits<double>::infinity();
    double a_hi = -a_lo;
    double b_lo = a_lo;
    double b_hi = -a_lo;
    for (const Point & c : ca) {
      a_lo = std::min(a_lo, dot(c, axis));
      a_hi = std::max(a_hi, dot(c, axis));
    }
    for (const Point & c : cb) {
      b_lo = std::min(b_lo, dot(c, axis));
      b_hi = std::max(b_hi, dot(c, axis));
    }
    if (a_hi <= b_lo || b_hi <= a_lo) {
      return false;
    }
  }
  return true;
}

Region::Region(const Grid & grid) : grid_(grid), words_((grid.cells() + 63) / 64, 0) {}

bool Region::test(std::size_t ix, std::size_t iy) const
{
  const std::size_t k = iy * grid_.nx + ix;
  return (words_[k / 64] >> (k % 64)) & 1U;
}

void Region::set(std::size_t ix, std::size_t iy)
{
  const std::size_t k = iy * grid_.nx + ix;
  words_[k / 64] |= std::uint64_t{1} << (k % 64);
}

std::size_t Region::count() const
{
  std::size_t n = 0;
  for (const auto w : words_) {
    n += static_cast<std::size_t>(std::popcount(w));
  }
  return n;
}

void Region::check_compatible(const Region & other) const
{
  if (!(grid_ == other.grid_)) {
    throw std::invalid_argument("regions live on different grids");
  }
}

Region & Region::operator|=(const Region & other)
{
  check_compatible(other);
  for (std::size_t k = 0; k < words_.size(); ++k) {
    words_[k] |= other.words_[k];
  }
  return *this;
}

Region & Region::operator&=(const Region & other)
{
  check_compatible(other);
  for (std::size_t k = 0; k < words_.size(); ++k) {
    words_[k] &= other.words_[k];
  }
  return *this;
}

bool Region::subset_of(const Region & other) const
{
  check_compatible(other);
  for (std::size_t k = 0; k < words_.size(); ++k) {
    if ((words_[k] & ~other.words_[k]) != 0) {
      return false;
    }
  }
  return true;
}

bool Scenario::in_junction(Point p) const
{
  return std::abs(p.x) <= corridor_half_width && std::abs(p.y) <= corridor_half_width;
}

bool Scenario::on_road(Point p) const
{
  const double e = config.road_extent;
  const bool ew = std::abs(p.y) < corridor_half_width && std::abs(p.x) < e;
  const bool ns = std::abs(p.x) < corridor_half_width && std::abs(p.y) < e;
  return ew || ns;
}

namespace
{

// Arm rectangles (open) covered by a vehicle's sensor, before Euclidean clipping.
std::vector<Box> sensor_arms(const Scenario & s, Point p)
{
  const double h = s.config.sensor_reach();
  const double hw = s.corridor_half_width;
  const double e = s.config.road_extent;
  std::vector<Box> arms;
  if (h <= 0.0) {
    return arms;
  }
  const bool in_ew = std::abs(p.y) <= hw;
  const bool in_ns = std::abs(p.x) <= hw;
  if (in_ew) {
    arms.push_back({std::max(p.x - h, -e), -hw, std::min(p.x + h, e), hw});
  }
  if (in_ns) {
    arms.push_back({-hw, std::max(p.y - h, -e), hw, std::min(p.y + h, e)});
  }
  return arms;
}

double snap_down(double v, double res) { return std::floor(v / res) * res; }
double snap_up(double v, double res) { return std::ceil(v / res) * res; }

}  // namespace

Scenario make_scenario(const ScenarioConfig & config, std::vector<Vehicle> vehicles)
{
  config.validate();
  Scenario s;
  s.config = config;
  s.corridor_half_width = config.corridor_half_width();
  const double hw = s.corridor_half_width;
  const double far = 10.0 * (config.road_extent + config.sensor_range_rs + hw);
  s.buildings = {Box{hw, hw, far, far}, Box{-far, hw, -hw, far}, Box{-far, -far, -hw, -hw},
                 Box{hw, -far, far, -hw}};
  for (std::size_t k = 0; k < vehicles.size(); ++k) {
    vehicles[k].id = static_cast<VehicleId>(k);
  }
  s.vehicles = std::move(vehicles);

  Box bounds{-hw, -hw, hw, hw};
  for (const Vehicle & v : s.vehicles) {
    for (const Box & arm : sensor_arms(s, v.position)) {
      bounds.min_x = std::min(bounds.min_x, arm.min_x);
      bounds.min_y = std::min(bounds.min_y, arm.min_y);
      bounds.max_x = std::max(bounds.max_x, arm.max_x);
      bounds.max_y = std::max(bounds.max_y, arm.max_y);
    }
  }
  const double res = config.grid_res;
  s.grid.res = res;
  s.grid.origin = {snap_down(bounds.min_x, res), snap_down(bounds.min_y, res)};
  s.grid.nx = static_cast<std::size_t>(std::llround((snap_up(bounds.max_x, res) - s.grid.origin.x) / res));
  s.grid.ny = static_cast<std::size_t>(std::llround((snap_up(bounds.max_y, res) - s.grid.origin.y) / res));
  return s;
}

Scenario build_scenario(const ScenarioConfig & config)
{
  config.validate();
  std::mt19937_64 rng(config.rng_seed);
  // Own uniform/exponential transforms keep placement identical across standard libraries.
  auto exponential = [&rng](double mean) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return -mean * std::log1p(-u);
  };

  const double hw = config.corridor_half_width();
  const double e = config.road_extent;
  const Box junction{-hw, -hw, hw, hw};
  const double roadway_half = 0.5 * config.lanes_per_road * config.lane_width;

  std::vector<Vehicle> placed;
  for (const Road road : {Road::kEastWest, Road::kNorthSouth}) {
    for (int lane = 0; lane < config.lanes_per_road; ++lane) {
      const double offset = -roadway_half + (lane + 0.5) * config.lane_width;
      double rear = -e;
      while (true) {
        rear += exponential(config.avg_gap_lavg);
        const double front = rear + config.vehicle_length;
        if (front > e) {
          break;
        }
        const double along = 0.5 * (rear + front);
        Vehicle v;
        v.length = config.vehicle_length;
        v.width = config.vehicle_width;
        v.road = road;
        if (road == Road::kEastWest) {
          v.position = {along, offset};
          v.heading = {offset < 0.0 ? 1.0 : -1.0, 0.0};
        } else {
          v.position = {offset, along};
          v.heading = {0.0, offset > 0.0 ? 1.0 : -1.0};
        }
        rear = front;
        if (!config.junction_vehicles) {
          Box fp{e, e, -e, -e};
          for (const Point & c : v.corners()) {
            fp = {std::min(fp.min_x, c.x), std::min(fp.min_y, c.y), std::max(fp.max_x, c.x),
                  std::max(fp.max_y, c.y)};
          }
          if (fp.max_x > junction.min_x && fp.min_x < junction.max_x && fp.max_y > junction.min_y &&
              fp.min_y < junction.max_y) {
            continue;
          }
        }
        const bool collides = std::any_of(placed.begin(), placed.end(), [&](const Vehicle & o) {
          return o.road != v.road && o.footprint_overlaps(v);
        });
        if (!collides) {
          placed.push_back(v);
        }
      }
    }
  }

  const auto wanted = static_cast<std::size_t>(config.num_vehicles_Nv);
  if (placed.size() < wanted) {
    throw ConfigError(
      "road corridor too short: placed " + std::to_string(placed.size()) + " of " +
      std::to_string(wanted) + " vehicles (deficit " + std::to_string(wanted - placed.size()) +
      "); increase road_extent");
  }
  std::vector<std::size_t> order(placed.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return norm(placed[a].position) < norm(placed[b].position);
  });
  std::vector<Vehicle> kept;
  kept.reserve(wanted);
  for (std::size_t k = 0; k < wanted; ++k) {
    kept.push_back(placed[order[k]]);
  }
  return make_scenario(config, std::move(kept));
}

BlockerCount count_blockers(const Scenario & s, VehicleId i, VehicleId j)
{
  const Point a = s.vehicles.at(i).position;
  const Point b = s.vehicles.at(j).position;
  BlockerCount out;
  for (const Vehicle & v : s.vehicles) {
    if (v.id == i || v.id == j) {
      continue;
    }
    if (v.footprint_hits_segment(a, b)) {
      ++out.blocker_count;
    }
  }
  out.building_blocked = std::any_of(s.buildings.begin(), s.buildings.end(), [&](const Box & box) {
    return segment_crosses_interior(a, b, box);
  });
  return out;
}

Region sensor_region(const Scenario & s, const Vehicle & v)
{
  Region region(s.grid);
  const Grid & g = s.grid;
  const double h = s.config.sensor_reach();
  const bool euclidean = s.config.sensor_shape == SensorShape::kEuclidean;
  for (const Box & arm : sensor_arms(s, v.position)) {
    const auto lo_x = static_cast<std::ptrdiff_t>(std::floor((arm.min_x - g.origin.x) / g.res)) - 1;
    const auto hi_x = static_cast<std::ptrdiff_t>(std::ceil((arm.max_x - g.origin.x) / g.res)) + 1;
    const auto lo_y = static_cast<std::ptrdiff_t>(std::floor((arm.min_y - g.origin.y) / g.res)) - 1;
    const auto hi_y = static_cast<std::ptrdiff_t>(std::ceil((arm.max_y - g.origin.y) / g.res)) + 1;
    const auto nx = static_cast<std::ptrdiff_t>(g.nx);
    const auto ny = static_cast<std::ptrdiff_t>(g.ny);
    for (std::ptrdiff_t iy = std::max<std::ptrdiff_t>(lo_y, 0); iy < std::min(hi_y, ny); ++iy) {
      for (std::ptrdiff_t ix = std::max<std::ptrdiff_t>(lo_x, 0); ix < std::min(hi_x, nx); ++ix) {
        const Point c = g.cell_center(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy));
        if (c.x <= arm.min_x || c.x >= arm.max_x || c.y <= arm.min_y || c.y >= arm.max_y) {
          continue;
        }
        if (euclidean && !(distance(c, v.position) < h)) {
          continue;
        }
        region.set(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy));
      }
    }
  }
  return region;
}

namespace
{

std::string num(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string serialize_scenario(const Scenario & s)
{
  const ScenarioConfig & c = s.config;
  std::ostringstream out;
  out << "format = mmshare-scenario/1\n";
  out << "config.lanes_per_road = " << c.lanes_per_road << '\n';
  out << "config.lane_width = " << num(c.lane_width) << '\n';
  out << "config.sidewalk_width = " << num(c.sidewalk_width) << '\n';
  out << "config.sensor_range_rs = " << num(c.sensor_range_rs) << '\n';
  out << "config.avg_gap_lavg = " << num(c.avg_gap_lavg) << '\n';
  out << "config.num_vehicles_Nv = " << c.num_vehicles_Nv << '\n';
  out << "config.vehicle_length = " << num(c.vehicle_length) << '\n';
  out << "config.vehicle_width = " << num(c.vehicle_width) << '\n';
  out << "config.road_extent = " << num(c.road_extent) << '\n';
  out << "config.rng_seed = " << c.rng_seed << '\n';
  out << "config.grid_res = " << num(c.grid_res) << '\n';
  out << "config.sensor_shape = " << (c.sensor_shape == SensorShape::kArm ? "arm" : "euclidean") << '\n';
  out << "config.sensor_extent = " << (c.sensor_extent == SensorExtent::kSpan ? "span" : "radius") << '\n';
  out << "config.junction_vehicles = " << (c.junction_vehicles ? "true" : "false") << '\n';
  out << "corridor_half_width = " << num(s.corridor_half_width) << '\n';
  out << "center = " << num(s.center.x) << ' ' << num(s.center.y) << '\n';
  for (std::size_t k = 0; k < s.buildings.size(); ++k) {
    const Box & b = s.buildings[k];
    out << "building." << k << " = " << num(b.min_x) << ' ' << num(b.min_y) << ' ' << num(b.max_x)
        << ' ' << num(b.max_y) << '\n';
  }
  out << "grid = " << num(s.grid.origin.x) << ' ' << num(s.grid.origin.y) << ' ' << num(s.grid.res)
      << ' ' << s.grid.nx << ' ' << s.grid.ny << '\n';
  out << "vehicle_count = " << s.vehicles.size() << '\n';
  for (const Vehicle & v : s.vehicles) {
    out << "vehicle." << v.id << " = " << num(v.position.x) << ' ' << num(v.position.y) << ' '
        << num(v.heading.x) << ' ' << num(v.heading.y) << ' ' << num(v.length) << ' '
        << num(v.width) << ' ' << (v.road == Road::kEastWest ? "ew" : "ns") << '\n';
  }
  return out.str();
}

}  // namespace mmshare
