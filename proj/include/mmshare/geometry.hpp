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

#ifndef MMSHARE__GEOMETRY_HPP_
#define MMSHARE__GEOMETRY_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mmshare
{

using VehicleId = std::uint32_t;

/// Raised for invalid scenario or experiment parameters.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct Point
{
  double x{0.0};
  double y{0.0};

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

/// Axis-aligned rectangle, closed.
struct Box
{
  double min_x{0.0};
  double min_y{0.0};
  double max_x{0.0};
  double max_y{0.0};

  double area() const { return (max_x - min_x) * (max_y - min_y); }
  bool contains(Point p) const
  {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
};

/// Parameter interval [t_in, t_out] of the segment a + t (b - a), t in [0, 1],
/// that lies inside `box`. Empty when t_in > t_out.
std::pair<double, double> clip_segment(Point a, Point b, const Box & box);

/// True iff the segment a-b passes through the interior of `box`.
bool segment_crosses_interior(Point a, Point b, const Box & box);

enum class SensorShape { kArm, kEuclidean };

/// How far along the road a single vehicle's sensor reaches. kSpan covers
/// r_s of road centered on the vehicle (r_s / 2 each way); kRadius covers
/// r_s each way.
enum class SensorExtent { kSpan, kRadius };

struct ScenarioConfig
{
  int lanes_per_road{4};
  double lane_width{3.5};
  double sidewalk_width{4.0};
  double sensor_range_rs{50.0};
  double avg_gap_lavg{40.0};
  int num_vehicles_Nv{20};
  double vehicle_length{4.4};
  double vehicle_width{1.7};
  double road_extent{200.0};
  std::uint64_t rng_seed{1};

  double grid_res{0.25};
  SensorShape sensor_shape{SensorShape::kArm};
  SensorExtent sensor_extent{SensorExtent::kSpan};
  // Vehicles may stand inside the junction box (cross traffic never overlaps).
  bool junction_vehicles{true};

  /// Throws ConfigError on violated invariants.
  void validate() const;
  double corridor_half_width() const
  {
    return 0.5 * lanes_per_road * lane_width + sidewalk_width;
  }
  /// Along-road reach of one sensor from the vehicle position.
  double sensor_reach() const
  {
    return sensor_extent == SensorExtent::kSpan ? 0.5 * sensor_range_rs : sensor_range_rs;
  }
};

enum class Road { kEastWest, kNorthSouth };

struct Vehicle
{
  VehicleId id{0};
  Point position;
  Point heading{1.0, 0.0};  // unit vector along the lane
  double length{4.4};
  double width{1.7};
  Road road{Road::kEastWest};

  /// Corners in counter-clockwise order.
  std::array<Point, 4> corners() const;
  /// True iff the closed footprint meets the segment a-b.
  bool footprint_hits_segment(Point a, Point b) const;
  bool footprint_overlaps(const Vehicle & other) const;
};

/// Cell layout of all regions of one scenario. Cell (ix, iy) covers
/// [origin.x + ix*res, origin.x + (ix+1)*res) x [...], row-major.
struct Grid
{
  Point origin;
  double res{0.25};
  std::size_t nx{0};
  std::size_t ny{0};

  std::size_t cells() const { return nx * ny; }
  Point cell_center(std::size_t ix, std::size_t iy) const
  {
    return {origin.x + (static_cast<double>(ix) + 0.5) * res,
            origin.y + (static_cast<double>(iy) + 0.5) * res};
  }
  friend bool operator==(const Grid &, const Grid &) = default;
};

/// Occupancy raster over a Grid.
class Region
{
public:
  Region() = default;
  explicit Region(const Grid & grid);

  const Grid & grid() const { return grid_; }
  bool test(std::size_t ix, std::size_t iy) const;
  void set(std::size_t ix, std::size_t iy);
  std::size_t count() const;
  double area() const { return static_cast<double>(count()) * grid_.res * grid_.res; }
  bool empty() const { return count() == 0; }

  Region & operator|=(const Region & other);
  Region & operator&=(const Region & other);
  /// True iff every set cell of this region is set in `other`.
  bool subset_of(const Region & other) const;

private:
  void check_compatible(const Region & other) const;

  Grid grid_;
  std::vector<std::uint64_t> words_;
};

/// Intersection of two straight roads along the x and y axes, centered at
/// the origin, with one building in each quadrant.
struct Scenario
{
  ScenarioConfig config;
  double corridor_half_width{0.0};
  std::array<Box, 4> buildings{};
  std::vector<Vehicle> vehicles;
  Point center{0.0, 0.0};
  Grid grid;

  std::size_t size() const { return vehicles.size(); }
  Box junction() const
  {
    return {-corridor_half_width, -corridor_half_width, corridor_half_width,
            corridor_half_width};
  }
  bool in_junction(Point p) const;
  bool on_road(Point p) const;
};

/// Wraps already-placed vehicles into a scenario (geometry, buildings, grid).
/// Vehicle ids are reassigned to their index.
Scenario make_scenario(const ScenarioConfig & config, std::vector<Vehicle> vehicles);

/// Places vehicles lane by lane with exponential gaps and keeps the
/// num_vehicles_Nv closest to the center. Deterministic in rng_seed.
Scenario build_scenario(const ScenarioConfig & config);

struct BlockerCount
{
  int blocker_count{0};
  bool building_blocked{false};
  friend bool operator==(const BlockerCount &, const BlockerCount &) = default;
};

BlockerCount count_blockers(const Scenario & s, VehicleId i, VehicleId j);

/// Area of road the vehicle's sensors cover, rasterized on s.grid.
Region sensor_region(const Scenario & s, const Vehicle & v);

/// Self-describing key = value document; stable, byte-for-byte reproducible.
std::string serialize_scenario(const Scenario & s);

}  // namespace mmshare

#endif  // MMSHARE__GEOMETRY_HPP_
