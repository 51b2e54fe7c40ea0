#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace uavmec {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double distance(const Vec3& a, const Vec3& b);
double horizontal_distance(const Vec2& a, const Vec3& b);

struct Interval {
  double min = 0.0;
  double max = 0.0;

  double width() const { return max - min; }
  bool contains(double v) const { return v >= min && v <= max; }
};

/// Physical layout and task statistics of the simulated road segment.
///
/// The road runs along the x axis over [0, road_length]; its y extent is
/// [-road_width/2, road_width/2]. Vehicles driving in +x use the lane at
/// y = +road_width/4, vehicles driving in -x the lane at y = -road_width/4.
/// UAV 1 patrols [0, menb.x - uav_min_separation/2] and UAV 2 patrols
/// [menb.x + uav_min_separation/2, road_length], both above y = 0.
struct ScenarioConfig {
  double road_length = 1000.0;
  double road_width = 20.0;
  Vec3 menb_position{500.0, -20.0, 50.0};
  double uav_altitude = 40.0;
  double uav_speed = 10.0;
  double uav_min_separation = 200.0;
  double menb_range = 600.0;
  double uav_range = 100.0;
  int max_vehicles = 4;
  Interval vehicle_speed{10.0, 30.0};
  Interval task_compute{50e6, 100e6};  // cycles
  Interval task_data{500.0, 1000.0};   // bits
  Interval task_deadline{0.010, 0.050};  // seconds
  double step_duration = 0.1;
  std::uint64_t rng_seed = 1;

  Interval uav_patrol_zone(int uav_id) const;

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;
};

struct TaskRequest {
  double compute_demand = 0.0;  // cycles
  double data_size = 0.0;       // bits
  double deadline = 0.0;        // seconds
};

struct VehicleState {
  int id = 0;
  Vec2 position;
  double speed = 0.0;  // signed by direction of travel along x
  TaskRequest task;
};

struct UavState {
  int id = 1;
  Vec3 position;
  int heading = 1;
};

/// Complete simulator state. Holds its own random engine so that the world
/// is a self-contained value: copying it forks an identical future.
struct WorldState {
  std::vector<VehicleState> vehicles;
  std::array<UavState, 2> uavs;
  Vec3 menb_position;
  std::uint64_t step = 0;
  std::mt19937_64 rng;

  const VehicleState& vehicle(int id) const;
};

enum class CoverageTag { menb_only, uav1, uav2 };

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

TaskRequest sample_task(const ScenarioConfig& config, std::mt19937_64& rng);

WorldState init_world(const ScenarioConfig& config);
WorldState advance(WorldState world, const ScenarioConfig& config);

CoverageTag coverage_server(const WorldState& world, int vehicle_id, const ScenarioConfig& config);
CoverageTag coverage_of(const VehicleState& vehicle, const WorldState& world, double uav_range);

}  // namespace uavmec
