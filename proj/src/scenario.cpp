#include "uavmec/scenario.hpp"

#include <cmath>
#include <string>

namespace uavmec {

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double horizontal_distance(const Vec2& a, const Vec3& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

Interval ScenarioConfig::uav_patrol_zone(int uav_id) const {
  const double half_gap = 0.5 * uav_min_separation;
  if (uav_id == 1) return {0.0, menb_position.x - half_gap};
  return {menb_position.x + half_gap, road_length};
}

namespace {

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw std::invalid_argument(key + ": " + what);
}

void require_range(const Interval& r, const std::string& key) {
  require(r.min <= r.max, key, "min must not exceed max");
  require(r.min > 0.0, key, "must be strictly positive");
}

}  // namespace

void ScenarioConfig::validate() const {
  require(road_length > 0.0, "road_length", "must be positive");
  require(road_width > 0.0, "road_width", "must be positive");
  require(menb_position.z > 0.0, "menb_height", "must be positive");
  require(uav_altitude > 0.0, "uav_altitude", "must be positive");
  require(uav_speed > 0.0, "uav_speed", "must be positive");
  require(uav_min_separation > 0.0, "uav_min_separation", "must be positive");
  require(menb_range > 0.0, "menb_range", "must be positive");
  require(uav_range > 0.0, "uav_range", "must be positive");
  require(uav_range < menb_range, "uav_range", "must be smaller than menb_range");
  require(max_vehicles > 0, "max_vehicles", "must be at least 1");
  require(step_duration > 0.0, "step_duration", "must be positive");
  require_range(vehicle_speed, "vehicle_speed");
  require_range(task_compute, "task_compute");
  require_range(task_data, "task_data");
  require_range(task_deadline, "task_deadline");
  require(uav_patrol_zone(1).width() > 0.0 && uav_patrol_zone(2).width() > 0.0, "uav_min_separation",
          "leaves no room for a patrol zone on one side of the MeNB");
  // Every point of the road must be inside the MeNB cell.
  for (double x : {0.0, road_length}) {
    for (double y : {-0.5 * road_width, 0.5 * road_width}) {
      require(horizontal_distance({x, y}, menb_position) <= menb_range, "menb_range",
              "road segment is not fully covered by the MeNB");
    }
  }
}

const VehicleState& WorldState::vehicle(int id) const {
  for (const auto& v : vehicles) {
    if (v.id == id) return v;
  }
  throw ScenarioError("unknown vehicle id " + std::to_string(id));
}

TaskRequest sample_task(const ScenarioConfig& config, std::mt19937_64& rng) {
  auto draw = [&rng](const Interval& r) {
    return std::uniform_real_distribution<double>(r.min, r.max)(rng);
  };
  TaskRequest task;
  task.compute_demand = draw(config.task_compute);
  task.data_size = draw(config.task_data);
  task.deadline = draw(config.task_deadline);
  return task;
}

namespace {

double lane_y(const ScenarioConfig& config, double speed) {
  return speed >= 0.0 ? 0.25 * config.road_width : -0.25 * config.road_width;
}

double wrap(double x, double length) {
  double w = std::fmod(x, length);
  if (w < 0.0) w += length;
  return w;
}

// Moves a point inside `zone` by `delta`, bouncing off the ends. The walk is
// done on the unfolded circle of length 2w, where the outbound leg maps to
// [0, w] and the return leg to (w, 2w).
void reflect_within(double& x, int& heading, double delta, const Interval& zone) {
  const double width = zone.width();
  const double period = 2.0 * width;
  const double p = x - zone.min;
  double u = (heading > 0 ? p : period - p) + delta;
  u = std::fmod(u, period);
  if (u < 0.0) u += period;
  if (u <= width) {
    x = zone.min + u;
    heading = 1;
  } else {
    x = zone.min + (period - u);
    heading = -1;
  }
}

}  // namespace

WorldState init_world(const ScenarioConfig& config) {
  if (config.max_vehicles <= 0) throw ScenarioError("max_vehicles must be at least 1");
  config.validate();

  WorldState world;
  world.rng.seed(config.rng_seed);
  world.menb_position = config.menb_position;

  std::uniform_real_distribution<double> pos(0.0, config.road_length);
  std::uniform_real_distribution<double> speed(config.vehicle_speed.min, config.vehicle_speed.max);
  std::bernoulli_distribution forward(0.5);
  world.vehicles.reserve(static_cast<std::size_t>(config.max_vehicles));
  for (int i = 0; i < config.max_vehicles; ++i) {
    VehicleState v;
    v.id = i;
    v.speed = speed(world.rng) * (forward(world.rng) ? 1.0 : -1.0);
    v.position = {pos(world.rng), lane_y(config, v.speed)};
    v.task = sample_task(config, world.rng);
    world.vehicles.push_back(v);
  }

  for (int j = 1; j <= 2; ++j) {
    const Interval zone = config.uav_patrol_zone(j);
    UavState& uav = world.uavs[static_cast<std::size_t>(j - 1)];
    uav.id = j;
    uav.position = {0.5 * (zone.min + zone.max), 0.0, config.uav_altitude};
    uav.heading = j == 1 ? 1 : -1;
  }
  return world;
}

WorldState advance(WorldState world, const ScenarioConfig& config) {
  const double dt = config.step_duration;
  for (auto& v : world.vehicles) {
    v.position.x = wrap(v.position.x + v.speed * dt, config.road_length);
    v.task = sample_task(config, world.rng);
  }
  for (auto& uav : world.uavs) {
    reflect_within(uav.position.x, uav.heading, config.uav_speed * dt, config.uav_patrol_zone(uav.id));
    uav.position.z = config.uav_altitude;
  }
  ++world.step;
  return world;
}

CoverageTag coverage_of(const VehicleState& vehicle, const WorldState& world, double uav_range) {
  const double d1 = horizontal_distance(vehicle.position, world.uavs[0].position);
  const double d2 = horizontal_distance(vehicle.position, world.uavs[1].position);
  const bool in1 = d1 <= uav_range;
  const bool in2 = d2 <= uav_range;
  if (in1 && in2) return d2 < d1 ? CoverageTag::uav2 : CoverageTag::uav1;
  if (in1) return CoverageTag::uav1;
  if (in2) return CoverageTag::uav2;
  return CoverageTag::menb_only;
}

CoverageTag coverage_server(const WorldState& world, int vehicle_id, const ScenarioConfig& config) {
  return coverage_of(world.vehicle(vehicle_id), world, config.uav_range);
}

}  // namespace uavmec
