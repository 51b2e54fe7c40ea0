#include <doctest.h>

#include <cmath>

#include "support/worlds.hpp"
#include "uavmec/scenario.hpp"

using namespace uavmec;

namespace {

bool same_world(const WorldState& a, const WorldState& b) {
  if (a.vehicles.size() != b.vehicles.size() || a.step != b.step) return false;
  for (std::size_t i = 0; i < a.vehicles.size(); ++i) {
    const auto& x = a.vehicles[i];
    const auto& y = b.vehicles[i];
    if (x.id != y.id || x.position.x != y.position.x || x.position.y != y.position.y || x.speed != y.speed ||
        x.task.compute_demand != y.task.compute_demand || x.task.data_size != y.task.data_size ||
        x.task.deadline != y.task.deadline) {
      return false;
    }
  }
  for (std::size_t j = 0; j < 2; ++j) {
    const auto& p = a.uavs[j];
    const auto& q = b.uavs[j];
    if (p.position.x != q.position.x || p.position.y != q.position.y || p.position.z != q.position.z ||
        p.heading != q.heading) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("init_world lays out vehicles, UAVs and the MeNB") {
  ScenarioConfig c;
  c.max_vehicles = 4;
  const WorldState w = init_world(c);
  CHECK(w.vehicles.size() == 4);
  CHECK(w.uavs.size() == 2);
  CHECK(w.menb_position.z == 50.0);
  CHECK(w.uavs[0].position.z == 40.0);
  CHECK(w.uavs[1].position.z == 40.0);
  // One UAV on each side of the MeNB.
  CHECK(w.uavs[0].position.x < c.menb_position.x);
  CHECK(w.uavs[1].position.x > c.menb_position.x);
  for (const auto& v : w.vehicles) {
    CHECK(v.position.x >= 0.0);
    CHECK(v.position.x <= c.road_length);
    CHECK(horizontal_distance(v.position, w.menb_position) <= c.menb_range);
  }
}

TEST_CASE("init_world rejects an empty population") {
  ScenarioConfig c;
  c.max_vehicles = 0;
  CHECK_THROWS_AS(init_world(c), ScenarioError);
}

TEST_CASE("config validation names the bad field") {
  ScenarioConfig c;
  c.uav_range = 700.0;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("uav_range"), std::invalid_argument);
  c = ScenarioConfig{};
  c.task_deadline = {0.05, 0.01};
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("task_deadline"), std::invalid_argument);
  c = ScenarioConfig{};
  c.road_length = 5000.0;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("menb_range"), std::invalid_argument);
}

TEST_CASE("same seed gives identical trajectories") {
  ScenarioConfig c;
  c.rng_seed = 42;
  WorldState a = init_world(c);
  WorldState b = init_world(c);
  CHECK(same_world(a, b));
  for (int t = 0; t < 200; ++t) {
    a = advance(std::move(a), c);
    b = advance(std::move(b), c);
  }
  CHECK(same_world(a, b));

  c.rng_seed = 43;
  CHECK_FALSE(same_world(init_world(c), b));
}

TEST_CASE("vehicles move at constant speed and wrap around") {
  ScenarioConfig c;
  c.step_duration = 0.1;
  WorldState w = init_world(c);
  w.vehicles[0].position.x = 0.0;
  w.vehicles[0].speed = 20.0;
  w.vehicles[1].position.x = 999.0;
  w.vehicles[1].speed = 20.0;
  w.vehicles[2].position.x = 1.0;
  w.vehicles[2].speed = -30.0;
  w = advance(std::move(w), c);
  CHECK(w.vehicles[0].position.x == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(w.vehicles[1].position.x == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(w.vehicles[2].position.x == doctest::Approx(998.0).epsilon(1e-12));
}

TEST_CASE("UAV reverses at its patrol boundary") {
  ScenarioConfig c;
  WorldState w = init_world(c);
  const Interval zone = c.uav_patrol_zone(1);
  w.uavs[0].position.x = zone.max;
  w.uavs[0].heading = 1;
  w = advance(std::move(w), c);
  CHECK(w.uavs[0].heading == -1);
  CHECK(w.uavs[0].position.x == doctest::Approx(zone.max - c.uav_speed * c.step_duration));

  const Interval zone2 = c.uav_patrol_zone(2);
  w.uavs[1].position.x = zone2.min + 0.5;
  w.uavs[1].heading = -1;
  w = advance(std::move(w), c);
  CHECK(w.uavs[1].heading == 1);
  CHECK(w.uavs[1].position.x == doctest::Approx(zone2.min + 0.5));
}

TEST_CASE("long runs keep every scenario invariant") {
  ScenarioConfig c;
  c.max_vehicles = 6;
  c.step_duration = 0.7;  // large steps exercise multiple reflections
  c.uav_speed = 150.0;
  WorldState w = init_world(c);
  for (int t = 0; t < 3000; ++t) {
    w = advance(std::move(w), c);
    REQUIRE(w.vehicles.size() == 6);
    for (const auto& v : w.vehicles) {
      REQUIRE(v.position.x >= 0.0);
      REQUIRE(v.position.x < c.road_length);
      REQUIRE(c.task_compute.contains(v.task.compute_demand));
      REQUIRE(c.task_data.contains(v.task.data_size));
      REQUIRE(v.task.deadline >= 0.010);
      REQUIRE(v.task.deadline <= 0.050);
    }
    for (const auto& u : w.uavs) {
      REQUIRE(u.position.z == c.uav_altitude);
      REQUIRE(c.uav_patrol_zone(u.id).contains(u.position.x));
    }
    REQUIRE(std::abs(w.uavs[1].position.x - w.uavs[0].position.x) >= c.uav_min_separation);
  }
}

TEST_CASE("coverage_server") {
  ScenarioConfig c;
  const TaskRequest task{6e7, 800.0, 0.03};

  SUBCASE("directly below UAV 1") {
    const WorldState w = fixtures::make_world(c, {fixtures::vehicle(0, 300.0, 0.0, task)});
    CHECK(coverage_server(w, 0, c) == CoverageTag::uav1);
  }
  SUBCASE("far from both UAVs") {
    const WorldState w = fixtures::make_world(c, {fixtures::vehicle(0, 500.0, 5.0, task)}, 200.0, 800.0);
    CHECK(coverage_server(w, 0, c) == CoverageTag::menb_only);
  }
  SUBCASE("nearer UAV wins, ties go to UAV 1") {
    // UAVs 150 m apart so both ranges overlap around x = 500.
    const WorldState tie = fixtures::make_world(c, {fixtures::vehicle(0, 500.0, 0.0, task)}, 425.0, 575.0);
    CHECK(coverage_server(tie, 0, c) == CoverageTag::uav1);
    WorldState mirrored = tie;
    std::swap(mirrored.uavs[0].position, mirrored.uavs[1].position);
    CHECK(coverage_server(mirrored, 0, c) == CoverageTag::uav1);

    const WorldState near2 = fixtures::make_world(c, {fixtures::vehicle(0, 510.0, 0.0, task)}, 425.0, 575.0);
    CHECK(coverage_server(near2, 0, c) == CoverageTag::uav2);
  }
  SUBCASE("boundary of the UAV cell is inside") {
    const WorldState w = fixtures::make_world(c, {fixtures::vehicle(0, 400.0, 0.0, task)});
    CHECK(coverage_server(w, 0, c) == CoverageTag::uav1);
  }
  SUBCASE("unknown vehicle") {
    const WorldState w = fixtures::make_world(c, {fixtures::vehicle(0, 400.0, 0.0, task)});
    CHECK_THROWS_AS(coverage_server(w, 7, c), ScenarioError);
  }
}
