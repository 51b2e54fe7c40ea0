#include <doctest.h>

#include <cmath>
#include <random>

#include "support/reference_model.hpp"
#include "support/worlds.hpp"
#include "uavmec/baselines.hpp"

using namespace uavmec;

namespace {

const TaskRequest kTask{60e6, 800.0, 0.03};

}  // namespace

TEST_CASE("random policy on a lone vehicle grants everything") {
  ScenarioConfig c;
  std::mt19937_64 rng(1);
  const WorldState w = fixtures::make_world(c, {fixtures::vehicle(0, 300.0, 5.0, kTask)});
  int uav = 0;
  for (int k = 0; k < 200; ++k) {
    const AllocationDecision d = random_policy(w, c.uav_range, rng);
    const Allocation& a = d.per_vehicle[0];
    CHECK(a.spectrum == 1.0);
    CHECK(a.compute == 1.0);
    CHECK(a.cache == 1.0);
    if (a.server == Server::uav1) ++uav;
    else CHECK(a.server == Server::menb);
  }
  // Fair coin: 200 flips, 5 sigma band.
  CHECK(uav > 65);
  CHECK(uav < 135);
}

TEST_CASE("random policy keeps uncovered vehicles on the MeNB") {
  ScenarioConfig c;
  std::mt19937_64 rng(2);
  const WorldState w = fixtures::make_world(
      c, {fixtures::vehicle(0, 480.0, 5.0, kTask), fixtures::vehicle(1, 520.0, 5.0, kTask)});
  for (int k = 0; k < 100; ++k) {
    const AllocationDecision d = random_policy(w, c.uav_range, rng);
    for (const auto& a : d.per_vehicle) REQUIRE(a.server == Server::menb);
    REQUIRE_NOTHROW(check_decision(w, d, c.uav_range));
  }
}

TEST_CASE("random splits are uniform on the simplex") {
  // Three MeNB-only vehicles: each share has mean 1/3 and variance 1/18.
  ScenarioConfig c;
  std::mt19937_64 rng(3);
  const WorldState w = fixtures::make_world(
      c, {fixtures::vehicle(0, 470.0, 5.0, kTask), fixtures::vehicle(1, 500.0, 5.0, kTask),
          fixtures::vehicle(2, 530.0, 5.0, kTask)});
  const int draws = 100000;
  double sum = 0.0;
  double below_third = 0.0;
  for (int k = 0; k < draws; ++k) {
    const AllocationDecision d = random_policy(w, c.uav_range, rng);
    sum += d.per_vehicle[1].compute;
    if (d.per_vehicle[1].compute < 1.0 / 3.0) below_third += 1.0;
  }
  const double sigma = std::sqrt(1.0 / 18.0 / draws);
  CHECK(std::abs(sum / draws - 1.0 / 3.0) < 3.0 * sigma);
  // P(X < 1/3) = 1 - (2/3)^2 for a Beta(1, 2) marginal.
  CHECK(below_third / draws == doctest::Approx(5.0 / 9.0).epsilon(0.01));
}

TEST_CASE("random decisions are always feasible") {
  ScenarioConfig c;
  std::mt19937_64 rng(4);
  for (int k = 0; k < 2000; ++k) {
    const WorldState w = fixtures::random_world(c, 1 + k % 6, rng);
    REQUIRE_NOTHROW(check_decision(w, random_policy(w, c.uav_range, rng), c.uav_range));
  }
}

TEST_CASE("grid enumeration counts") {
  ScenarioConfig c;
  // One MeNB-only vehicle: one association, one composition per resource.
  WorldState w = fixtures::make_world(c, {fixtures::vehicle(0, 480.0, 5.0, kTask)});
  std::size_t n = 0;
  for_each_grid_decision(w, c.uav_range, 3, [&](const AllocationDecision&) { ++n; });
  CHECK(n == 1);

  // Two MeNB-only vehicles at resolution 2: 3 compositions per resource.
  w = fixtures::make_world(c, {fixtures::vehicle(0, 480.0, 5.0, kTask), fixtures::vehicle(1, 520.0, 5.0, kTask)});
  n = 0;
  for_each_grid_decision(w, c.uav_range, 2, [&](const AllocationDecision& d) {
    ++n;
    REQUIRE_NOTHROW(check_decision(w, d, c.uav_range));
  });
  CHECK(n == 27);

  // One covered and one uncovered vehicle at resolution 2:
  // both on MeNB (27) + split across MeNB and UAV 1 (1).
  w = fixtures::make_world(c, {fixtures::vehicle(0, 300.0, 5.0, kTask), fixtures::vehicle(1, 520.0, 5.0, kTask)});
  n = 0;
  for_each_grid_decision(w, c.uav_range, 2, [&](const AllocationDecision&) { ++n; });
  CHECK(n == 28);
}

TEST_CASE("oracle limits") {
  ScenarioConfig c;
  std::vector<VehicleState> vs;
  for (int i = 0; i < 5; ++i) vs.push_back(fixtures::vehicle(i, 100.0 + 150.0 * i, 5.0, kTask));
  const WorldState big = fixtures::make_world(c, vs);
  CHECK_THROWS_AS(brute_force(big, ServerCapacities{}, RadioParams{}, c.uav_range, 2), OracleError);
  const WorldState small = fixtures::make_world(c, {fixtures::vehicle(0, 300.0, 5.0, kTask)});
  CHECK_THROWS_AS(brute_force(small, ServerCapacities{}, RadioParams{}, c.uav_range, 6), OracleError);
  CHECK_THROWS_AS(brute_force(small, ServerCapacities{}, RadioParams{}, c.uav_range, 0), OracleError);
}

TEST_CASE("oracle on tiny instances") {
  ScenarioConfig c;
  SUBCASE("abundant resources serve the lone vehicle") {
    const WorldState w = fixtures::make_world(c, {fixtures::vehicle(0, 300.0, 5.0, kTask)});
    const OracleResult r = brute_force(w, ServerCapacities{}, RadioParams{}, c.uav_range, 3);
    CHECK(r.objective == 1);
    CHECK(r.evaluated == 2);
  }
  SUBCASE("cache too small for any task") {
    ServerCapacities caps;
    caps.menb_cache = 1.0;
    caps.uav_cache = 1.0;
    const WorldState w = fixtures::make_world(c, {fixtures::vehicle(0, 300.0, 5.0, kTask)});
    CHECK(brute_force(w, caps, RadioParams{}, c.uav_range, 3).objective == 0);
  }
  SUBCASE("empty world") {
    const WorldState w = fixtures::make_world(c, {});
    const OracleResult r = brute_force(w, ServerCapacities{}, RadioParams{}, c.uav_range, 3);
    CHECK(r.objective == 0);
    CHECK(r.evaluated == 1);
  }
}

TEST_CASE("oracle dominates random decisions and the reference agrees") {
  ScenarioConfig c;
  const ServerCapacities caps = ServerCapacities{}.scaled(0.1);
  const RadioParams radio;
  std::mt19937_64 rng(6);
  for (int inst = 0; inst < 3; ++inst) {
    const WorldState w = fixtures::random_world(c, 2, rng);
    const OracleResult best = brute_force(w, caps, radio, c.uav_range, 4);
    const auto ref = reference::score(w, best.decision, caps, radio);
    CHECK(ref.objective == best.objective);
    int max_random = 0;
    for (int k = 0; k < 10000; ++k) {
      const AllocationDecision d = random_policy(w, c.uav_range, rng);
      max_random = std::max(max_random, evaluate(w, d, caps, radio, c.uav_range).objective);
    }
    CHECK(best.objective >= max_random);
  }
}

TEST_CASE("oracle is deterministic") {
  ScenarioConfig c;
  std::mt19937_64 rng(7);
  const WorldState w = fixtures::random_world(c, 3, rng);
  const ServerCapacities caps = ServerCapacities{}.scaled(0.1);
  const OracleResult a = brute_force(w, caps, RadioParams{}, c.uav_range, 3);
  const OracleResult b = brute_force(w, caps, RadioParams{}, c.uav_range, 3);
  CHECK(a.objective == b.objective);
  CHECK(a.total_delay == b.total_delay);
  CHECK(a.evaluated == b.evaluated);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a.decision.per_vehicle[i].server == b.decision.per_vehicle[i].server);
    CHECK(a.decision.per_vehicle[i].spectrum == b.decision.per_vehicle[i].spectrum);
  }
}
