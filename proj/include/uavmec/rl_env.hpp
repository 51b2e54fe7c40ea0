#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "uavmec/network_model.hpp"
#include "uavmec/scenario.hpp"

namespace uavmec {

struct EnvConfig {
  double reward_clip = 0.1;
  int episode_steps = 100;
  /// Multiplier applied to allocation logits before normalisation. Actor
  /// outputs live in [-1, 1], so this bounds the largest-to-smallest share
  /// ratio on one server at exp(2 * logit_scale).
  double logit_scale = 4.0;

  void validate() const;
};

// State layout: [compute x N, data x N, deadline x N, x x N, y x N,
//                uav1.x, uav2.x, uav1.y, uav2.y, uav1.z, uav2.z]
// where N = max_vehicles and absent vehicles are zero-padded.
std::size_t state_dim(int max_vehicles);
// Action layout: [association x N, spectrum x N, compute x N, cache x N].
std::size_t action_dim(int max_vehicles);

enum class StateScaling { raw, unit };

/// Flattens the world into the fixed-size observation. With
/// StateScaling::unit every feature is min-max scaled by its configured range.
std::vector<double> encode_state(const WorldState& world, const ScenarioConfig& config,
                                 StateScaling scaling = StateScaling::unit);

struct DecodedState {
  std::vector<TaskRequest> tasks;
  std::vector<Vec2> positions;
  std::array<Vec3, 2> uavs;
};

/// Inverse of encode_state for the first `vehicle_count` slots.
DecodedState decode_state(std::span<const double> state, int vehicle_count, const ScenarioConfig& config,
                          StateScaling scaling = StateScaling::unit);

/// Projects a raw actor output onto a feasible decision. Vehicles outside UAV
/// coverage are forced onto the MeNB; others go to the MeNB iff their
/// association logit is >= 0. On each server the served vehicles' logits go
/// through a softmax, so each resource splits exactly over its vehicles.
AllocationDecision decode_action(std::span<const double> raw, const WorldState& world, const ScenarioConfig& config,
                                 double logit_scale);

struct RewardBreakdown {
  std::vector<double> delay_reward;
  std::vector<double> cache_reward;
  double step_reward = 0.0;
};

RewardBreakdown reward(const WorldState& world, const AllocationDecision& decision, const EvaluationReport& report,
                       const ServerCapacities& caps, double clip);

struct StepResult {
  std::vector<double> next_state;
  double reward = 0.0;
  RewardBreakdown breakdown;
  EvaluationReport report;
  AllocationDecision decision;
  bool episode_end = false;
};

/// Single-agent environment around the simulator. Episodes have a fixed
/// number of steps and never reset the world: the next episode continues
/// from where the previous one stopped.
class Environment {
 public:
  Environment(ScenarioConfig scenario, ServerCapacities caps, RadioParams radio, EnvConfig env);

  /// Re-initialises the world from the scenario seed.
  const std::vector<double>& reset();
  StepResult step(std::span<const double> raw_action);

  const std::vector<double>& state() const { return state_; }
  const WorldState& world() const { return world_; }
  const ScenarioConfig& scenario() const { return scenario_; }
  const ServerCapacities& capacities() const { return caps_; }
  const RadioParams& radio() const { return radio_; }
  const EnvConfig& config() const { return env_; }
  std::size_t state_size() const { return state_dim(scenario_.max_vehicles); }
  std::size_t action_size() const { return action_dim(scenario_.max_vehicles); }
  int step_in_episode() const { return step_in_episode_; }

  /// Scores `decision` on the current world without advancing it.
  EvaluationReport score(const AllocationDecision& decision) const;
  /// Moves the world one slot forward without taking an action.
  void skip();

 private:
  ScenarioConfig scenario_;
  ServerCapacities caps_;
  RadioParams radio_;
  EnvConfig env_;
  WorldState world_;
  std::vector<double> state_;
  int step_in_episode_ = 0;
};

}  // namespace uavmec
