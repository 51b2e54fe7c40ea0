#include "uavmec/rl_env.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace uavmec {

void EnvConfig::validate() const {
  if (!(reward_clip > 0.0)) throw std::invalid_argument("reward_clip: must be positive");
  if (episode_steps <= 0) throw std::invalid_argument("episode_steps: must be at least 1");
  if (!(logit_scale > 0.0)) throw std::invalid_argument("logit_scale: must be positive");
}

std::size_t state_dim(int max_vehicles) { return 5 * static_cast<std::size_t>(max_vehicles) + 6; }

std::size_t action_dim(int max_vehicles) { return 4 * static_cast<std::size_t>(max_vehicles); }

namespace {

struct FeatureScale {
  double offset = 0.0;
  double width = 1.0;

  double apply(double v) const { return width > 0.0 ? (v - offset) / width : 0.0; }
  double invert(double v) const { return v * width + offset; }
};

struct Scales {
  FeatureScale compute, data, deadline, x, y, z;
};

Scales scales_for(const ScenarioConfig& c, StateScaling scaling) {
  if (scaling == StateScaling::raw) return {};
  return {{c.task_compute.min, c.task_compute.width()},
          {c.task_data.min, c.task_data.width()},
          {c.task_deadline.min, c.task_deadline.width()},
          {0.0, c.road_length},
          {-0.5 * c.road_width, c.road_width},
          {0.0, c.uav_altitude}};
}

}  // namespace

std::vector<double> encode_state(const WorldState& world, const ScenarioConfig& config, StateScaling scaling) {
  const std::size_t cap = static_cast<std::size_t>(config.max_vehicles);
  const std::size_t n = world.vehicles.size();
  if (n > cap) {
    throw std::length_error("world has " + std::to_string(n) + " vehicles, state holds " + std::to_string(cap));
  }
  const Scales s = scales_for(config, scaling);
  std::vector<double> out(state_dim(config.max_vehicles), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const VehicleState& v = world.vehicles[i];
    out[i] = s.compute.apply(v.task.compute_demand);
    out[cap + i] = s.data.apply(v.task.data_size);
    out[2 * cap + i] = s.deadline.apply(v.task.deadline);
    out[3 * cap + i] = s.x.apply(v.position.x);
    out[4 * cap + i] = s.y.apply(v.position.y);
  }
  const std::size_t base = 5 * cap;
  for (std::size_t j = 0; j < 2; ++j) {
    const Vec3& p = world.uavs[j].position;
    out[base + j] = s.x.apply(p.x);
    out[base + 2 + j] = s.y.apply(p.y);
    out[base + 4 + j] = s.z.apply(p.z);
  }
  return out;
}

DecodedState decode_state(std::span<const double> state, int vehicle_count, const ScenarioConfig& config,
                          StateScaling scaling) {
  const std::size_t cap = static_cast<std::size_t>(config.max_vehicles);
  if (state.size() != state_dim(config.max_vehicles)) throw std::length_error("state vector has the wrong length");
  if (vehicle_count < 0 || static_cast<std::size_t>(vehicle_count) > cap) {
    throw std::out_of_range("vehicle_count exceeds max_vehicles");
  }
  const Scales s = scales_for(config, scaling);
  DecodedState d;
  for (std::size_t i = 0; i < static_cast<std::size_t>(vehicle_count); ++i) {
    d.tasks.push_back({s.compute.invert(state[i]), s.data.invert(state[cap + i]), s.deadline.invert(state[2 * cap + i])});
    d.positions.push_back({s.x.invert(state[3 * cap + i]), s.y.invert(state[4 * cap + i])});
  }
  const std::size_t base = 5 * cap;
  for (std::size_t j = 0; j < 2; ++j) {
    d.uavs[j] = {s.x.invert(state[base + j]), s.y.invert(state[base + 2 + j]), s.z.invert(state[base + 4 + j])};
  }
  return d;
}

namespace {

// Softmax of scaled logits over `members`, written into `field` of each
// member's allocation.
void split_softmax(std::span<const double> logits, const std::vector<std::size_t>& members, double scale,
                   AllocationDecision& decision, double Allocation::*field) {
  if (members.empty()) return;
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i : members) peak = std::max(peak, scale * logits[i]);
  double total = 0.0;
  std::vector<double> weights(members.size());
  for (std::size_t k = 0; k < members.size(); ++k) {
    weights[k] = std::exp(scale * logits[members[k]] - peak);
    total += weights[k];
  }
  for (std::size_t k = 0; k < members.size(); ++k) {
    decision.per_vehicle[members[k]].*field = weights[k] / total;
  }
}

}  // namespace

AllocationDecision decode_action(std::span<const double> raw, const WorldState& world, const ScenarioConfig& config,
                                 double logit_scale) {
  const std::size_t cap = static_cast<std::size_t>(config.max_vehicles);
  if (raw.size() != action_dim(config.max_vehicles)) {
    throw std::length_error("raw action has length " + std::to_string(raw.size()) + ", expected " +
                            std::to_string(action_dim(config.max_vehicles)));
  }
  const std::size_t n = world.vehicles.size();
  if (n > cap) throw std::length_error("world has more vehicles than max_vehicles");

  AllocationDecision decision;
  decision.per_vehicle.resize(n);
  std::array<std::vector<std::size_t>, kServerCount> members;
  for (std::size_t i = 0; i < n; ++i) {
    const CoverageTag cov = coverage_of(world.vehicles[i], world, config.uav_range);
    Server server = Server::menb;
    if (cov != CoverageTag::menb_only && raw[i] < 0.0) {
      server = cov == CoverageTag::uav1 ? Server::uav1 : Server::uav2;
    }
    decision.per_vehicle[i].server = server;
    members[static_cast<std::size_t>(server)].push_back(i);
  }
  const auto spectrum = raw.subspan(cap, cap);
  const auto compute = raw.subspan(2 * cap, cap);
  const auto cache = raw.subspan(3 * cap, cap);
  for (const auto& m : members) {
    split_softmax(spectrum, m, logit_scale, decision, &Allocation::spectrum);
    split_softmax(compute, m, logit_scale, decision, &Allocation::compute);
    split_softmax(cache, m, logit_scale, decision, &Allocation::cache);
  }
  return decision;
}

RewardBreakdown reward(const WorldState& world, const AllocationDecision& decision, const EvaluationReport& report,
                       const ServerCapacities& caps, double clip) {
  RewardBreakdown r;
  const std::size_t n = world.vehicles.size();
  r.delay_reward.resize(n);
  r.cache_reward.resize(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const TaskRequest& task = world.vehicles[i].task;
    const double delay = report.vehicles[i].delay;
    // An infinite delay gives a ratio of exactly 0.
    const double delay_ratio = std::isinf(delay) ? 0.0 : task.deadline / delay;
    const double server_cache = decision.per_vehicle[i].to_menb() ? caps.menb_cache : caps.uav_cache;
    const double cache_ratio = decision.per_vehicle[i].cache * server_cache / task.data_size;
    r.delay_reward[i] = std::min(clip, std::log2(delay_ratio + 0.01));
    r.cache_reward[i] = std::min(clip, std::log2(cache_ratio + 0.01));
    total += r.delay_reward[i] + r.cache_reward[i];
  }
  r.step_reward = n > 0 ? total / static_cast<double>(n) : 0.0;
  return r;
}

Environment::Environment(ScenarioConfig scenario, ServerCapacities caps, RadioParams radio, EnvConfig env)
    : scenario_(std::move(scenario)), caps_(caps), radio_(radio), env_(env) {
  scenario_.validate();
  caps_.validate();
  radio_.validate();
  env_.validate();
  reset();
}

const std::vector<double>& Environment::reset() {
  world_ = init_world(scenario_);
  state_ = encode_state(world_, scenario_);
  step_in_episode_ = 0;
  return state_;
}

EvaluationReport Environment::score(const AllocationDecision& decision) const {
  return evaluate(world_, decision, caps_, radio_, scenario_.uav_range);
}

StepResult Environment::step(std::span<const double> raw_action) {
  StepResult result;
  result.decision = decode_action(raw_action, world_, scenario_, env_.logit_scale);
  result.report = score(result.decision);
  result.breakdown = reward(world_, result.decision, result.report, caps_, env_.reward_clip);
  result.reward = result.breakdown.step_reward;
  skip();
  result.next_state = state_;
  if (++step_in_episode_ >= env_.episode_steps) {
    result.episode_end = true;
    step_in_episode_ = 0;
  }
  return result;
}

void Environment::skip() {
  world_ = advance(std::move(world_), scenario_);
  state_ = encode_state(world_, scenario_);
}

}  // namespace uavmec
