#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "uavmec/mlp.hpp"
#include "uavmec/replay_buffer.hpp"
#include "uavmec/rl_env.hpp"

namespace uavmec {

struct AgentConfig {
  double actor_lr = 0.0005;
  double critic_lr = 0.005;
  double discount = 0.9;
  double actor_soft_rate = 0.05;
  double critic_soft_rate = 0.05;
  std::size_t buffer_size = 10000;
  std::size_t batch_size = 32;
  std::vector<int> hidden_layers{128, 128};
  // Gaussian exploration: standard deviation falls linearly from
  // noise_initial to noise_final over noise_decay_steps environment steps.
  double noise_initial = 0.5;
  double noise_final = 0.05;
  std::int64_t noise_decay_steps = 50000;
  /// Global L2 bound on each network's gradient; 0 disables clipping.
  double grad_clip_norm = 1.0;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Exploration standard deviation after `step` environment steps.
double noise_scale_at(const AgentConfig& config, std::int64_t step);

struct UpdateStats {
  double critic_loss = 0.0;
  double actor_objective = 0.0;
  bool critic_clipped = false;
  bool actor_clipped = false;
};

/// Deep deterministic policy gradient agent: tanh-bounded actor, linear
/// critic on the concatenated (state, action), target copies of both, a FIFO
/// replay buffer and plain SGD on every network.
class DdpgAgent {
 public:
  DdpgAgent(std::size_t state_size, std::size_t action_size, AgentConfig config);

  /// Deterministic policy output.
  std::vector<double> act(std::span<const double> state) const;
  /// Policy output plus Gaussian noise at the current scale, clipped to [-1, 1].
  std::vector<double> explore(std::span<const double> state);

  double q_value(std::span<const double> state, std::span<const double> action) const;

  /// One SGD step on the mean squared TD error. Returns the loss before the
  /// step.
  double critic_update(const std::vector<const Transition*>& batch, bool* clipped = nullptr);
  /// One SGD ascent step on mean Q(s, mu(s)). Returns the objective before
  /// the step.
  double actor_update(const std::vector<const Transition*>& batch, bool* clipped = nullptr);
  void soft_update();

  /// Stores a transition. While the buffer is filling it is only saved; once
  /// full, it replaces the oldest entry and a sampled mini-batch drives one
  /// critic update, one actor update and one soft update. Returns the update
  /// statistics when an update took place.
  std::optional<UpdateStats> observe(Transition transition);

  const AgentConfig& config() const { return config_; }
  std::size_t state_size() const { return state_size_; }
  std::size_t action_size() const { return action_size_; }
  std::int64_t env_steps() const { return env_steps_; }
  double noise_scale() const { return noise_scale_at(config_, env_steps_); }

  Mlp& actor() { return actor_; }
  Mlp& critic() { return critic_; }
  Mlp& target_actor() { return target_actor_; }
  Mlp& target_critic() { return target_critic_; }
  const Mlp& actor() const { return actor_; }
  const Mlp& critic() const { return critic_; }
  const Mlp& target_actor() const { return target_actor_; }
  const Mlp& target_critic() const { return target_critic_; }
  const ReplayBuffer& buffer() const { return buffer_; }

 private:
  AgentConfig config_;
  std::size_t state_size_;
  std::size_t action_size_;
  Mlp actor_;
  Mlp critic_;
  Mlp target_actor_;
  Mlp target_critic_;
  ReplayBuffer buffer_;
  std::mt19937_64 rng_;
  std::int64_t env_steps_ = 0;
};

struct EpisodeRecord {
  int episode = 0;
  double reward = 0.0;
  double mean_critic_loss = 0.0;
  double mean_actor_objective = 0.0;
  double noise_scale = 0.0;
  int updates = 0;
  int clipped_updates = 0;
};

struct TrainingLog {
  std::vector<EpisodeRecord> episodes;
};

using EpisodeCallback = std::function<void(const EpisodeRecord&)>;

/// Runs the training loop for `episodes` episodes of `steps_per_episode`
/// steps. The world is not reset between episodes.
TrainingLog train(DdpgAgent& agent, Environment& env, int episodes, int steps_per_episode,
                  const EpisodeCallback& on_episode = {});

}  // namespace uavmec
