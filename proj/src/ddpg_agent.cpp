#include "uavmec/ddpg_agent.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace uavmec {

void AgentConfig::validate() const {
  if (!(actor_lr >= 0.0)) throw std::invalid_argument("actor_lr: must be non-negative");
  if (!(critic_lr >= 0.0)) throw std::invalid_argument("critic_lr: must be non-negative");
  if (!(discount >= 0.0 && discount < 1.0)) throw std::invalid_argument("discount: must lie in [0, 1)");
  if (!(actor_soft_rate > 0.0 && actor_soft_rate <= 1.0)) {
    throw std::invalid_argument("actor_soft_rate: must lie in (0, 1]");
  }
  if (!(critic_soft_rate > 0.0 && critic_soft_rate <= 1.0)) {
    throw std::invalid_argument("critic_soft_rate: must lie in (0, 1]");
  }
  if (buffer_size == 0) throw std::invalid_argument("buffer_size: must be positive");
  if (batch_size == 0) throw std::invalid_argument("batch_size: must be positive");
  for (int h : hidden_layers) {
    if (h <= 0) throw std::invalid_argument("hidden_layers: sizes must be positive");
  }
  if (!(noise_initial >= 0.0 && noise_final >= 0.0 && noise_final <= noise_initial)) {
    throw std::invalid_argument("noise_final: must lie in [0, noise_initial]");
  }
  if (noise_decay_steps < 0) throw std::invalid_argument("noise_decay_steps: must be non-negative");
  if (!(grad_clip_norm >= 0.0)) throw std::invalid_argument("grad_clip_norm: must be non-negative");
}

double noise_scale_at(const AgentConfig& config, std::int64_t step) {
  if (config.noise_decay_steps <= 0 || step >= config.noise_decay_steps) return config.noise_final;
  const double progress = static_cast<double>(step) / static_cast<double>(config.noise_decay_steps);
  return config.noise_initial + (config.noise_final - config.noise_initial) * progress;
}

namespace {

std::vector<int> layer_sizes(std::size_t in, const std::vector<int>& hidden, std::size_t out) {
  std::vector<int> sizes{static_cast<int>(in)};
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(static_cast<int>(out));
  return sizes;
}

Eigen::VectorXd to_column(std::span<const double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

struct Batch {
  Eigen::MatrixXd states;
  Eigen::MatrixXd actions;
  Eigen::RowVectorXd rewards;
  Eigen::MatrixXd next_states;
};

Batch stack(const std::vector<const Transition*>& batch, std::size_t state_size, std::size_t action_size) {
  if (batch.empty()) throw std::invalid_argument("empty mini-batch");
  const auto n = static_cast<Eigen::Index>(batch.size());
  Batch b{Eigen::MatrixXd(state_size, n), Eigen::MatrixXd(action_size, n), Eigen::RowVectorXd(n),
          Eigen::MatrixXd(state_size, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Transition& t = *batch[static_cast<std::size_t>(k)];
    if (t.state.size() != state_size || t.next_state.size() != state_size || t.action.size() != action_size) {
      throw std::invalid_argument("transition dimensions do not match the agent");
    }
    b.states.col(k) = to_column(t.state);
    b.actions.col(k) = to_column(t.action);
    b.rewards(k) = t.reward;
    b.next_states.col(k) = to_column(t.next_state);
  }
  return b;
}

Eigen::MatrixXd concat_rows(const Eigen::MatrixXd& top, const Eigen::MatrixXd& bottom) {
  Eigen::MatrixXd out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

}  // namespace

DdpgAgent::DdpgAgent(std::size_t state_size, std::size_t action_size, AgentConfig config)
    : config_(std::move(config)),
      state_size_(state_size),
      action_size_(action_size),
      buffer_(config_.buffer_size),
      rng_(config_.seed) {
  config_.validate();
  if (state_size == 0 || action_size == 0) throw std::invalid_argument("state and action sizes must be positive");
  actor_ = Mlp(layer_sizes(state_size, config_.hidden_layers, action_size), Activation::relu, Activation::tanh);
  critic_ = Mlp(layer_sizes(state_size + action_size, config_.hidden_layers, 1), Activation::relu, Activation::linear);
  actor_.init_uniform(rng_);
  critic_.init_uniform(rng_);
  target_actor_ = actor_;
  target_critic_ = critic_;
}

std::vector<double> DdpgAgent::act(std::span<const double> state) const {
  if (state.size() != state_size_) throw std::invalid_argument("state has the wrong dimension");
  const Eigen::MatrixXd out = actor_.forward(to_column(state));
  return {out.data(), out.data() + out.size()};
}

std::vector<double> DdpgAgent::explore(std::span<const double> state) {
  std::vector<double> a = act(state);
  std::normal_distribution<double> noise(0.0, 1.0);
  const double sigma = noise_scale();
  for (double& v : a) v = std::clamp(v + sigma * noise(rng_), -1.0, 1.0);
  return a;
}

double DdpgAgent::q_value(std::span<const double> state, std::span<const double> action) const {
  if (state.size() != state_size_ || action.size() != action_size_) {
    throw std::invalid_argument("state/action has the wrong dimension");
  }
  Eigen::VectorXd in(state_size_ + action_size_);
  in << to_column(state), to_column(action);
  return critic_.forward(in)(0, 0);
}

double DdpgAgent::critic_update(const std::vector<const Transition*>& batch, bool* clipped) {
  const Batch b = stack(batch, state_size_, action_size_);
  const double count = static_cast<double>(batch.size());

  const Eigen::MatrixXd next_actions = target_actor_.forward(b.next_states);
  const Eigen::MatrixXd next_q = target_critic_.forward(concat_rows(b.next_states, next_actions));
  const Eigen::RowVectorXd targets = b.rewards + config_.discount * next_q.row(0);

  Mlp::Trace trace;
  const Eigen::MatrixXd q = critic_.forward(concat_rows(b.states, b.actions), trace);
  const Eigen::RowVectorXd err = q.row(0) - targets;
  const double loss = err.squaredNorm() / count;

  MlpGradients grads;
  critic_.backward(trace, (2.0 / count) * err, &grads);
  const double norm = grads.clip_norm(config_.grad_clip_norm);
  if (clipped != nullptr) *clipped = config_.grad_clip_norm > 0.0 && norm > config_.grad_clip_norm;
  critic_.sgd_step(grads, config_.critic_lr);
  return loss;
}

double DdpgAgent::actor_update(const std::vector<const Transition*>& batch, bool* clipped) {
  const Batch b = stack(batch, state_size_, action_size_);
  const double count = static_cast<double>(batch.size());

  Mlp::Trace actor_trace;
  const Eigen::MatrixXd actions = actor_.forward(b.states, actor_trace);
  Mlp::Trace critic_trace;
  const Eigen::MatrixXd q = critic_.forward(concat_rows(b.states, actions), critic_trace);
  const double objective = q.sum() / count;

  // Descend on -J: dL/dQ = -1/count for every sample.
  const Eigen::MatrixXd grad_q = Eigen::MatrixXd::Constant(1, q.cols(), -1.0 / count);
  const Eigen::MatrixXd grad_input = critic_.backward(critic_trace, grad_q, nullptr);
  const Eigen::MatrixXd grad_actions = grad_input.bottomRows(static_cast<Eigen::Index>(action_size_));

  MlpGradients grads;
  actor_.backward(actor_trace, grad_actions, &grads);
  const double norm = grads.clip_norm(config_.grad_clip_norm);
  if (clipped != nullptr) *clipped = config_.grad_clip_norm > 0.0 && norm > config_.grad_clip_norm;
  actor_.sgd_step(grads, config_.actor_lr);
  return objective;
}

void DdpgAgent::soft_update() {
  target_actor_.soft_update_from(actor_, config_.actor_soft_rate);
  target_critic_.soft_update_from(critic_, config_.critic_soft_rate);
}

std::optional<UpdateStats> DdpgAgent::observe(Transition transition) {
  ++env_steps_;
  if (!buffer_.full()) {
    buffer_.push(std::move(transition));
    return std::nullopt;
  }
  buffer_.push(std::move(transition));
  const auto batch = buffer_.sample(config_.batch_size, rng_);
  UpdateStats stats;
  stats.critic_loss = critic_update(batch, &stats.critic_clipped);
  stats.actor_objective = actor_update(batch, &stats.actor_clipped);
  soft_update();
  return stats;
}

TrainingLog train(DdpgAgent& agent, Environment& env, int episodes, int steps_per_episode,
                  const EpisodeCallback& on_episode) {
  if (episodes < 0 || steps_per_episode <= 0) throw std::invalid_argument("invalid episode schedule");
  TrainingLog log;
  log.episodes.reserve(static_cast<std::size_t>(episodes));
  for (int ep = 0; ep < episodes; ++ep) {
    EpisodeRecord rec;
    rec.episode = ep;
    rec.noise_scale = agent.noise_scale();
    double loss_sum = 0.0;
    double objective_sum = 0.0;
    for (int t = 0; t < steps_per_episode; ++t) {
      Transition tr;
      tr.state = env.state();
      tr.action = agent.explore(tr.state);
      StepResult res = env.step(tr.action);
      tr.reward = res.reward;
      tr.next_state = std::move(res.next_state);
      rec.reward += tr.reward;
      if (auto stats = agent.observe(std::move(tr))) {
        ++rec.updates;
        loss_sum += stats->critic_loss;
        objective_sum += stats->actor_objective;
        if (stats->critic_clipped || stats->actor_clipped) ++rec.clipped_updates;
      }
    }
    if (rec.updates > 0) {
      rec.mean_critic_loss = loss_sum / rec.updates;
      rec.mean_actor_objective = objective_sum / rec.updates;
    }
    log.episodes.push_back(rec);
    if (on_episode) on_episode(rec);
  }
  return log;
}

}  // namespace uavmec
