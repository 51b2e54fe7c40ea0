#include "uavmec/mlp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace uavmec {

double MlpGradients::norm() const {
  double sq = 0.0;
  for (const auto& w : weight) sq += w.squaredNorm();
  for (const auto& b : bias) sq += b.squaredNorm();
  return std::sqrt(sq);
}

void MlpGradients::scale(double factor) {
  for (auto& w : weight) w *= factor;
  for (auto& b : bias) b *= factor;
}

double MlpGradients::clip_norm(double max_norm) {
  const double n = norm();
  if (max_norm > 0.0 && n > max_norm) scale(max_norm / n);
  return n;
}

Mlp::Mlp(const std::vector<int>& sizes, Activation hidden, Activation output) {
  if (sizes.size() < 2) throw std::invalid_argument("an MLP needs at least input and output sizes");
  for (int s : sizes) {
    if (s <= 0) throw std::invalid_argument("layer sizes must be positive");
  }
  for (std::size_t k = 0; k + 1 < sizes.size(); ++k) {
    DenseLayer layer;
    layer.weight = Eigen::MatrixXd::Zero(sizes[k + 1], sizes[k]);
    layer.bias = Eigen::VectorXd::Zero(sizes[k + 1]);
    layer.activation = k + 2 == sizes.size() ? output : hidden;
    layers_.push_back(std::move(layer));
  }
}

void Mlp::init_uniform(std::mt19937_64& rng) {
  for (auto& layer : layers_) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer.weight.cols()));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) layer.weight(r, c) = dist(rng);
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias(r) = dist(rng);
  }
}

namespace {

void activate(Eigen::MatrixXd& z, Activation a) {
  switch (a) {
    case Activation::relu:
      z = z.cwiseMax(0.0);
      break;
    case Activation::tanh:
      z = z.array().tanh().matrix();
      break;
    case Activation::linear:
      break;
  }
}

// Multiplies `grad` in place by the activation derivative, expressed through
// the post-activation value.
void activation_backward(Eigen::MatrixXd& grad, const Eigen::MatrixXd& out, Activation a) {
  switch (a) {
    case Activation::relu:
      grad = (out.array() > 0.0).select(grad, 0.0);
      break;
    case Activation::tanh:
      grad.array() *= 1.0 - out.array().square();
      break;
    case Activation::linear:
      break;
  }
}

}  // namespace

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& input) const {
  if (static_cast<std::size_t>(input.rows()) != input_size()) {
    throw std::invalid_argument("input has " + std::to_string(input.rows()) + " rows, network expects " +
                                std::to_string(input_size()));
  }
  Eigen::MatrixXd x = input;
  for (const auto& layer : layers_) {
    Eigen::MatrixXd z = layer.weight * x;
    z.colwise() += layer.bias;
    activate(z, layer.activation);
    x = std::move(z);
  }
  return x;
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& input, Trace& trace) const {
  if (static_cast<std::size_t>(input.rows()) != input_size()) {
    throw std::invalid_argument("input has " + std::to_string(input.rows()) + " rows, network expects " +
                                std::to_string(input_size()));
  }
  trace.activations.clear();
  trace.activations.reserve(layers_.size() + 1);
  trace.activations.push_back(input);
  for (const auto& layer : layers_) {
    Eigen::MatrixXd z = layer.weight * trace.activations.back();
    z.colwise() += layer.bias;
    activate(z, layer.activation);
    trace.activations.push_back(std::move(z));
  }
  return trace.activations.back();
}

Eigen::MatrixXd Mlp::backward(const Trace& trace, const Eigen::MatrixXd& grad_output, MlpGradients* grads) const {
  if (trace.activations.size() != layers_.size() + 1) throw std::logic_error("trace does not match network depth");
  if (grads != nullptr && grads->weight.size() != layers_.size()) *grads = zero_gradients();
  Eigen::MatrixXd delta = grad_output;
  for (std::size_t k = layers_.size(); k-- > 0;) {
    const DenseLayer& layer = layers_[k];
    activation_backward(delta, trace.activations[k + 1], layer.activation);
    if (grads != nullptr) {
      grads->weight[k].noalias() = delta * trace.activations[k].transpose();
      grads->bias[k] = delta.rowwise().sum();
    }
    delta = layer.weight.transpose() * delta;
  }
  return delta;
}

MlpGradients Mlp::zero_gradients() const {
  MlpGradients g;
  for (const auto& layer : layers_) {
    g.weight.push_back(Eigen::MatrixXd::Zero(layer.weight.rows(), layer.weight.cols()));
    g.bias.push_back(Eigen::VectorXd::Zero(layer.bias.size()));
  }
  return g;
}

void Mlp::sgd_step(const MlpGradients& grads, double learning_rate) {
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    layers_[k].weight -= learning_rate * grads.weight[k];
    layers_[k].bias -= learning_rate * grads.bias[k];
  }
}

void Mlp::soft_update_from(const Mlp& source, double rate) {
  if (source.layers_.size() != layers_.size()) throw std::invalid_argument("soft update between different shapes");
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    auto& dst = layers_[k];
    const auto& src = source.layers_[k];
    if (dst.weight.rows() != src.weight.rows() || dst.weight.cols() != src.weight.cols()) {
      throw std::invalid_argument("soft update between different shapes");
    }
    if (rate == 1.0) {
      dst.weight = src.weight;
      dst.bias = src.bias;
    } else {
      dst.weight += rate * (src.weight - dst.weight);
      dst.bias += rate * (src.bias - dst.bias);
    }
  }
}

std::size_t Mlp::input_size() const {
  return layers_.empty() ? 0 : static_cast<std::size_t>(layers_.front().weight.cols());
}

std::size_t Mlp::output_size() const {
  return layers_.empty() ? 0 : static_cast<std::size_t>(layers_.back().weight.rows());
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) n += static_cast<std::size_t>(layer.weight.size() + layer.bias.size());
  return n;
}

// Flat order: per layer, weights row-major then biases.
std::vector<double> Mlp::flat_parameters() const {
  std::vector<double> out;
  out.reserve(parameter_count());
  for (const auto& layer : layers_) {
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) out.push_back(layer.weight(r, c));
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) out.push_back(layer.bias(r));
  }
  return out;
}

void Mlp::set_flat_parameters(std::span<const double> values) {
  if (values.size() != parameter_count()) throw std::invalid_argument("parameter vector has the wrong length");
  std::size_t i = 0;
  for (auto& layer : layers_) {
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) layer.weight(r, c) = values[i++];
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias(r) = values[i++];
  }
}

}  // namespace uavmec
