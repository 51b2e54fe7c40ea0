#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace uavmec {

enum class Activation { relu, tanh, linear };

struct DenseLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;    // out
  Activation activation = Activation::linear;
};

/// Parameter-shaped buffers, one weight/bias pair per layer.
struct MlpGradients {
  std::vector<Eigen::MatrixXd> weight;
  std::vector<Eigen::VectorXd> bias;

  double norm() const;
  void scale(double factor);
  /// Rescales so the global L2 norm is at most `max_norm`. Returns the norm
  /// before clipping.
  double clip_norm(double max_norm);
};

/// Fully connected network. Batches are column-major: each column is one
/// sample, so an input batch is input_size() x batch.
class Mlp {
 public:
  /// Post-activation outputs of every layer; activations.front() is the input.
  struct Trace {
    std::vector<Eigen::MatrixXd> activations;
  };

  Mlp() = default;
  Mlp(const std::vector<int>& sizes, Activation hidden, Activation output);

  /// Weights and biases uniform in +-1/sqrt(fan_in).
  void init_uniform(std::mt19937_64& rng);

  Eigen::MatrixXd forward(const Eigen::MatrixXd& input) const;
  Eigen::MatrixXd forward(const Eigen::MatrixXd& input, Trace& trace) const;

  /// Backpropagates dL/d(output) through a recorded forward pass. Parameter
  /// gradients are written to `grads` when it is non-null; the return value
  /// is dL/d(input).
  Eigen::MatrixXd backward(const Trace& trace, const Eigen::MatrixXd& grad_output, MlpGradients* grads) const;

  MlpGradients zero_gradients() const;
  void sgd_step(const MlpGradients& grads, double learning_rate);
  /// this <- this + rate * (source - this); rate == 1 copies exactly.
  void soft_update_from(const Mlp& source, double rate);

  std::size_t input_size() const;
  std::size_t output_size() const;
  std::size_t parameter_count() const;
  std::vector<double> flat_parameters() const;
  void set_flat_parameters(std::span<const double> values);

  std::vector<DenseLayer>& layers() { return layers_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }

 private:
  std::vector<DenseLayer> layers_;
};

}  // namespace uavmec
