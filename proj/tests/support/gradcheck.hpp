#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "uavmec/mlp.hpp"

namespace gradcheck {

struct Result {
  double param_error = 0.0;
  double input_error = 0.0;
};

inline double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const double denom = std::max({std::sqrt(na), std::sqrt(nb), 1e-12});
  return std::sqrt(diff) / denom;
}

/// Compares backprop against central differences for the scalar loss
/// sum(probe .* forward(x)).
inline Result check(uavmec::Mlp net, const Eigen::MatrixXd& x, const Eigen::MatrixXd& probe, double h = 1e-6) {
  auto loss = [&](const uavmec::Mlp& m, const Eigen::MatrixXd& in) { return (m.forward(in).array() * probe.array()).sum(); };

  uavmec::Mlp::Trace trace;
  net.forward(x, trace);
  uavmec::MlpGradients grads;
  const Eigen::MatrixXd grad_x = net.backward(trace, probe, &grads);

  std::vector<double> analytic;
  for (std::size_t l = 0; l < grads.weight.size(); ++l) {
    const Eigen::MatrixXd& w = grads.weight[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) analytic.push_back(w(r, c));
    for (Eigen::Index r = 0; r < grads.bias[l].size(); ++r) analytic.push_back(grads.bias[l](r));
  }

  std::vector<double> theta = net.flat_parameters();
  std::vector<double> numeric(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double keep = theta[i];
    theta[i] = keep + h;
    net.set_flat_parameters(theta);
    const double up = loss(net, x);
    theta[i] = keep - h;
    net.set_flat_parameters(theta);
    const double down = loss(net, x);
    theta[i] = keep;
    numeric[i] = (up - down) / (2.0 * h);
  }
  net.set_flat_parameters(theta);

  std::vector<double> analytic_x(grad_x.data(), grad_x.data() + grad_x.size());
  std::vector<double> numeric_x(analytic_x.size());
  Eigen::MatrixXd xp = x;
  for (Eigen::Index i = 0; i < xp.size(); ++i) {
    const double keep = xp.data()[i];
    xp.data()[i] = keep + h;
    const double up = loss(net, xp);
    xp.data()[i] = keep - h;
    const double down = loss(net, xp);
    xp.data()[i] = keep;
    numeric_x[static_cast<std::size_t>(i)] = (up - down) / (2.0 * h);
  }
  return {relative_error(analytic, numeric), relative_error(analytic_x, numeric_x)};
}

/// Random network with 1..3 layers of at most 16 units and random activations.
inline uavmec::Mlp random_network(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> layers(1, 3);
  std::uniform_int_distribution<int> width(1, 16);
  std::uniform_int_distribution<int> act(0, 2);
  std::vector<int> sizes{width(rng)};
  const int n = layers(rng);
  for (int i = 0; i < n; ++i) sizes.push_back(width(rng));
  const auto hidden = static_cast<uavmec::Activation>(act(rng));
  const auto output = static_cast<uavmec::Activation>(act(rng));
  uavmec::Mlp net(sizes, hidden, output);
  net.init_uniform(rng);
  return net;
}

}  // namespace gradcheck
