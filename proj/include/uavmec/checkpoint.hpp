#pragma once

#include <filesystem>
#include <stdexcept>
#include <vector>

#include "uavmec/ddpg_agent.hpp"
#include "uavmec/mlp.hpp"

namespace uavmec {

// Binary parameter file, little-endian:
//
//   char[8]  magic "UAVMECNN"
//   u32      format version (1)
//   u32      network count
//   per network:
//     u32    layer count
//     per layer:
//       u32  rows (outputs), u32 cols (inputs), u32 activation (0 relu, 1 tanh, 2 linear)
//       f64  weights, rows * cols values, row-major
//       f64  biases, rows values
//
// Agent checkpoints hold four networks: actor, critic, target actor, target
// critic.

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void save_networks(const std::filesystem::path& path, const std::vector<const Mlp*>& networks);
std::vector<Mlp> load_networks(const std::filesystem::path& path);

void save_agent(const std::filesystem::path& path, const DdpgAgent& agent);
/// Replaces the agent's four networks; throws CheckpointError on any shape
/// mismatch.
void load_agent(const std::filesystem::path& path, DdpgAgent& agent);

}  // namespace uavmec
