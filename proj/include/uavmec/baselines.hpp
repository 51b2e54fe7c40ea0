#pragma once

#include <cstddef>
#include <functional>
#include <random>
#include <stdexcept>

#include "uavmec/network_model.hpp"
#include "uavmec/scenario.hpp"

namespace uavmec {

/// Random scheme: UAV-covered vehicles flip a fair coin between the MeNB and
/// their UAV; every (server, resource) split is drawn uniformly from the
/// simplex over the server's vehicles.
AllocationDecision random_policy(const WorldState& world, double uav_range, std::mt19937_64& rng);

class OracleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kOracleMaxVehicles = 4;
inline constexpr int kOracleMaxResolution = 5;

/// Visits every coverage-feasible association pattern combined with every
/// grid allocation (fractions in multiples of 1/resolution, zeros allowed) on
/// each server simplex. Order is lexicographic: vehicle 0's association
/// varies slowest, MeNB before UAV; then the MeNB splits, then UAV 1, then
/// UAV 2, each as spectrum, compute, cache compositions in lexicographic
/// order.
void for_each_grid_decision(const WorldState& world, double uav_range, int resolution,
                            const std::function<void(const AllocationDecision&)>& visit);

struct OracleResult {
  AllocationDecision decision;
  int objective = -1;
  double total_delay = kInfiniteDelay;
  std::size_t evaluated = 0;
};

/// Exhaustive maximiser of the completed-task count over the grid. Ties go to
/// the lower total delay, then to the earlier decision in visiting order.
OracleResult brute_force(const WorldState& world, const ServerCapacities& caps, const RadioParams& radio,
                         double uav_range, int resolution);

}  // namespace uavmec
