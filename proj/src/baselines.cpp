#include "uavmec/baselines.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace uavmec {

namespace {

std::array<std::vector<std::size_t>, kServerCount> members_by_server(const AllocationDecision& d) {
  std::array<std::vector<std::size_t>, kServerCount> members;
  for (std::size_t i = 0; i < d.per_vehicle.size(); ++i) {
    members[static_cast<std::size_t>(d.per_vehicle[i].server)].push_back(i);
  }
  return members;
}

Server uav_of(CoverageTag tag) { return tag == CoverageTag::uav1 ? Server::uav1 : Server::uav2; }

// All ways to write `total` as an ordered sum of `parts` non-negative
// integers, in lexicographic order.
void compositions(int total, std::size_t parts, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (parts == 0) return;
  if (parts == 1) {
    current.push_back(total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int first = 0; first <= total; ++first) {
    current.push_back(first);
    compositions(total - first, parts - 1, current, out);
    current.pop_back();
  }
}

}  // namespace

AllocationDecision random_policy(const WorldState& world, double uav_range, std::mt19937_64& rng) {
  AllocationDecision d;
  d.per_vehicle.resize(world.vehicles.size());
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < world.vehicles.size(); ++i) {
    const CoverageTag cov = coverage_of(world.vehicles[i], world, uav_range);
    d.per_vehicle[i].server = cov != CoverageTag::menb_only && !coin(rng) ? uav_of(cov) : Server::menb;
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& members : members_by_server(d)) {
    if (members.empty()) continue;
    for (double Allocation::*field : {&Allocation::spectrum, &Allocation::compute, &Allocation::cache}) {
      // Normalised unit exponentials are uniform on the simplex.
      std::vector<double> e(members.size());
      double total = 0.0;
      for (double& v : e) {
        v = -std::log1p(-unit(rng));
        total += v;
      }
      for (std::size_t k = 0; k < members.size(); ++k) {
        d.per_vehicle[members[k]].*field = total > 0.0 ? e[k] / total : 1.0 / static_cast<double>(members.size());
      }
    }
  }
  return d;
}

void for_each_grid_decision(const WorldState& world, double uav_range, int resolution,
                            const std::function<void(const AllocationDecision&)>& visit) {
  const std::size_t n = world.vehicles.size();
  if (n > kOracleMaxVehicles) {
    throw OracleError("oracle instance too large: " + std::to_string(n) + " vehicles, at most " +
                      std::to_string(kOracleMaxVehicles));
  }
  if (resolution < 1 || resolution > kOracleMaxResolution) {
    throw OracleError("oracle grid resolution must lie in [1, " + std::to_string(kOracleMaxResolution) + "]");
  }

  std::vector<std::vector<Server>> options(n);
  for (std::size_t i = 0; i < n; ++i) {
    options[i].push_back(Server::menb);
    const CoverageTag cov = coverage_of(world.vehicles[i], world, uav_range);
    if (cov != CoverageTag::menb_only) options[i].push_back(uav_of(cov));
  }

  std::vector<std::vector<std::vector<int>>> splits_by_size(n + 1);
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<int> scratch;
    compositions(resolution, k, scratch, splits_by_size[k]);
  }
  const double denom = static_cast<double>(resolution);

  AllocationDecision d;
  d.per_vehicle.resize(n);

  // Allocation slots: (server, resource) pairs with at least one member.
  struct Slot {
    std::vector<std::size_t> members;
    double Allocation::*field;
  };

  std::function<void(std::size_t)> choose_association = [&](std::size_t i) {
    if (i < n) {
      for (Server s : options[i]) {
        d.per_vehicle[i].server = s;
        choose_association(i + 1);
      }
      return;
    }
    std::vector<Slot> slots;
    for (const auto& members : members_by_server(d)) {
      if (members.empty()) continue;
      for (double Allocation::*field : {&Allocation::spectrum, &Allocation::compute, &Allocation::cache}) {
        slots.push_back({members, field});
      }
    }
    std::function<void(std::size_t)> fill = [&](std::size_t s) {
      if (s == slots.size()) {
        visit(d);
        return;
      }
      const Slot& slot = slots[s];
      for (const auto& split : splits_by_size[slot.members.size()]) {
        for (std::size_t k = 0; k < slot.members.size(); ++k) {
          d.per_vehicle[slot.members[k]].*slot.field = split[k] / denom;
        }
        fill(s + 1);
      }
    };
    fill(0);
  };
  choose_association(0);
}

OracleResult brute_force(const WorldState& world, const ServerCapacities& caps, const RadioParams& radio,
                         double uav_range, int resolution) {
  OracleResult best;
  for_each_grid_decision(world, uav_range, resolution, [&](const AllocationDecision& d) {
    const EvaluationReport r = evaluate(world, d, caps, radio, uav_range);
    ++best.evaluated;
    const double delay = r.total_delay();
    const bool better = r.objective > best.objective || (r.objective == best.objective && delay < best.total_delay);
    if (better) {
      best.objective = r.objective;
      best.total_delay = delay;
      best.decision = d;
    }
  });
  return best;
}

}  // namespace uavmec
