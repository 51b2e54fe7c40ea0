#pragma once

// Independent scoring of an allocation, written directly from the rate,
// delay and objective definitions. It shares no code with the library's
// network model: UAV spectrum sharing is resolved by sweeping the union of
// all band edges instead of pairwise overlaps.

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "uavmec/network_model.hpp"
#include "uavmec/scenario.hpp"

namespace reference {

struct Outcome {
  std::vector<double> delay;
  std::vector<bool> qos;
  std::vector<bool> delay_met;
  int objective = 0;
};

inline double path_gain_db(double intercept, double d) {
  if (d < 1.0) d = 1.0;
  return intercept - 35.0 * std::log10(d);
}

inline double dist3(double ax, double ay, double az, double bx, double by, double bz) {
  return std::sqrt((ax - bx) * (ax - bx) + (ay - by) * (ay - by) + (az - bz) * (az - bz));
}

inline Outcome score(const uavmec::WorldState& w, const uavmec::AllocationDecision& d,
                     const uavmec::ServerCapacities& c, const uavmec::RadioParams& radio) {
  using uavmec::Server;
  const std::size_t n = w.vehicles.size();
  std::vector<double> rate(n, 0.0);

  // Band layout at each UAV.
  std::vector<double> lo(n, 0.0), hi(n, 0.0);
  double cursor[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const auto s = d.per_vehicle[i].server;
    if (s == Server::menb) continue;
    const int u = s == Server::uav1 ? 0 : 1;
    lo[i] = cursor[u];
    hi[i] = cursor[u] + d.per_vehicle[i].spectrum;
    cursor[u] = hi[i];
  }
  std::set<double> edges{0.0};
  for (std::size_t i = 0; i < n; ++i) {
    if (d.per_vehicle[i].server != Server::menb) {
      edges.insert(lo[i]);
      edges.insert(hi[i]);
    }
  }
  const std::vector<double> cuts(edges.begin(), edges.end());

  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = w.vehicles[i];
    const auto& a = d.per_vehicle[i];
    if (a.server == Server::menb) {
      const double g = std::pow(10.0, path_gain_db(-30.0, dist3(v.position.x, v.position.y, 0.0, w.menb_position.x,
                                                                 w.menb_position.y, w.menb_position.z)) / 10.0);
      rate[i] = c.menb_spectrum * a.spectrum * std::log2(1.0 + radio.tx_power * g / radio.noise_power);
      continue;
    }
    const int u = a.server == Server::uav1 ? 0 : 1;
    const auto& p = w.uavs[static_cast<std::size_t>(u)].position;
    const double g = std::pow(10.0, path_gain_db(-40.0, dist3(v.position.x, v.position.y, 0.0, p.x, p.y, p.z)) / 10.0);
    double r = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double a0 = std::max(cuts[k], lo[i]);
      const double a1 = std::min(cuts[k + 1], hi[i]);
      if (a1 <= a0) continue;
      const double mid = 0.5 * (a0 + a1);
      double interference = 0.0;
      for (std::size_t o = 0; o < n; ++o) {
        const auto os = d.per_vehicle[o].server;
        if (os == Server::menb || os == a.server) continue;
        if (mid > lo[o] && mid < hi[o]) {
          const auto& ov = w.vehicles[o];
          interference = std::pow(
              10.0, path_gain_db(-40.0, dist3(ov.position.x, ov.position.y, 0.0, p.x, p.y, p.z)) / 10.0);
        }
      }
      r += c.uav_spectrum * (a1 - a0) *
           std::log2(1.0 + radio.tx_power * g / (radio.tx_power * interference + radio.noise_power));
    }
    rate[i] = r;
  }

  Outcome out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = w.vehicles[i].task;
    const auto& a = d.per_vehicle[i];
    const bool menb = a.server == Server::menb;
    const double cpu = (menb ? c.menb_compute : c.uav_compute) * a.compute;
    double delay = std::numeric_limits<double>::infinity();
    if (rate[i] > 0.0 && cpu > 0.0) delay = t.data_size / rate[i] + t.compute_demand / cpu;
    const bool in_time = t.deadline - delay >= 0.0;
    const bool cached = a.cache * (menb ? c.menb_cache : c.uav_cache) - t.data_size >= 0.0;
    out.delay.push_back(delay);
    out.delay_met.push_back(in_time);
    out.qos.push_back(in_time && cached);
    out.objective += (in_time && cached) ? 1 : 0;
  }
  return out;
}

}  // namespace reference
