#include "uavmec/network_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace uavmec {

ServerCapacities ServerCapacities::scaled(double factor) const {
  ServerCapacities c = *this;
  c.menb_spectrum *= factor;
  c.uav_spectrum *= factor;
  c.menb_compute *= factor;
  c.uav_compute *= factor;
  c.menb_cache *= factor;
  c.uav_cache *= factor;
  return c;
}

void ServerCapacities::validate() const {
  const std::array<std::pair<const char*, double>, 6> fields{{{"menb_spectrum", menb_spectrum},
                                                              {"uav_spectrum", uav_spectrum},
                                                              {"menb_compute", menb_compute},
                                                              {"uav_compute", uav_compute},
                                                              {"menb_cache", menb_cache},
                                                              {"uav_cache", uav_cache}}};
  for (const auto& [name, value] : fields) {
    if (!(value > 0.0)) throw std::invalid_argument(std::string(name) + ": must be strictly positive");
  }
}

double RadioParams::dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

void RadioParams::validate() const {
  if (!(tx_power > 0.0)) throw std::invalid_argument("tx_power: must be strictly positive");
  if (!(noise_power > 0.0)) throw std::invalid_argument("noise_power: must be strictly positive");
}

const char* server_name(Server s) {
  switch (s) {
    case Server::menb:
      return "menb";
    case Server::uav1:
      return "uav1";
    case Server::uav2:
      return "uav2";
  }
  return "?";
}

void check_decision(const WorldState& world, const AllocationDecision& decision, double uav_range) {
  if (decision.per_vehicle.size() != world.vehicles.size()) {
    throw InvalidDecision("decision covers " + std::to_string(decision.per_vehicle.size()) + " vehicles, world has " +
                          std::to_string(world.vehicles.size()));
  }
  std::array<std::array<double, 3>, kServerCount> sums{};
  std::array<int, kServerCount> served{};
  for (std::size_t i = 0; i < world.vehicles.size(); ++i) {
    const Allocation& a = decision.per_vehicle[i];
    const CoverageTag cov = coverage_of(world.vehicles[i], world, uav_range);
    const bool allowed = a.server == Server::menb || (a.server == Server::uav1 && cov == CoverageTag::uav1) ||
                         (a.server == Server::uav2 && cov == CoverageTag::uav2);
    if (!allowed) {
      throw InvalidDecision("vehicle " + std::to_string(world.vehicles[i].id) + " associated with " +
                            server_name(a.server) + " outside its coverage");
    }
    for (double f : {a.spectrum, a.compute, a.cache}) {
      if (!(f >= 0.0 && f <= 1.0)) {
        throw InvalidDecision("vehicle " + std::to_string(world.vehicles[i].id) + " has a fraction outside [0,1]");
      }
    }
    auto& s = sums[static_cast<std::size_t>(a.server)];
    s[0] += a.spectrum;
    s[1] += a.compute;
    s[2] += a.cache;
    ++served[static_cast<std::size_t>(a.server)];
  }
  for (int k = 0; k < kServerCount; ++k) {
    if (served[static_cast<std::size_t>(k)] == 0) continue;
    for (double total : sums[static_cast<std::size_t>(k)]) {
      if (std::abs(total - 1.0) > kSimplexTolerance) {
        throw InvalidDecision(std::string("fractions at ") + server_name(static_cast<Server>(k)) +
                              " do not sum to 1");
      }
    }
  }
}

namespace {

double path_gain(double intercept_db, double distance_m) {
  const double d = std::max(distance_m, kMinDistance);
  const double loss_db = intercept_db - 35.0 * std::log10(d);
  return std::pow(10.0, loss_db / 10.0);
}

Vec3 ground(const VehicleState& v) { return {v.position.x, v.position.y, 0.0}; }

}  // namespace

double gain_to_menb(double distance_m) { return path_gain(-30.0, distance_m); }

double gain_to_uav(double distance_m) { return path_gain(-40.0, distance_m); }

double rate_menb(double spectrum_frac, double gain, const ServerCapacities& caps, const RadioParams& radio) {
  const double snr = radio.tx_power * gain / radio.noise_power;
  return caps.menb_spectrum * spectrum_frac * std::log2(1.0 + snr);
}

double rate_uav(double spectrum_frac, double own_gain, double interferer_gain, const ServerCapacities& caps,
                const RadioParams& radio) {
  const double sinr = radio.tx_power * own_gain / (radio.tx_power * interferer_gain + radio.noise_power);
  return caps.uav_spectrum * spectrum_frac * std::log2(1.0 + sinr);
}

double task_delay(const TaskRequest& task, double rate, double server_compute, double compute_frac) {
  const double processing = server_compute * compute_frac;
  if (!(rate > 0.0) || !(processing > 0.0)) return kInfiniteDelay;
  return task.data_size / rate + task.compute_demand / processing;
}

double EvaluationReport::total_delay() const {
  double total = 0.0;
  for (const auto& v : vehicles) total += v.delay;
  return total;
}

std::vector<double> uplink_rates(const WorldState& world, const AllocationDecision& decision,
                                 const ServerCapacities& caps, const RadioParams& radio) {
  const std::size_t n = world.vehicles.size();
  std::vector<double> rates(n, 0.0);

  // Contiguous spectrum layout per UAV, in vehicle order.
  struct Band {
    std::size_t vehicle;
    double lo;
    double hi;
  };
  std::array<std::vector<Band>, 2> bands;
  std::array<double, 2> cursor{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const Allocation& a = decision.per_vehicle[i];
    if (a.to_menb()) continue;
    const std::size_t u = a.server == Server::uav1 ? 0 : 1;
    bands[u].push_back({i, cursor[u], cursor[u] + a.spectrum});
    cursor[u] += a.spectrum;
  }

  for (std::size_t i = 0; i < n; ++i) {
    const Allocation& a = decision.per_vehicle[i];
    const VehicleState& v = world.vehicles[i];
    if (a.to_menb()) {
      rates[i] = rate_menb(a.spectrum, gain_to_menb(distance(ground(v), world.menb_position)), caps, radio);
    }
  }

  for (std::size_t u = 0; u < 2; ++u) {
    const Vec3& uav_pos = world.uavs[u].position;
    const auto& other = bands[1 - u];
    for (const Band& band : bands[u]) {
      const double own = gain_to_uav(distance(ground(world.vehicles[band.vehicle]), uav_pos));
      double covered = 0.0;
      double rate = 0.0;
      for (const Band& o : other) {
        const double overlap = std::min(band.hi, o.hi) - std::max(band.lo, o.lo);
        if (overlap <= 0.0) continue;
        const double interferer = gain_to_uav(distance(ground(world.vehicles[o.vehicle]), uav_pos));
        rate += rate_uav(overlap, own, interferer, caps, radio);
        covered += overlap;
      }
      const double clean = band.hi - band.lo - covered;
      if (clean > 0.0) rate += rate_uav(clean, own, 0.0, caps, radio);
      rates[band.vehicle] = rate;
    }
  }
  return rates;
}

EvaluationReport evaluate(const WorldState& world, const AllocationDecision& decision, const ServerCapacities& caps,
                          const RadioParams& radio, double uav_range) {
  check_decision(world, decision, uav_range);
  const std::vector<double> rates = uplink_rates(world, decision, caps, radio);

  EvaluationReport report;
  report.vehicles.resize(world.vehicles.size());
  int delay_met = 0;
  for (std::size_t i = 0; i < world.vehicles.size(); ++i) {
    const Allocation& a = decision.per_vehicle[i];
    const TaskRequest& task = world.vehicles[i].task;
    VehicleOutcome& out = report.vehicles[i];
    const double compute = a.to_menb() ? caps.menb_compute : caps.uav_compute;
    const double cache = a.to_menb() ? caps.menb_cache : caps.uav_cache;
    out.rate = rates[i];
    out.delay = task_delay(task, rates[i], compute, a.compute);
    out.allocated_cache = cache * a.cache;
    // Step function is 1 at zero.
    out.delay_ok = task.deadline - out.delay >= 0.0;
    out.cache_ok = out.allocated_cache - task.data_size >= 0.0;
    out.qos_ok = out.delay_ok && out.cache_ok;
    delay_met += out.delay_ok ? 1 : 0;
    report.objective += out.qos_ok ? 1 : 0;
  }
  if (!world.vehicles.empty()) {
    const double n = static_cast<double>(world.vehicles.size());
    report.delay_ratio = delay_met / n;
    report.qos_ratio = report.objective / n;
  }
  return report;
}

std::string report_csv_header() { return "vehicles,objective,delay_ratio,qos_ratio,total_delay"; }

std::string report_csv_row(const EvaluationReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << report.vehicles.size() << ',' << report.objective << ',' << report.delay_ratio << ',' << report.qos_ratio
     << ',' << report.total_delay();
  return os.str();
}

}  // namespace uavmec
