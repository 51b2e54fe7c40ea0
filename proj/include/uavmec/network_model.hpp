#pragma once

#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavmec/scenario.hpp"

namespace uavmec {

/// Spectrum (Hz), compute (cycles/s) and cache (bits) available at the MeNB
/// and at each UAV. Both UAVs carry identical resources.
struct ServerCapacities {
  double menb_spectrum = 10e6;
  double uav_spectrum = 2e6;
  double menb_compute = 250e9;
  double uav_compute = 30e9;
  double menb_cache = 50e3;
  double uav_cache = 6e3;

  ServerCapacities scaled(double factor) const;
  void validate() const;
};

struct RadioParams {
  double tx_power = 1.0;                     // W
  double noise_power = 3.9810717055349693e-14;  // W, -104 dBm

  static double dbm_to_watts(double dbm);
  void validate() const;
};

enum class Server { menb = 0, uav1 = 1, uav2 = 2 };

inline constexpr int kServerCount = 3;
inline constexpr double kMinDistance = 1.0;
inline constexpr double kInfiniteDelay = std::numeric_limits<double>::infinity();
/// Allowed deviation of a per-server fraction sum from 1.
inline constexpr double kSimplexTolerance = 1e-9;

const char* server_name(Server s);

/// Resources granted to one vehicle by the server it is associated with.
/// Fractions refer to that server's totals; every other server implicitly
/// grants this vehicle zero.
struct Allocation {
  Server server = Server::menb;
  double spectrum = 0.0;
  double compute = 0.0;
  double cache = 0.0;

  bool to_menb() const { return server == Server::menb; }
};

/// One Allocation per vehicle, indexed like WorldState::vehicles.
struct AllocationDecision {
  std::vector<Allocation> per_vehicle;
};

class InvalidDecision : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws InvalidDecision if the decision breaks association or simplex
/// constraints for this world.
void check_decision(const WorldState& world, const AllocationDecision& decision, double uav_range);

// Channel gains from the deterministic path-loss model; distances below
// kMinDistance are clamped.
double gain_to_menb(double distance_m);
double gain_to_uav(double distance_m);

double rate_menb(double spectrum_frac, double gain, const ServerCapacities& caps, const RadioParams& radio);
double rate_uav(double spectrum_frac, double own_gain, double interferer_gain, const ServerCapacities& caps,
                const RadioParams& radio);

/// End-to-end delay: upload time plus processing time. Returns kInfiniteDelay
/// when the rate or the granted compute is zero.
double task_delay(const TaskRequest& task, double rate, double server_compute, double compute_frac);

struct VehicleOutcome {
  double rate = 0.0;
  double delay = kInfiniteDelay;
  double allocated_cache = 0.0;
  bool delay_ok = false;
  bool cache_ok = false;
  bool qos_ok = false;
};

struct EvaluationReport {
  std::vector<VehicleOutcome> vehicles;
  int objective = 0;
  double delay_ratio = 0.0;
  double qos_ratio = 0.0;

  double total_delay() const;
};

/// Uplink rates for every vehicle under `decision`.
///
/// The two UAVs reuse the same band. Each UAV lays out the spectrum fractions
/// of its vehicles contiguously in vehicle order starting at 0; a vehicle on
/// UAV j is interfered, over each overlapping sub-band, by the vehicle that
/// occupies the same sub-band at the other UAV. The rate is the sum over
/// sub-bands of the single-interferer rate.
std::vector<double> uplink_rates(const WorldState& world, const AllocationDecision& decision,
                                 const ServerCapacities& caps, const RadioParams& radio);

/// Validates the decision and scores it: an offloaded task counts toward the
/// objective only if it meets its deadline and receives enough cache.
EvaluationReport evaluate(const WorldState& world, const AllocationDecision& decision, const ServerCapacities& caps,
                          const RadioParams& radio, double uav_range);

/// Flat comma-separated record for the metrics log.
std::string report_csv_header();
std::string report_csv_row(const EvaluationReport& report);

}  // namespace uavmec
