#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavmec/ddpg_agent.hpp"
#include "uavmec/network_model.hpp"
#include "uavmec/rl_env.hpp"
#include "uavmec/scenario.hpp"

namespace uavmec {

struct RunParams {
  int episodes = 500;
  int checkpoint_every = 100;
  int eval_trials = 1000;
  std::vector<double> sweep_multipliers{0.5, 1.0, 2.0};
};

/// Everything a run needs. `base_capacities` holds the nominal values;
/// capacities() applies capacity_scale.
struct RunConfig {
  std::uint64_t seed = 1;
  ScenarioConfig scenario;
  ServerCapacities base_capacities;
  double capacity_scale = 1.0;
  RadioParams radio;
  double noise_power_dbm = -104.0;
  EnvConfig env;
  AgentConfig agent;
  RunParams run;

  ServerCapacities capacities() const { return base_capacities.scaled(capacity_scale); }
  /// Re-derives the scenario and agent seeds from `seed`.
  void apply_seed(std::uint64_t new_seed);
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Parses flat `key = value` text. Blank lines and lines starting with '#'
/// are ignored; duplicate keys are an error.
std::map<std::string, std::string> parse_key_values(const std::string& text);

/// Builds a RunConfig from key/value pairs. Every schema key must be present
/// and no unknown key is accepted.
RunConfig run_config_from(const std::map<std::string, std::string>& values);
RunConfig load_run_config(const std::filesystem::path& path);

/// Serialises to the same format, with exact round-trip of every value.
std::string to_config_text(const RunConfig& config);

/// Schema keys in canonical order.
const std::vector<std::string>& config_keys();

}  // namespace uavmec
