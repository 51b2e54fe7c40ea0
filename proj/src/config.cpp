#include "uavmec/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace uavmec {

void RunConfig::apply_seed(std::uint64_t new_seed) {
  seed = new_seed;
  scenario.rng_seed = new_seed;
  agent.seed = new_seed ^ 0x9E3779B97F4A7C15ULL;
}

void RunConfig::validate() const {
  scenario.validate();
  capacities().validate();
  if (!(capacity_scale > 0.0)) throw ConfigError("capacity_scale", "must be positive");
  radio.validate();
  env.validate();
  agent.validate();
  if (run.episodes < 0) throw ConfigError("episodes", "must be non-negative");
  if (run.checkpoint_every < 0) throw ConfigError("checkpoint_every", "must be non-negative");
  if (run.eval_trials < 0) throw ConfigError("eval_trials", "must be non-negative");
  for (double m : run.sweep_multipliers) {
    if (!(m > 0.0)) throw ConfigError("sweep_multipliers", "multipliers must be positive");
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError(key, "expected a number, got '" + text + "'");
  return v;
}

std::int64_t parse_int(const std::string& key, const std::string& text) {
  std::int64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError(key, "expected an integer, got '" + text + "'");
  return v;
}

std::uint64_t parse_uint(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError(key, "expected an unsigned integer, got '" + text + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

template <typename Int>
std::string fmt_int(Int v) {
  return std::to_string(v);
}

struct Field {
  std::string key;
  std::function<void(RunConfig&, const std::string&)> parse;
  std::function<std::string(const RunConfig&)> format;
};

Field real(std::string key, double RunConfig::*member) {
  return {key, [member, key](RunConfig& c, const std::string& v) { c.*member = parse_double(key, v); },
          [member](const RunConfig& c) { return fmt(c.*member); }};
}

// Accessors for nested fields.
template <typename Get>
Field real_at(std::string key, Get get) {
  return {key, [get, key](RunConfig& c, const std::string& v) { get(c) = parse_double(key, v); },
          [get](const RunConfig& c) { return fmt(get(const_cast<RunConfig&>(c))); }};
}

template <typename Get>
Field int_at(std::string key, Get get) {
  return {key,
          [get, key](RunConfig& c, const std::string& v) {
            using T = std::remove_reference_t<decltype(get(c))>;
            const std::int64_t parsed = parse_int(key, v);
            if (parsed < 0 && std::is_unsigned_v<T>) throw ConfigError(key, "must be non-negative");
            get(c) = static_cast<T>(parsed);
          },
          [get](const RunConfig& c) { return fmt_int(get(const_cast<RunConfig&>(c))); }};
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out;
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back({"seed", [](RunConfig& c, const std::string& v) { c.apply_seed(parse_uint("seed", v)); },
                 [](const RunConfig& c) { return fmt_int(c.seed); }});
    f.push_back(real_at("road_length", [](RunConfig& c) -> double& { return c.scenario.road_length; }));
    f.push_back(real_at("road_width", [](RunConfig& c) -> double& { return c.scenario.road_width; }));
    f.push_back(real_at("menb_x", [](RunConfig& c) -> double& { return c.scenario.menb_position.x; }));
    f.push_back(real_at("menb_y", [](RunConfig& c) -> double& { return c.scenario.menb_position.y; }));
    f.push_back(real_at("menb_height", [](RunConfig& c) -> double& { return c.scenario.menb_position.z; }));
    f.push_back(real_at("uav_altitude", [](RunConfig& c) -> double& { return c.scenario.uav_altitude; }));
    f.push_back(real_at("uav_speed", [](RunConfig& c) -> double& { return c.scenario.uav_speed; }));
    f.push_back(real_at("uav_min_separation", [](RunConfig& c) -> double& { return c.scenario.uav_min_separation; }));
    f.push_back(real_at("menb_range", [](RunConfig& c) -> double& { return c.scenario.menb_range; }));
    f.push_back(real_at("uav_range", [](RunConfig& c) -> double& { return c.scenario.uav_range; }));
    f.push_back(int_at("max_vehicles", [](RunConfig& c) -> int& { return c.scenario.max_vehicles; }));
    f.push_back(real_at("vehicle_speed_min", [](RunConfig& c) -> double& { return c.scenario.vehicle_speed.min; }));
    f.push_back(real_at("vehicle_speed_max", [](RunConfig& c) -> double& { return c.scenario.vehicle_speed.max; }));
    f.push_back(real_at("task_compute_min", [](RunConfig& c) -> double& { return c.scenario.task_compute.min; }));
    f.push_back(real_at("task_compute_max", [](RunConfig& c) -> double& { return c.scenario.task_compute.max; }));
    f.push_back(real_at("task_data_min", [](RunConfig& c) -> double& { return c.scenario.task_data.min; }));
    f.push_back(real_at("task_data_max", [](RunConfig& c) -> double& { return c.scenario.task_data.max; }));
    f.push_back(real_at("task_deadline_min", [](RunConfig& c) -> double& { return c.scenario.task_deadline.min; }));
    f.push_back(real_at("task_deadline_max", [](RunConfig& c) -> double& { return c.scenario.task_deadline.max; }));
    f.push_back(real_at("step_duration", [](RunConfig& c) -> double& { return c.scenario.step_duration; }));
    f.push_back(real_at("menb_spectrum", [](RunConfig& c) -> double& { return c.base_capacities.menb_spectrum; }));
    f.push_back(real_at("uav_spectrum", [](RunConfig& c) -> double& { return c.base_capacities.uav_spectrum; }));
    f.push_back(real_at("menb_compute", [](RunConfig& c) -> double& { return c.base_capacities.menb_compute; }));
    f.push_back(real_at("uav_compute", [](RunConfig& c) -> double& { return c.base_capacities.uav_compute; }));
    f.push_back(real_at("menb_cache", [](RunConfig& c) -> double& { return c.base_capacities.menb_cache; }));
    f.push_back(real_at("uav_cache", [](RunConfig& c) -> double& { return c.base_capacities.uav_cache; }));
    f.push_back(real("capacity_scale", &RunConfig::capacity_scale));
    f.push_back(real_at("tx_power", [](RunConfig& c) -> double& { return c.radio.tx_power; }));
    f.push_back({"noise_power_dbm",
                 [](RunConfig& c, const std::string& v) {
                   c.noise_power_dbm = parse_double("noise_power_dbm", v);
                   c.radio.noise_power = RadioParams::dbm_to_watts(c.noise_power_dbm);
                 },
                 [](const RunConfig& c) { return fmt(c.noise_power_dbm); }});
    f.push_back(real_at("reward_clip", [](RunConfig& c) -> double& { return c.env.reward_clip; }));
    f.push_back(int_at("episode_steps", [](RunConfig& c) -> int& { return c.env.episode_steps; }));
    f.push_back(real_at("logit_scale", [](RunConfig& c) -> double& { return c.env.logit_scale; }));
    f.push_back(real_at("actor_lr", [](RunConfig& c) -> double& { return c.agent.actor_lr; }));
    f.push_back(real_at("critic_lr", [](RunConfig& c) -> double& { return c.agent.critic_lr; }));
    f.push_back(real_at("discount", [](RunConfig& c) -> double& { return c.agent.discount; }));
    f.push_back(real_at("actor_soft_rate", [](RunConfig& c) -> double& { return c.agent.actor_soft_rate; }));
    f.push_back(real_at("critic_soft_rate", [](RunConfig& c) -> double& { return c.agent.critic_soft_rate; }));
    f.push_back(int_at("buffer_size", [](RunConfig& c) -> std::size_t& { return c.agent.buffer_size; }));
    f.push_back(int_at("batch_size", [](RunConfig& c) -> std::size_t& { return c.agent.batch_size; }));
    f.push_back({"hidden_layers",
                 [](RunConfig& c, const std::string& v) {
                   c.agent.hidden_layers.clear();
                   if (trim(v).empty()) return;
                   for (const auto& item : split_list(v)) {
                     c.agent.hidden_layers.push_back(static_cast<int>(parse_int("hidden_layers", item)));
                   }
                 },
                 [](const RunConfig& c) {
                   std::vector<std::string> items;
                   for (int h : c.agent.hidden_layers) items.push_back(std::to_string(h));
                   return join(items);
                 }});
    f.push_back(real_at("noise_initial", [](RunConfig& c) -> double& { return c.agent.noise_initial; }));
    f.push_back(real_at("noise_final", [](RunConfig& c) -> double& { return c.agent.noise_final; }));
    f.push_back(int_at("noise_decay_steps", [](RunConfig& c) -> std::int64_t& { return c.agent.noise_decay_steps; }));
    f.push_back(real_at("grad_clip_norm", [](RunConfig& c) -> double& { return c.agent.grad_clip_norm; }));
    f.push_back(int_at("episodes", [](RunConfig& c) -> int& { return c.run.episodes; }));
    f.push_back(int_at("checkpoint_every", [](RunConfig& c) -> int& { return c.run.checkpoint_every; }));
    f.push_back(int_at("eval_trials", [](RunConfig& c) -> int& { return c.run.eval_trials; }));
    f.push_back({"sweep_multipliers",
                 [](RunConfig& c, const std::string& v) {
                   c.run.sweep_multipliers.clear();
                   for (const auto& item : split_list(v)) {
                     c.run.sweep_multipliers.push_back(parse_double("sweep_multipliers", item));
                   }
                 },
                 [](const RunConfig& c) {
                   std::vector<std::string> items;
                   for (double m : c.run.sweep_multipliers) items.push_back(fmt(m));
                   return join(items);
                 }});
    return f;
  }();
  return table;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& f : fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw ConfigError("", "line " + std::to_string(line_no) + ": empty key");
    if (!out.emplace(key, trim(t.substr(eq + 1))).second) throw ConfigError(key, "duplicate key");
  }
  return out;
}

RunConfig run_config_from(const std::map<std::string, std::string>& values) {
  std::set<std::string> known;
  for (const auto& f : fields()) known.insert(f.key);
  for (const auto& [key, value] : values) {
    if (!known.count(key)) throw ConfigError(key, "unknown key");
  }
  RunConfig config;
  for (const auto& f : fields()) {
    const auto it = values.find(f.key);
    if (it == values.end()) throw ConfigError(f.key, "missing required key");
    f.parse(config, it->second);
  }
  try {
    config.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    // Component validators prefix their messages with the offending key.
    const std::string what = e.what();
    const auto colon = what.find(':');
    throw ConfigError(colon == std::string::npos ? "" : what.substr(0, colon),
                      colon == std::string::npos ? what : trim(what.substr(colon + 1)));
  }
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("", "cannot read config file " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return run_config_from(parse_key_values(ss.str()));
}

std::string to_config_text(const RunConfig& config) {
  std::string out;
  for (const auto& f : fields()) out += f.key + " = " + f.format(config) + "\n";
  return out;
}

}  // namespace uavmec
