#include <doctest.h>

#include <filesystem>

#include "uavmec/config.hpp"

using namespace uavmec;

namespace {

const std::filesystem::path kDesk = std::filesystem::path(UAVMEC_CONFIG_DIR) / "desk.cfg";

std::map<std::string, std::string> desk_values() {
  auto values = parse_key_values(to_config_text(load_run_config(kDesk)));
  return values;
}

std::string key_of(const std::map<std::string, std::string>& values) {
  try {
    run_config_from(values);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("parse_key_values") {
  const auto kv = parse_key_values("# comment\n\n a = 1 \nb=two words\n  # indented comment\n");
  CHECK(kv.size() == 2);
  CHECK(kv.at("a") == "1");
  CHECK(kv.at("b") == "two words");
  CHECK_THROWS_WITH_AS(parse_key_values("a = 1\na = 2\n"), doctest::Contains("duplicate"), ConfigError);
  CHECK_THROWS_AS(parse_key_values("just text\n"), ConfigError);
  CHECK_THROWS_AS(parse_key_values(" = 3\n"), ConfigError);
}

TEST_CASE("desk config loads with the documented values") {
  const RunConfig c = load_run_config(kDesk);
  CHECK(c.seed == 1);
  CHECK(c.scenario.max_vehicles == 4);
  CHECK(c.env.episode_steps == 100);
  CHECK(c.capacity_scale == 0.1);
  CHECK(c.capacities().menb_spectrum == doctest::Approx(1e6));
  CHECK(c.capacities().uav_cache == doctest::Approx(600.0));
  CHECK(c.agent.actor_lr == 0.0005);
  CHECK(c.agent.critic_lr == 0.005);
  CHECK(c.agent.discount == 0.9);
  CHECK(c.agent.buffer_size == 10000);
  CHECK(c.agent.batch_size == 32);
  CHECK(c.agent.hidden_layers == std::vector<int>{128, 128});
  CHECK(c.radio.noise_power == doctest::Approx(RadioParams::dbm_to_watts(-104.0)).epsilon(1e-15));
  CHECK(c.run.sweep_multipliers == std::vector<double>{0.5, 1.0, 2.0});
  CHECK(config_keys().size() == desk_values().size());
}

TEST_CASE("text round trip is exact") {
  RunConfig c = load_run_config(kDesk);
  c.scenario.step_duration = 0.1 + 1e-15;
  c.agent.hidden_layers = {7, 3, 5};
  c.run.sweep_multipliers = {0.25, 1.0 / 3.0};
  c.apply_seed(123456789012345ULL);
  const std::string text = to_config_text(c);
  const RunConfig back = run_config_from(parse_key_values(text));
  CHECK(to_config_text(back) == text);
  CHECK(back.scenario.step_duration == c.scenario.step_duration);
  CHECK(back.run.sweep_multipliers[1] == 1.0 / 3.0);
  CHECK(back.agent.seed == c.agent.seed);
}

TEST_CASE("every key is required") {
  for (const std::string& key : config_keys()) {
    auto values = desk_values();
    values.erase(key);
    CAPTURE(key);
    CHECK(key_of(values) == key);
  }
}

TEST_CASE("bad values name their key") {
  auto values = desk_values();
  values["surprise"] = "1";
  CHECK(key_of(values) == "surprise");

  values = desk_values();
  values["uav_range"] = "hundred";
  CHECK(key_of(values) == "uav_range");

  values = desk_values();
  values["uav_range"] = "900";
  CHECK(key_of(values) == "uav_range");

  values = desk_values();
  values["discount"] = "1.5";
  CHECK(key_of(values) == "discount");

  values = desk_values();
  values["max_vehicles"] = "2.5";
  CHECK(key_of(values) == "max_vehicles");

  values = desk_values();
  values["sweep_multipliers"] = "1, -2";
  CHECK(key_of(values) == "sweep_multipliers");

  values = desk_values();
  values["menb_cache"] = "0";
  CHECK(key_of(values) == "menb_cache");

  CHECK_THROWS_AS(load_run_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("seed derivation") {
  RunConfig c;
  c.apply_seed(5);
  CHECK(c.seed == 5);
  CHECK(c.scenario.rng_seed == 5);
  CHECK(c.agent.seed == (5ULL ^ 0x9E3779B97F4A7C15ULL));
  RunConfig d;
  d.apply_seed(6);
  CHECK(d.agent.seed != c.agent.seed);
}
