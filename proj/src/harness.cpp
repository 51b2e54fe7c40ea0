#include "uavmec/harness.hpp"

#include <charconv>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "uavmec/baselines.hpp"
#include "uavmec/checkpoint.hpp"

namespace uavmec {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  return os;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

std::string reward_log_header() {
  return "episode,reward,mean_critic_loss,mean_actor_objective,noise_scale,updates,clipped_updates";
}

std::string reward_log_row(const EpisodeRecord& r) {
  return std::to_string(r.episode) + ',' + num(r.reward) + ',' + num(r.mean_critic_loss) + ',' +
         num(r.mean_actor_objective) + ',' + num(r.noise_scale) + ',' + std::to_string(r.updates) + ',' +
         std::to_string(r.clipped_updates);
}

Environment make_environment(const RunConfig& config) {
  return Environment(config.scenario, config.capacities(), config.radio, config.env);
}

DdpgAgent make_agent(const RunConfig& config) {
  return DdpgAgent(state_dim(config.scenario.max_vehicles), action_dim(config.scenario.max_vehicles), config.agent);
}

TrainingLog run_training(const RunConfig& config, const fs::path& out_dir, std::ostream* progress) {
  config.validate();
  fs::create_directories(out_dir / kCheckpointDir);
  {
    std::ofstream manifest = open_out(out_dir / kManifestFile);
    manifest << "# uavmec " << kToolVersion << " training run\n";
    manifest << "# checkpoint format 1; reproduce with: uavmec train --config " << kManifestFile << "\n";
    manifest << to_config_text(config);
  }

  Environment env = make_environment(config);
  DdpgAgent agent = make_agent(config);

  std::ofstream log = open_out(out_dir / kRewardLogFile);
  log << reward_log_header() << '\n' << std::flush;

  const int every = config.run.checkpoint_every;
  TrainingLog result = train(agent, env, config.run.episodes, config.env.episode_steps, [&](const EpisodeRecord& r) {
    log << reward_log_row(r) << '\n' << std::flush;
    const int done = r.episode + 1;
    if (every > 0 && done % every == 0) {
      std::ostringstream name;
      name << "episode_" << std::setw(6) << std::setfill('0') << done << ".bin";
      save_agent(out_dir / kCheckpointDir / name.str(), agent);
    }
    if (progress != nullptr && (done % 10 == 0 || done == config.run.episodes)) {
      *progress << "episode " << done << "/" << config.run.episodes << "  reward " << r.reward << "  noise "
                << r.noise_scale << '\n';
    }
  });
  save_agent(out_dir / kModelFile, agent);
  return result;
}

const char* axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::spectrum:
      return "spectrum";
    case SweepAxis::compute:
      return "compute";
    case SweepAxis::cache:
      return "cache";
  }
  return "?";
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "spectrum") return SweepAxis::spectrum;
  if (name == "compute") return SweepAxis::compute;
  if (name == "cache") return SweepAxis::cache;
  throw std::invalid_argument("unknown sweep axis '" + name + "' (expected spectrum, compute or cache)");
}

ServerCapacities scale_axis(const ServerCapacities& caps, SweepAxis axis, double multiplier) {
  ServerCapacities c = caps;
  switch (axis) {
    case SweepAxis::spectrum:
      c.menb_spectrum *= multiplier;
      c.uav_spectrum *= multiplier;
      break;
    case SweepAxis::compute:
      c.menb_compute *= multiplier;
      c.uav_compute *= multiplier;
      break;
    case SweepAxis::cache:
      c.menb_cache *= multiplier;
      c.uav_cache *= multiplier;
      break;
  }
  return c;
}

std::string sweep_csv_header() { return "axis,multiplier,policy,trials,delay_ratio,qos_ratio"; }

std::string sweep_csv_row(const SweepRecord& r) {
  return std::string(axis_name(r.axis)) + ',' + num(r.multiplier) + ',' + r.policy + ',' + std::to_string(r.trials) +
         ',' + num(r.delay_ratio) + ',' + num(r.qos_ratio);
}

PairedScore compare_policies(const RunConfig& config, const ServerCapacities& caps, const Mlp& actor, int trials,
                             std::uint64_t seed) {
  ScenarioConfig scenario = config.scenario;
  scenario.rng_seed = seed;
  Environment env(scenario, caps, config.radio, config.env);
  std::mt19937_64 rng(seed ^ 0xD1B54A32D192ED03ULL);

  PairedScore score;
  for (int t = 0; t < trials; ++t) {
    const Eigen::MatrixXd out = actor.forward(
        Eigen::Map<const Eigen::VectorXd>(env.state().data(), static_cast<Eigen::Index>(env.state().size())));
    const std::vector<double> raw(out.data(), out.data() + out.size());
    const EvaluationReport learned = env.score(decode_action(raw, env.world(), scenario, config.env.logit_scale));
    const EvaluationReport baseline = env.score(random_policy(env.world(), scenario.uav_range, rng));
    score.ddpg.delay_ratio += learned.delay_ratio;
    score.ddpg.qos_ratio += learned.qos_ratio;
    score.random.delay_ratio += baseline.delay_ratio;
    score.random.qos_ratio += baseline.qos_ratio;
    env.skip();
  }
  if (trials > 0) {
    for (PolicyScore* p : {&score.ddpg, &score.random}) {
      p->delay_ratio /= trials;
      p->qos_ratio /= trials;
    }
  }
  return score;
}

std::vector<SweepRecord> run_sweeps(const RunConfig& config, const Mlp& actor, const std::vector<SweepAxis>& axes,
                                    int trials) {
  std::vector<SweepRecord> records;
  if (trials <= 0) return records;
  const std::uint64_t eval_seed = config.seed + 1000003ULL;

  struct Point {
    SweepAxis axis;
    double multiplier;
    std::future<PairedScore> score;
  };
  std::vector<Point> points;
  for (SweepAxis axis : axes) {
    for (double m : config.run.sweep_multipliers) {
      const ServerCapacities caps = scale_axis(config.capacities(), axis, m);
      points.push_back({axis, m, std::async(std::launch::async, [&config, &actor, caps, trials, eval_seed] {
                          return compare_policies(config, caps, actor, trials, eval_seed);
                        })});
    }
  }
  for (Point& p : points) {
    const PairedScore s = p.score.get();
    records.push_back({p.axis, p.multiplier, "ddpg", trials, s.ddpg.delay_ratio, s.ddpg.qos_ratio});
    records.push_back({p.axis, p.multiplier, "random", trials, s.random.delay_ratio, s.random.qos_ratio});
  }
  return records;
}

void write_sweeps(const fs::path& path, const std::vector<SweepRecord>& records) {
  std::ofstream os = open_out(path);
  os << sweep_csv_header() << '\n';
  for (const auto& r : records) os << sweep_csv_row(r) << '\n';
}

std::vector<OracleRecord> run_oracle_comparison(const RunConfig& config, const Mlp& actor, int instances, int grid) {
  ScenarioConfig scenario = config.scenario;
  scenario.rng_seed = config.seed + 2000003ULL;
  Environment env(scenario, config.capacities(), config.radio, config.env);
  std::mt19937_64 rng(scenario.rng_seed);
  std::vector<OracleRecord> out;
  for (int k = 0; k < instances; ++k) {
    const WorldState& world = env.world();
    OracleRecord rec;
    rec.instance = k;
    rec.vehicles = static_cast<int>(world.vehicles.size());
    rec.grid = grid;
    rec.oracle_objective = brute_force(world, env.capacities(), env.radio(), scenario.uav_range, grid).objective;
    const Eigen::MatrixXd a = actor.forward(
        Eigen::Map<const Eigen::VectorXd>(env.state().data(), static_cast<Eigen::Index>(env.state().size())));
    const std::vector<double> raw(a.data(), a.data() + a.size());
    rec.ddpg_objective = env.score(decode_action(raw, world, scenario, config.env.logit_scale)).objective;
    rec.random_objective = env.score(random_policy(world, scenario.uav_range, rng)).objective;
    out.push_back(rec);
    env.skip();
  }
  return out;
}

void write_oracle_records(const fs::path& path, const std::vector<OracleRecord>& records) {
  std::ofstream os = open_out(path);
  os << "instance,vehicles,grid,oracle_objective,ddpg_objective,random_objective\n";
  for (const auto& r : records) {
    os << r.instance << ',' << r.vehicles << ',' << r.grid << ',' << r.oracle_objective << ',' << r.ddpg_objective
       << ',' << r.random_objective << '\n';
  }
}

std::vector<fs::path> write_plot_data(const fs::path& run_dir) {
  std::vector<fs::path> written;
  const fs::path rewards = run_dir / kRewardLogFile;
  const fs::path sweeps = run_dir / kEvaluationFile;
  if (!fs::exists(rewards) && !fs::exists(sweeps)) {
    throw std::runtime_error("no " + std::string(kRewardLogFile) + " or " + kEvaluationFile + " in " +
                             run_dir.string());
  }

  if (fs::exists(rewards)) {
    std::ifstream is(rewards);
    std::string line;
    std::getline(is, line);
    const fs::path out_path = run_dir / kRewardPlotFile;
    std::ofstream os = open_out(out_path);
    os << "episode reward\n";
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      const auto cols = split_csv(line);
      if (cols.size() < 2) throw std::runtime_error("malformed reward log line: " + line);
      os << cols[0] << ' ' << cols[1] << '\n';
    }
    written.push_back(out_path);
  }

  if (fs::exists(sweeps)) {
    std::ifstream is(sweeps);
    std::string line;
    std::getline(is, line);
    // axis -> multiplier text (in file order) -> policy -> (delay, qos)
    std::map<std::string, std::vector<std::pair<std::string, std::map<std::string, std::pair<std::string, std::string>>>>>
        table;
    std::vector<std::string> axis_order;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      const auto cols = split_csv(line);
      if (cols.size() != 6) throw std::runtime_error("malformed evaluation line: " + line);
      auto& rows = table[cols[0]];
      if (rows.empty()) axis_order.push_back(cols[0]);
      if (rows.empty() || rows.back().first != cols[1]) rows.push_back({cols[1], {}});
      rows.back().second[cols[2]] = {cols[4], cols[5]};
    }
    for (const auto& axis : axis_order) {
      const fs::path out_path = run_dir / ("plot_" + axis + ".dat");
      std::ofstream os = open_out(out_path);
      os << "multiplier ddpg_delay ddpg_qos random_delay random_qos\n";
      for (const auto& [mult, policies] : table[axis]) {
        auto get = [&policies](const std::string& p) {
          const auto it = policies.find(p);
          return it == policies.end() ? std::pair<std::string, std::string>{"nan", "nan"} : it->second;
        };
        const auto d = get("ddpg");
        const auto r = get("random");
        os << mult << ' ' << d.first << ' ' << d.second << ' ' << r.first << ' ' << r.second << '\n';
      }
      written.push_back(out_path);
    }
  }
  return written;
}

}  // namespace uavmec
