// Command-line front end: train, evaluate and plotdata subcommands.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "uavmec/checkpoint.hpp"
#include "uavmec/config.hpp"
#include "uavmec/harness.hpp"

namespace fs = std::filesystem;
using namespace uavmec;

namespace {

RunConfig load_with_overrides(const std::string& path, const std::optional<std::uint64_t>& seed,
                              const std::optional<int>& episodes) {
  RunConfig config = load_run_config(path);
  if (seed) config.apply_seed(*seed);
  if (episodes) config.run.episodes = *episodes;
  config.validate();
  return config;
}

std::vector<SweepAxis> axes_from(const std::string& sweep) {
  if (sweep == "all") return {SweepAxis::spectrum, SweepAxis::compute, SweepAxis::cache};
  return {parse_axis(sweep)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint vehicle association and resource allocation with DDPG for MEC/UAV vehicular networks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string model_path;
  std::string sweep = "all";
  std::optional<std::uint64_t> seed;
  std::optional<int> episodes;
  std::optional<int> trials;
  int oracle_instances = 0;
  int oracle_grid = 3;
  bool quiet = false;

  CLI::App* train_cmd = app.add_subcommand("train", "Train the agent and write a run directory");
  train_cmd->add_option("--config", config_path, "Key=value config file")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--out", out_dir, "Run directory")->required();
  train_cmd->add_option("--seed", seed, "Override the config seed");
  train_cmd->add_option("--episodes", episodes, "Override the number of episodes")->check(CLI::NonNegativeNumber);
  train_cmd->add_flag("--quiet", quiet, "No progress output");

  CLI::App* eval_cmd = app.add_subcommand("evaluate", "Sweep capacities and compare the trained actor with random");
  eval_cmd->add_option("--model", model_path, "Agent parameter file (model.bin)")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--config", config_path, "Key=value config file")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--out", out_dir, "Output directory (default: the model's directory)");
  eval_cmd->add_option("--sweep", sweep, "spectrum, compute, cache or all")
      ->check(CLI::IsMember({"spectrum", "compute", "cache", "all"}));
  eval_cmd->add_option("--trials", trials, "Evaluation steps per sweep point")->check(CLI::NonNegativeNumber);
  eval_cmd->add_option("--seed", seed, "Override the config seed");
  eval_cmd->add_option("--oracle", oracle_instances, "Also compare against the exhaustive oracle on N instances")
      ->check(CLI::NonNegativeNumber);
  eval_cmd->add_option("--grid", oracle_grid, "Oracle grid divisions per resource")->check(CLI::Range(1, 5));

  CLI::App* plot_cmd = app.add_subcommand("plotdata", "Write plot-ready text files for a run directory");
  plot_cmd->add_option("--out,--run", out_dir, "Run directory")->required()->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train_cmd) {
      const RunConfig config = load_with_overrides(config_path, seed, episodes);
      run_training(config, out_dir, quiet ? nullptr : &std::cout);
      std::cout << "wrote " << (fs::path(out_dir) / kRewardLogFile).string() << '\n';
    } else if (*eval_cmd) {
      RunConfig config = load_with_overrides(config_path, seed, std::nullopt);
      const int n_trials = trials.value_or(config.run.eval_trials);
      DdpgAgent agent = make_agent(config);
      load_agent(model_path, agent);
      const fs::path dir = out_dir.empty() ? fs::path(model_path).parent_path() : fs::path(out_dir);
      if (!dir.empty()) fs::create_directories(dir);
      const auto records = run_sweeps(config, agent.actor(), axes_from(sweep), n_trials);
      write_sweeps(dir / kEvaluationFile, records);
      for (const auto& r : records) std::cout << sweep_csv_row(r) << '\n';
      if (oracle_instances > 0) {
        write_oracle_records(dir / kOracleFile,
                             run_oracle_comparison(config, agent.actor(), oracle_instances, oracle_grid));
      }
    } else if (*plot_cmd) {
      for (const auto& p : write_plot_data(out_dir)) std::cout << "wrote " << p.string() << '\n';
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
