#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "uavmec/config.hpp"
#include "uavmec/ddpg_agent.hpp"

namespace uavmec {

inline constexpr const char* kToolVersion = "1.0.0";

// Files inside a run directory.
inline constexpr const char* kManifestFile = "manifest.cfg";
inline constexpr const char* kRewardLogFile = "rewards.csv";
inline constexpr const char* kModelFile = "model.bin";
inline constexpr const char* kCheckpointDir = "checkpoints";
inline constexpr const char* kEvaluationFile = "evaluation.csv";
inline constexpr const char* kOracleFile = "oracle.csv";
inline constexpr const char* kRewardPlotFile = "plot_rewards.dat";

std::string reward_log_header();
std::string reward_log_row(const EpisodeRecord& record);

/// Builds the environment and agent described by `config`.
Environment make_environment(const RunConfig& config);
DdpgAgent make_agent(const RunConfig& config);

/// Trains for config.run.episodes episodes. Writes the manifest first, then
/// appends one reward-log record per episode (flushed immediately), drops a
/// checkpoint every config.run.checkpoint_every episodes and the final model
/// at the end.
TrainingLog run_training(const RunConfig& config, const std::filesystem::path& out_dir,
                         std::ostream* progress = nullptr);

enum class SweepAxis { spectrum, compute, cache };

const char* axis_name(SweepAxis axis);
SweepAxis parse_axis(const std::string& name);
/// Scales both the MeNB and the UAV field of one resource.
ServerCapacities scale_axis(const ServerCapacities& caps, SweepAxis axis, double multiplier);

struct SweepRecord {
  SweepAxis axis = SweepAxis::spectrum;
  double multiplier = 1.0;
  std::string policy;
  int trials = 0;
  double delay_ratio = 0.0;
  double qos_ratio = 0.0;
};

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRecord& record);

struct PolicyScore {
  double delay_ratio = 0.0;
  double qos_ratio = 0.0;
};

struct PairedScore {
  PolicyScore ddpg;
  PolicyScore random;
};

/// Mean satisfaction ratios of the noise-free actor and of the random scheme
/// over `trials` consecutive world steps, both scored on the same worlds.
PairedScore compare_policies(const RunConfig& config, const ServerCapacities& caps, const Mlp& actor, int trials,
                             std::uint64_t seed);

/// Runs every (axis, multiplier) point, in parallel, and returns records in
/// axis, multiplier, policy order (ddpg before random).
std::vector<SweepRecord> run_sweeps(const RunConfig& config, const Mlp& actor, const std::vector<SweepAxis>& axes,
                                    int trials);

void write_sweeps(const std::filesystem::path& path, const std::vector<SweepRecord>& records);

struct OracleRecord {
  int instance = 0;
  int vehicles = 0;
  int grid = 0;
  int oracle_objective = 0;
  int ddpg_objective = 0;
  int random_objective = 0;
};

/// Scores the actor and the random scheme against the exhaustive oracle on
/// `instances` consecutive worlds.
std::vector<OracleRecord> run_oracle_comparison(const RunConfig& config, const Mlp& actor, int instances, int grid);
void write_oracle_records(const std::filesystem::path& path, const std::vector<OracleRecord>& records);

/// Turns a run directory's metrics into whitespace-separated plot files:
/// plot_rewards.dat from the reward log and plot_<axis>.dat for each swept
/// axis. Returns the files written; throws if neither input exists.
std::vector<std::filesystem::path> write_plot_data(const std::filesystem::path& run_dir);

}  // namespace uavmec
