#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "feduhd/channel.h"
#include "feduhd/cluster_model.h"
#include "feduhd/config.h"
#include "feduhd/dataset.h"
#include "feduhd/metrics.h"
#include "feduhd/partition.h"

namespace feduhd {

struct PreparedData {
  LabeledDataset train;
  LabeledDataset test;
};

// Loads or generates the configured dataset and produces the train/test
// pair, standardised if requested. Throws DataError.
[[nodiscard]] PreparedData prepare_data(const ExperimentConfig& config);

[[nodiscard]] PartitionSpec partition_spec(const ExperimentConfig& config);

struct RunResult {
  PartitionSpec spec;
  Partition partition;
  std::vector<RoundRecord> records;
  ClusterModel final_model;

  [[nodiscard]] double final_acc() const {
    return records.empty() ? 0.0 : records.back().acc;
  }
};

// Partition -> encode -> federated rounds -> per-round evaluation.
[[nodiscard]] RunResult run_experiment(const ExperimentConfig& config,
                                       const PreparedData& data,
                                       const ChannelModel& channel);
[[nodiscard]] RunResult run_experiment(const ExperimentConfig& config,
                                       const PreparedData& data);

// JSON run report: final metrics, communication totals and the config echo.
[[nodiscard]] std::string summary_json(const ExperimentConfig& config,
                                       const RunResult& result);

// Exit codes shared by every command.
enum ExitCode : int {
  kExitOk = 0,
  kExitRuntime = 1,
  kExitConfig = 2,
  kExitData = 3,
};

struct CommandOptions {
  std::filesystem::path config_path;
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::size_t> workers;
  // noise-sweep only; overrides the config's "sweep" list.
  std::optional<std::string> sweep;
};

// Each command loads the config, applies CLI and environment overrides and
// writes its outputs under the output directory. Errors are reported on
// `err` and mapped to ExitCode.
int cmd_run(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_partition(const CommandOptions& options, std::ostream& out,
                  std::ostream& err);
int cmd_noise_sweep(const CommandOptions& options, std::ostream& out,
                    std::ostream& err);

}  // namespace feduhd
