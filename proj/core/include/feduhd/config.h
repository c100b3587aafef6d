#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "feduhd/channel.h"
#include "feduhd/metrics.h"

namespace feduhd {

inline constexpr int kConfigSchemaVersion = 1;

enum class DatasetKind { kCsv, kBlobs, kUciHar };

struct DatasetConfig {
  DatasetKind kind = DatasetKind::kBlobs;
  // csv: training file; uci_har: dataset root directory.
  std::string path;
  // csv only; when empty the training file is split with test_fraction.
  std::string test_path;
  double test_fraction = 0.3;
  // z-score features with training-set statistics.
  bool standardize = false;
  // blobs only.
  std::size_t num_classes = 4;
  std::size_t per_class = 250;
  std::size_t feature_dim = 16;
  double separation = 8.0;
};

struct ChannelConfig {
  ChannelKind kind = ChannelKind::kNoiseless;
  double loss_rate = 0.0;
  double sigma = 0.0;
  LinkScope scope = LinkScope::kBoth;
};

struct SeedConfig {
  std::uint64_t projection = 1;
  std::uint64_t init = 2;
  std::uint64_t partition = 3;
  std::uint64_t channel = 4;
};

struct ExperimentConfig {
  int schema_version = kConfigSchemaVersion;
  DatasetConfig dataset;
  std::size_t hdc_dim = 1000;
  std::size_t num_clusters = 12;
  std::size_t num_clients = 10;
  std::size_t local_epochs = 10;
  std::size_t knn_k = 4;
  std::size_t rounds = 25;
  double dirichlet_alpha = 0.1;
  double participation = 1.0;
  ChannelConfig channel;
  SeedConfig seeds;
  std::string output_dir = "out";
  std::size_t workers = 0;
  AccMapping acc_mapping = AccMapping::kOneToOne;
  // noise-sweep points; the noiseless baseline is always run in addition.
  std::vector<ChannelConfig> sweep;
};

// Parses and validates a JSON config. Missing optional keys take the
// defaults above; unknown keys and out-of-range values throw ConfigError
// naming the offending field.
[[nodiscard]] ExperimentConfig parse_config(std::string_view json_text);
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

// Re-checks every range constraint. Throws ConfigError.
void validate(const ExperimentConfig& config);

// Canonical JSON form; parse_config(to_json(c)) reproduces c.
[[nodiscard]] std::string to_json(const ExperimentConfig& config);

// Builds the channel a config describes.
[[nodiscard]] ChannelModel make_channel(const ChannelConfig& channel,
                                        std::uint64_t seed);

// "noiseless", "packet_loss:0.3", "gaussian:0.5", optionally suffixed with
// "@uplink" or "@downlink". Throws ConfigError.
[[nodiscard]] ChannelConfig parse_channel_spec(std::string_view spec);
[[nodiscard]] std::vector<ChannelConfig> parse_sweep(std::string_view list);

// FEDUHD_SEED_OVERRIDE, if set to an integer, replaces all four seeds.
// Throws ConfigError if the variable is set but not an integer.
[[nodiscard]] std::optional<std::uint64_t> seed_override_from_env();
void apply_seed_override(ExperimentConfig& config, std::uint64_t seed);

}  // namespace feduhd
