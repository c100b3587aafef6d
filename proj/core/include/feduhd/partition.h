#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "feduhd/dataset.h"

namespace feduhd {

struct PartitionSpec {
  double alpha = 0.1;
  std::size_t num_clients = 10;
  std::uint64_t seed = 0;
};

struct Partition {
  std::vector<std::vector<std::size_t>> shards;

  // Per-shard class counts: one row per shard, one column per class.
  [[nodiscard]] std::vector<std::vector<std::size_t>> class_histograms(
      const LabeledDataset& dataset) const;
};

// Non-iid label-skew split. For each class, client shares are drawn from
// Dirichlet(alpha * 1_I), the (shuffled) class indices are cut into runs of
// the largest-remainder rounded sizes, and run i goes to client i.
//
// Throws std::invalid_argument for alpha <= 0, zero clients or an empty
// dataset, and DataError when every class has fewer samples than clients.
[[nodiscard]] Partition dirichlet_partition(const LabeledDataset& dataset,
                                            const PartitionSpec& spec);

// Largest-remainder integerisation of shares * total. Remainder ties go to
// the lower index. Shares must be non-negative and sum to ~1.
[[nodiscard]] std::vector<std::size_t> largest_remainder(
    const std::vector<double>& shares, std::size_t total);

// Disjoint, in range, and covering [0, n).
[[nodiscard]] bool is_partition_of(const Partition& partition, std::size_t n);

// JSON manifest holding spec, shard index lists and per-shard class
// histograms. read_manifest restores spec and shards exactly.
[[nodiscard]] std::string manifest_json(const PartitionSpec& spec,
                                        const Partition& partition,
                                        const LabeledDataset& dataset);
void write_manifest(const std::filesystem::path& path, const PartitionSpec& spec,
                    const Partition& partition, const LabeledDataset& dataset);
[[nodiscard]] std::pair<PartitionSpec, Partition> read_manifest(
    const std::filesystem::path& path);

}  // namespace feduhd
