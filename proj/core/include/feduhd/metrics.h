#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "feduhd/assignment.h"

namespace feduhd {

// Rows are predicted cluster ids, columns ground-truth classes, both in
// ascending order of the distinct values seen.
struct ConfusionMatrix {
  std::vector<std::int64_t> row_ids;
  std::vector<std::int64_t> col_ids;
  ScoreMatrix counts;
  std::size_t total = 0;
};

// Throws std::invalid_argument on length mismatch or empty input.
[[nodiscard]] ConfusionMatrix confusion_matrix(
    std::span<const std::int32_t> predicted, std::span<const std::int32_t> truth);

enum class AccMapping {
  // Injective cluster -> class mapping; surplus clusters count as errors.
  kOneToOne,
  // Every cluster votes for its majority class.
  kManyToOne,
};

// Unsupervised clustering accuracy: the best fraction of correctly labelled
// samples over all admissible cluster -> class mappings. The default
// one-to-one form solves an optimal assignment on the confusion matrix.
//
// Throws std::invalid_argument on length mismatch or empty input.
[[nodiscard]] double acc(std::span<const std::int32_t> predicted,
                         std::span<const std::int32_t> truth,
                         AccMapping mapping = AccMapping::kOneToOne);

struct CommCost {
  std::uint64_t values_down = 0;
  std::uint64_t values_up = 0;

  [[nodiscard]] std::uint64_t values() const { return values_down + values_up; }
  // 32-bit wire representation.
  [[nodiscard]] std::uint64_t bytes() const { return values() * 4; }
};

inline constexpr std::uint64_t kBytesPerValue = 4;

// Values moved in one round: every client downloads the whole global model
// (num_clients * global_clusters * dim) and uploads dim centroid values plus
// one size per active cluster.
[[nodiscard]] CommCost round_comm_cost(std::span<const std::size_t> active_per_client,
                                       std::size_t global_clusters,
                                       std::size_t dim, std::size_t num_clients);

// round_comm_cost repeated over `rounds` rounds with the same active counts.
[[nodiscard]] CommCost comm_cost(std::span<const std::size_t> active_per_client,
                                 std::size_t global_clusters, std::size_t dim,
                                 std::size_t rounds, std::size_t num_clients);

struct RoundRecord {
  std::uint64_t round = 0;
  double acc = 0.0;
  std::uint64_t values_up = 0;
  std::uint64_t values_down = 0;
  std::uint64_t removed_total = 0;
  std::vector<std::size_t> active_clusters_per_client;  // participating clients
};

inline constexpr const char* kRoundsCsvHeader =
    "round,acc,values_up,values_down,removed_total,active_min,active_max";

void write_rounds_csv(std::ostream& out, std::span<const RoundRecord> records);

}  // namespace feduhd
