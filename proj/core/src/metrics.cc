#include "feduhd/metrics.h"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace feduhd {
namespace {

std::vector<std::int64_t> distinct_sorted(std::span<const std::int32_t> values) {
  std::vector<std::int64_t> out(values.begin(), values.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t index_of(const std::vector<std::int64_t>& sorted, std::int64_t value) {
  return static_cast<std::size_t>(
      std::lower_bound(sorted.begin(), sorted.end(), value) - sorted.begin());
}

}  // namespace

ConfusionMatrix confusion_matrix(std::span<const std::int32_t> predicted,
                                 std::span<const std::int32_t> truth) {
  if (predicted.size() != truth.size()) {
    throw std::invalid_argument("confusion_matrix: length mismatch");
  }
  if (predicted.empty()) throw std::invalid_argument("confusion_matrix: empty input");
  ConfusionMatrix cm;
  cm.row_ids = distinct_sorted(predicted);
  cm.col_ids = distinct_sorted(truth);
  cm.counts = ScoreMatrix(cm.row_ids.size(), cm.col_ids.size());
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    cm.counts(index_of(cm.row_ids, predicted[i]), index_of(cm.col_ids, truth[i])) += 1.0;
  }
  cm.total = predicted.size();
  return cm;
}

double acc(std::span<const std::int32_t> predicted, std::span<const std::int32_t> truth,
           AccMapping mapping) {
  const ConfusionMatrix cm = confusion_matrix(predicted, truth);
  double matched = 0.0;
  if (mapping == AccMapping::kOneToOne) {
    matched = assignment_total(cm.counts, optimal_assignment(cm.counts));
  } else {
    for (std::size_t r = 0; r < cm.counts.rows; ++r) {
      double best = 0.0;
      for (std::size_t c = 0; c < cm.counts.cols; ++c) best = std::max(best, cm.counts(r, c));
      matched += best;
    }
  }
  return matched / static_cast<double>(cm.total);
}

CommCost round_comm_cost(std::span<const std::size_t> active_per_client,
                         std::size_t global_clusters, std::size_t dim,
                         std::size_t num_clients) {
  CommCost cost;
  cost.values_down = static_cast<std::uint64_t>(num_clients) * global_clusters * dim;
  for (std::size_t active : active_per_client) {
    cost.values_up += static_cast<std::uint64_t>(active) * (dim + 1);
  }
  return cost;
}

CommCost comm_cost(std::span<const std::size_t> active_per_client,
                   std::size_t global_clusters, std::size_t dim, std::size_t rounds,
                   std::size_t num_clients) {
  const CommCost per_round =
      round_comm_cost(active_per_client, global_clusters, dim, num_clients);
  return {per_round.values_down * rounds, per_round.values_up * rounds};
}

void write_rounds_csv(std::ostream& out, std::span<const RoundRecord> records) {
  out << kRoundsCsvHeader << '\n';
  char acc_text[32];
  for (const RoundRecord& r : records) {
    std::size_t lo = 0;
    std::size_t hi = 0;
    if (!r.active_clusters_per_client.empty()) {
      const auto [mn, mx] = std::minmax_element(r.active_clusters_per_client.begin(),
                                                r.active_clusters_per_client.end());
      lo = *mn;
      hi = *mx;
    }
    std::snprintf(acc_text, sizeof acc_text, "%.6f", r.acc);
    out << r.round << ',' << acc_text << ',' << r.values_up << ',' << r.values_down
        << ',' << r.removed_total << ',' << lo << ',' << hi << '\n';
  }
}

}  // namespace feduhd
