#pragma once

#include <cstddef>
#include <set>
#include <span>

#include "feduhd/cluster_model.h"

namespace feduhd {

struct FilterResult {
  std::set<ClusterId> survivors;
  std::set<ClusterId> removed;
};

// kNN-based cluster hypervector removal.
//
// For every global centroid j, take its k nearest local samples by cosine
// similarity (equal similarities ordered by sample index). j survives iff at
// least one of those samples was assigned to j in the previous round.
// survivors and removed partition the ids of global_model.
//
// Throws std::invalid_argument if global_model is empty, k is 0 or exceeds
// data.size(), or assignment_prev is not aligned with data.
[[nodiscard]] FilterResult knn_filter(const ClusterModel& global_model,
                                      std::span<const Hypervector> data,
                                      const Assignment& assignment_prev,
                                      std::size_t k);

// The client's k_mi after filtering.
[[nodiscard]] inline std::size_t active_cluster_count(
    const std::set<ClusterId>& survivors) {
  return survivors.size();
}

}  // namespace feduhd
