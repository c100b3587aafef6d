#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "feduhd/cluster_model.h"

namespace feduhd {

struct KMeansResult {
  ClusterModel model;
  Assignment assignment;
  // Number of assign/update passes actually run (<= iterations).
  std::size_t iterations_run = 0;
  // Objective after each centroid update, see kmeans_objective().
  std::vector<double> objective_trace;
};

// Lloyd's algorithm under cosine assignment. Each pass assigns every point to
// its nearest centroid and moves each centroid to the arithmetic mean of its
// points. Stops after `iterations` passes or once assignments repeat. A
// centroid that receives no points keeps its position and reports size 0, so
// the returned ids are exactly the ids of `init`.
//
// Throws std::invalid_argument when data or init is empty, iterations is 0,
// or dimensions disagree.
[[nodiscard]] KMeansResult kmeans(std::span<const Hypervector> data,
                                  const ClusterModel& init,
                                  std::size_t iterations);

// sum_i |x_i| * (1 - cos(x_i, c_{a(i)})). This is the quantity the cosine
// assignment plus mean update never increases; on unit-norm data it is the
// plain sum of cosine dissimilarities.
[[nodiscard]] double kmeans_objective(std::span<const Hypervector> data,
                                      const ClusterModel& model,
                                      const Assignment& assignment);

// sum_i (1 - cos(x_i, c_{a(i)})), unweighted.
[[nodiscard]] double cosine_dissimilarity_sum(std::span<const Hypervector> data,
                                              const ClusterModel& model,
                                              const Assignment& assignment);

// Nearest-centroid id for every point.
[[nodiscard]] Assignment assign_all(std::span<const Hypervector> data,
                                    const ClusterModel& model);

}  // namespace feduhd
