#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "feduhd/hypervector.h"

namespace feduhd {

using ClusterId = std::int32_t;

// a.b / (|a||b|). Defined as 0 when either vector is all zeros.
// Throws std::invalid_argument on length mismatch.
[[nodiscard]] double cosine_similarity(const Hypervector& a,
                                       const Hypervector& b);

// A centroid viewed for nearest-centroid search.
struct CentroidRef {
  ClusterId id;
  const Hypervector* centroid;
};

// Id of the centroid with the highest cosine similarity to h; ties go to the
// lowest id. Throws std::invalid_argument if centroids is empty.
[[nodiscard]] ClusterId nearest_centroid(const Hypervector& h,
                                         std::span<const CentroidRef> centroids);

}  // namespace feduhd
