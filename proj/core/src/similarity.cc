#include "feduhd/similarity.h"

#include <cmath>
#include <stdexcept>

namespace feduhd {

double cosine_similarity(const Hypervector& a, const Hypervector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("cosine_similarity: length mismatch");
  }
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a.values(), b.values()) / (na * nb);
}

ClusterId nearest_centroid(const Hypervector& h,
                           std::span<const CentroidRef> centroids) {
  if (centroids.empty()) {
    throw std::invalid_argument("nearest_centroid: no centroids");
  }
  ClusterId best_id = centroids.front().id;
  double best = -2.0;
  for (const CentroidRef& c : centroids) {
    const double s = cosine_similarity(h, *c.centroid);
    if (s > best || (s == best && c.id < best_id)) {
      best = s;
      best_id = c.id;
    }
  }
  return best_id;
}

}  // namespace feduhd
