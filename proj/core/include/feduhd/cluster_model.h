#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "feduhd/hypervector.h"
#include "feduhd/similarity.h"

namespace feduhd {

struct ClusterEntry {
  Hypervector centroid;
  std::size_t size = 0;

  friend bool operator==(const ClusterEntry&, const ClusterEntry&) = default;
};

// Ordered id -> (centroid, size) map. Serves as both the local model a client
// trains and the global model the server aggregates. All centroids share one
// dimension.
class ClusterModel {
 public:
  using Map = std::map<ClusterId, ClusterEntry>;

  ClusterModel() = default;

  // Throws std::invalid_argument on duplicate id or dimension mismatch.
  void insert(ClusterId id, Hypervector centroid, std::size_t size = 0);

  void erase(ClusterId id) { entries_.erase(id); }

  [[nodiscard]] bool contains(ClusterId id) const {
    return entries_.contains(id);
  }
  // Throws std::out_of_range for unknown ids.
  [[nodiscard]] const ClusterEntry& at(ClusterId id) const;
  [[nodiscard]] ClusterEntry& at(ClusterId id);

  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  // Centroid dimension, 0 for an empty model.
  [[nodiscard]] std::size_t dim() const { return dim_; }

  [[nodiscard]] std::set<ClusterId> ids() const;
  [[nodiscard]] std::size_t total_size() const;

  // Views in ascending id order, for nearest_centroid.
  [[nodiscard]] std::vector<CentroidRef> centroid_refs() const;

  // Copy holding only the listed ids that are present here.
  [[nodiscard]] ClusterModel restricted_to(const std::set<ClusterId>& keep) const;

  [[nodiscard]] Map::const_iterator begin() const { return entries_.begin(); }
  [[nodiscard]] Map::const_iterator end() const { return entries_.end(); }
  [[nodiscard]] Map::iterator begin() { return entries_.begin(); }
  [[nodiscard]] Map::iterator end() { return entries_.end(); }

  friend bool operator==(const ClusterModel&, const ClusterModel&) = default;

 private:
  Map entries_;
  std::size_t dim_ = 0;
};

// One cluster id per encoded sample, index-aligned with the client's data.
using Assignment = std::vector<ClusterId>;

}  // namespace feduhd
