#include "feduhd/cluster_model.h"

#include <stdexcept>
#include <string>

namespace feduhd {

void ClusterModel::insert(ClusterId id, Hypervector centroid, std::size_t size) {
  if (entries_.contains(id)) {
    throw std::invalid_argument("ClusterModel: duplicate cluster id " +
                                std::to_string(id));
  }
  if (!entries_.empty() && centroid.dim() != dim_) {
    throw std::invalid_argument("ClusterModel: centroid dimension mismatch");
  }
  dim_ = centroid.dim();
  entries_.emplace(id, ClusterEntry{std::move(centroid), size});
}

const ClusterEntry& ClusterModel::at(ClusterId id) const { return entries_.at(id); }
ClusterEntry& ClusterModel::at(ClusterId id) { return entries_.at(id); }

std::set<ClusterId> ClusterModel::ids() const {
  std::set<ClusterId> out;
  for (const auto& [id, entry] : entries_) out.insert(out.end(), id);
  return out;
}

std::size_t ClusterModel::total_size() const {
  std::size_t total = 0;
  for (const auto& [id, entry] : entries_) total += entry.size;
  return total;
}

std::vector<CentroidRef> ClusterModel::centroid_refs() const {
  std::vector<CentroidRef> refs;
  refs.reserve(entries_.size());
  for (const auto& [id, entry] : entries_) refs.push_back({id, &entry.centroid});
  return refs;
}

ClusterModel ClusterModel::restricted_to(const std::set<ClusterId>& keep) const {
  ClusterModel out;
  for (const auto& [id, entry] : entries_) {
    if (keep.contains(id)) out.insert(id, entry.centroid, entry.size);
  }
  return out;
}

}  // namespace feduhd
