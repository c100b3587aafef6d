#include "feduhd/knn_filter.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace feduhd {

FilterResult knn_filter(const ClusterModel& global_model,
                        std::span<const Hypervector> data,
                        const Assignment& assignment_prev, std::size_t k) {
  if (global_model.empty()) {
    throw std::invalid_argument("knn_filter: empty global model");
  }
  if (k == 0) throw std::invalid_argument("knn_filter: k must be >= 1");
  if (k > data.size()) {
    throw std::invalid_argument("knn_filter: k exceeds the number of samples");
  }
  if (assignment_prev.size() != data.size()) {
    throw std::invalid_argument("knn_filter: assignment not aligned with data");
  }

  std::vector<double> norms(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) norms[i] = data[i].norm();

  FilterResult result;
  std::vector<std::size_t> order(data.size());
  std::vector<double> sim(data.size());
  for (const auto& [id, entry] : global_model) {
    const double cn = entry.centroid.norm();
    for (std::size_t i = 0; i < data.size(); ++i) {
      sim[i] = (cn == 0.0 || norms[i] == 0.0)
                   ? 0.0
                   : dot(data[i].values(), entry.centroid.values()) / (norms[i] * cn);
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto closer = [&](std::size_t a, std::size_t b) {
      return sim[a] > sim[b] || (sim[a] == sim[b] && a < b);
    };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                      order.end(), closer);
    const bool match = std::any_of(
        order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
        [&, cid = id](std::size_t i) { return assignment_prev[i] == cid; });
    (match ? result.survivors : result.removed).insert(id);
  }
  return result;
}

}  // namespace feduhd
