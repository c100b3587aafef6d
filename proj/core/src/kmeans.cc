#include "feduhd/kmeans.h"

#include <stdexcept>

namespace feduhd {
namespace {

struct NormedCentroid {
  ClusterId id;
  const Hypervector* centroid;
  double norm;
};

std::vector<NormedCentroid> normed(const ClusterModel& model) {
  std::vector<NormedCentroid> out;
  out.reserve(model.size());
  for (const auto& [id, entry] : model) {
    out.push_back({id, &entry.centroid, entry.centroid.norm()});
  }
  return out;
}

// Same arithmetic as cosine_similarity, with norms hoisted out of the loop.
double cosine(const Hypervector& x, double x_norm, const NormedCentroid& c) {
  if (x_norm == 0.0 || c.norm == 0.0) return 0.0;
  return dot(x.values(), c.centroid->values()) / (x_norm * c.norm);
}

ClusterId nearest(const Hypervector& x, double x_norm,
                  const std::vector<NormedCentroid>& centroids) {
  ClusterId best_id = centroids.front().id;
  double best = -2.0;
  for (const NormedCentroid& c : centroids) {
    const double s = cosine(x, x_norm, c);
    if (s > best || (s == best && c.id < best_id)) {
      best = s;
      best_id = c.id;
    }
  }
  return best_id;
}

Assignment assign_with_norms(std::span<const Hypervector> data,
                             const std::vector<double>& norms,
                             const ClusterModel& model) {
  const auto centroids = normed(model);
  Assignment out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    out[i] = nearest(data[i], norms[i], centroids);
  }
  return out;
}

// Moves every non-empty cluster to the mean of its points; sizes follow the
// assignment, empty clusters keep their centroid.
void update_centroids(std::span<const Hypervector> data,
                      const Assignment& assignment, ClusterModel& model) {
  const std::size_t dim = model.dim();
  std::map<ClusterId, std::vector<double>> sums;
  std::map<ClusterId, std::size_t> counts;
  for (const auto& [id, entry] : model) {
    sums.emplace(id, std::vector<double>(dim, 0.0));
    counts.emplace(id, 0);
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto& sum = sums.at(assignment[i]);
    const auto x = data[i].values();
    for (std::size_t d = 0; d < dim; ++d) sum[d] += x[d];
    ++counts.at(assignment[i]);
  }
  for (auto& [id, entry] : model) {
    const std::size_t n = counts.at(id);
    entry.size = n;
    if (n == 0) continue;
    auto& sum = sums.at(id);
    const double inv = 1.0 / static_cast<double>(n);
    for (double& v : sum) v *= inv;
    entry.centroid = Hypervector(std::move(sum));
  }
}

std::vector<double> norms_of(std::span<const Hypervector> data) {
  std::vector<double> norms(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) norms[i] = data[i].norm();
  return norms;
}

}  // namespace

Assignment assign_all(std::span<const Hypervector> data, const ClusterModel& model) {
  if (model.empty()) throw std::invalid_argument("assign_all: empty model");
  return assign_with_norms(data, norms_of(data), model);
}

KMeansResult kmeans(std::span<const Hypervector> data, const ClusterModel& init,
                    std::size_t iterations) {
  if (data.empty()) throw std::invalid_argument("kmeans: empty data");
  if (init.empty()) throw std::invalid_argument("kmeans: empty init");
  if (iterations == 0) throw std::invalid_argument("kmeans: iterations must be >= 1");
  for (const Hypervector& x : data) {
    if (x.dim() != init.dim()) {
      throw std::invalid_argument("kmeans: data and centroid dimensions differ");
    }
  }

  const std::vector<double> norms = norms_of(data);
  KMeansResult result;
  result.model = init;
  for (std::size_t it = 0; it < iterations; ++it) {
    Assignment next = assign_with_norms(data, norms, result.model);
    // Centroids are already the means of an unchanged assignment.
    if (it > 0 && next == result.assignment) break;
    result.assignment = std::move(next);
    update_centroids(data, result.assignment, result.model);
    ++result.iterations_run;
    result.objective_trace.push_back(
        kmeans_objective(data, result.model, result.assignment));
  }
  return result;
}

double kmeans_objective(std::span<const Hypervector> data, const ClusterModel& model,
                        const Assignment& assignment) {
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double n = data[i].norm();
    total += n * (1.0 - cosine_similarity(data[i], model.at(assignment[i]).centroid));
  }
  return total;
}

double cosine_dissimilarity_sum(std::span<const Hypervector> data,
                                const ClusterModel& model,
                                const Assignment& assignment) {
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    total += 1.0 - cosine_similarity(data[i], model.at(assignment[i]).centroid);
  }
  return total;
}

}  // namespace feduhd
