#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "feduhd/cluster_model.h"
#include "feduhd/federation.h"
#include "feduhd/kmeans.h"
#include "feduhd/knn_filter.h"

namespace {

std::vector<feduhd::Hypervector> random_points(std::size_t n, std::size_t dim,
                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<feduhd::Hypervector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(dim);
    for (double& x : v) x = normal(rng);
    out.emplace_back(std::move(v));
  }
  return out;
}

void BM_KMeans(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto data = random_points(n, 1000, 1);
  const auto init = feduhd::init_global(12, 1000, 2).global_model;
  for (auto _ : state) {
    benchmark::DoNotOptimize(feduhd::kmeans(data, init, 10));
  }
}
BENCHMARK(BM_KMeans)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_KnnFilter(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto data = random_points(n, 1000, 3);
  const auto global = feduhd::init_global(12, 1000, 4).global_model;
  const auto prev = feduhd::assign_all(data, global);
  for (auto _ : state) {
    benchmark::DoNotOptimize(feduhd::knn_filter(global, data, prev, 4));
  }
}
BENCHMARK(BM_KnnFilter)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_Aggregate(benchmark::State& state) {
  const auto clients = static_cast<std::size_t>(state.range(0));
  std::vector<feduhd::ClientUpdate> updates(clients);
  for (std::size_t i = 0; i < clients; ++i) {
    updates[i].client_id = static_cast<std::int32_t>(i);
    updates[i].model = feduhd::init_global(12, 1000, 10 + i).global_model;
    for (auto& [id, e] : updates[i].model) e.size = 1 + (i + static_cast<std::size_t>(id)) % 7;
  }
  const auto prev = feduhd::init_global(12, 1000, 5).global_model;
  for (auto _ : state) {
    benchmark::DoNotOptimize(feduhd::aggregate(updates, prev));
  }
}
BENCHMARK(BM_Aggregate)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);

}  // namespace
