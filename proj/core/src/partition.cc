#include "feduhd/partition.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "feduhd/errors.h"
#include "rng.h"

namespace feduhd {

std::vector<std::size_t> largest_remainder(const std::vector<double>& shares,
                                           std::size_t total) {
  const std::size_t n = shares.size();
  std::vector<std::size_t> counts(n, 0);
  if (n == 0) return counts;
  const double sum = std::accumulate(shares.begin(), shares.end(), 0.0);
  if (!(sum > 0.0)) throw std::invalid_argument("largest_remainder: shares sum to zero");

  std::vector<double> frac(n);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double exact = shares[i] / sum * static_cast<double>(total);
    const double fl = std::floor(exact);
    counts[i] = static_cast<std::size_t>(fl);
    frac[i] = exact - fl;
    assigned += counts[i];
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
  for (std::size_t r = 0; assigned < total; ++r) {
    ++counts[order[r % n]];
    ++assigned;
  }
  // Rounding can overshoot by a unit when shares sum to slightly above one.
  for (std::size_t r = n; assigned > total; --r) {
    const std::size_t i = order[(r - 1) % n];
    if (counts[i] > 0) {
      --counts[i];
      --assigned;
    }
  }
  return counts;
}

std::vector<std::vector<std::size_t>> Partition::class_histograms(
    const LabeledDataset& dataset) const {
  const std::size_t k = dataset.num_classes();
  std::vector<std::vector<std::size_t>> out(shards.size(), std::vector<std::size_t>(k, 0));
  for (std::size_t s = 0; s < shards.size(); ++s) {
    for (std::size_t i : shards[s]) {
      ++out[s][static_cast<std::size_t>(dataset.labels()[i])];
    }
  }
  return out;
}

Partition dirichlet_partition(const LabeledDataset& dataset, const PartitionSpec& spec) {
  if (!(spec.alpha > 0.0) || !std::isfinite(spec.alpha)) {
    throw std::invalid_argument("dirichlet_partition: alpha must be positive");
  }
  if (spec.num_clients == 0) {
    throw std::invalid_argument("dirichlet_partition: need at least one client");
  }
  if (dataset.empty()) throw std::invalid_argument("dirichlet_partition: empty dataset");

  const std::size_t k = dataset.num_classes();
  std::vector<std::vector<std::size_t>> by_class(k);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    by_class[static_cast<std::size_t>(dataset.labels()[i])].push_back(i);
  }
  const bool degenerate = std::all_of(by_class.begin(), by_class.end(), [&](const auto& c) {
    return c.size() < spec.num_clients;
  });
  if (degenerate) {
    throw DataError("dirichlet_partition: " + std::to_string(spec.num_clients) +
                    " clients but every class has fewer samples");
  }

  auto engine = detail::make_engine({detail::kTagPartition, spec.seed});
  std::gamma_distribution<double> gamma(spec.alpha, 1.0);
  Partition partition;
  partition.shards.resize(spec.num_clients);
  std::vector<double> shares(spec.num_clients);
  for (auto& members : by_class) {
    if (members.empty()) continue;
    std::shuffle(members.begin(), members.end(), engine);
    double sum = 0.0;
    // Tiny alpha can underflow every gamma draw to zero; redraw.
    for (int attempt = 0; attempt < 64 && !(sum > 0.0); ++attempt) {
      sum = 0.0;
      for (double& s : shares) {
        s = gamma(engine);
        sum += s;
      }
    }
    if (!(sum > 0.0)) std::fill(shares.begin(), shares.end(), 1.0);

    const auto counts = largest_remainder(shares, members.size());
    std::size_t offset = 0;
    for (std::size_t client = 0; client < spec.num_clients; ++client) {
      auto& shard = partition.shards[client];
      shard.insert(shard.end(), members.begin() + static_cast<std::ptrdiff_t>(offset),
                   members.begin() + static_cast<std::ptrdiff_t>(offset + counts[client]));
      offset += counts[client];
    }
  }
  for (auto& shard : partition.shards) std::sort(shard.begin(), shard.end());
  return partition;
}

bool is_partition_of(const Partition& partition, std::size_t n) {
  std::vector<char> seen(n, 0);
  std::size_t covered = 0;
  for (const auto& shard : partition.shards) {
    for (std::size_t i : shard) {
      if (i >= n || seen[i]) return false;
      seen[i] = 1;
      ++covered;
    }
  }
  return covered == n;
}

std::string manifest_json(const PartitionSpec& spec, const Partition& partition,
                          const LabeledDataset& dataset) {
  nlohmann::ordered_json doc;
  doc["format"] = "feduhd-partition";
  doc["version"] = 1;
  doc["seed"] = spec.seed;
  doc["alpha"] = spec.alpha;
  doc["num_clients"] = spec.num_clients;
  doc["num_samples"] = dataset.size();
  doc["num_classes"] = dataset.num_classes();
  const auto histograms = partition.class_histograms(dataset);
  auto shards = nlohmann::ordered_json::array();
  for (std::size_t s = 0; s < partition.shards.size(); ++s) {
    nlohmann::ordered_json shard;
    shard["client"] = s;
    shard["size"] = partition.shards[s].size();
    shard["class_histogram"] = histograms[s];
    shard["indices"] = partition.shards[s];
    shards.push_back(std::move(shard));
  }
  doc["shards"] = std::move(shards);
  return doc.dump(2) + "\n";
}

void write_manifest(const std::filesystem::path& path, const PartitionSpec& spec,
                    const Partition& partition, const LabeledDataset& dataset) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << manifest_json(spec, partition, dataset);
}

std::pair<PartitionSpec, Partition> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest " + path.string());
  try {
    const auto doc = nlohmann::json::parse(in);
    if (doc.at("format") != "feduhd-partition") {
      throw DataError(path.string() + ": not a partition manifest");
    }
    PartitionSpec spec;
    spec.seed = doc.at("seed").get<std::uint64_t>();
    spec.alpha = doc.at("alpha").get<double>();
    spec.num_clients = doc.at("num_clients").get<std::size_t>();
    Partition partition;
    for (const auto& shard : doc.at("shards")) {
      partition.shards.push_back(shard.at("indices").get<std::vector<std::size_t>>());
    }
    return {spec, partition};
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": malformed manifest: " + e.what());
  }
}

}  // namespace feduhd
