#include "feduhd/federation.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <random>
#include <stdexcept>
#include <thread>

#include "feduhd/kmeans.h"
#include "feduhd/knn_filter.h"
#include "rng.h"

namespace feduhd {

ServerState init_global(std::size_t num_clusters, std::size_t dim, std::uint64_t seed) {
  if (num_clusters == 0 || dim == 0) {
    throw std::invalid_argument("init_global: cluster count and dimension must be positive");
  }
  auto engine = detail::make_engine({detail::kTagInit, seed});
  std::normal_distribution<double> normal(0.0, 1.0);
  ServerState server;
  for (std::size_t j = 1; j <= num_clusters; ++j) {
    std::vector<double> values(dim);
    for (double& v : values) v = normal(engine);
    server.initial_model.insert(static_cast<ClusterId>(j), Hypervector(std::move(values)));
  }
  server.global_model = server.initial_model;
  return server;
}

ClientRoundResult client_round(const ClientState& state, const ClusterModel& global_model,
                               std::uint64_t round, std::size_t local_epochs,
                               std::size_t knn_k) {
  ClientRoundResult out{state, ClientUpdate{state.client_id, {}, 0}};
  const auto& data = state.encoded_data;
  if (data.empty()) return out;

  ClusterModel init;
  const bool has_history = round > 0 && state.assignment.size() == data.size();
  if (!has_history) {
    init = global_model;
  } else {
    const std::size_t k = std::min(knn_k, data.size());
    FilterResult filtered = knn_filter(global_model, data, state.assignment, k);
    if (filtered.survivors.empty()) {
      init = global_model;
    } else {
      init = global_model.restricted_to(filtered.survivors);
      out.update.removed = filtered.removed.size();
    }
  }

  KMeansResult local = kmeans(data, init, local_epochs);
  out.state.assignment = std::move(local.assignment);
  out.state.active_ids = local.model.ids();
  out.state.local_model = local.model;
  out.update.model = std::move(local.model);
  return out;
}

ClusterModel aggregate(std::span<const ClientUpdate> updates,
                       const ClusterModel& previous_global) {
  if (updates.empty()) throw std::invalid_argument("aggregate: no updates");
  std::size_t dim = previous_global.dim();
  for (const ClientUpdate& u : updates) {
    if (u.model.empty()) continue;
    if (dim == 0) dim = u.model.dim();
    if (u.model.dim() != dim) {
      throw std::invalid_argument("aggregate: centroid dimension mismatch");
    }
  }

  std::map<ClusterId, std::size_t> totals;
  for (const ClientUpdate& u : updates) {
    for (const auto& [id, entry] : u.model) totals[id] += entry.size;
  }

  ClusterModel global = previous_global;
  for (const auto& [id, total] : totals) {
    if (total == 0) continue;
    std::vector<double> g(dim, 0.0);
    for (const ClientUpdate& u : updates) {
      if (!u.model.contains(id)) continue;
      const ClusterEntry& local = u.model.at(id);
      if (local.size == 0) continue;
      const double w = static_cast<double>(local.size) / static_cast<double>(total);
      const auto l = local.centroid.values();
      for (std::size_t d = 0; d < dim; ++d) g[d] += w * l[d];
    }
    if (global.contains(id)) {
      global.at(id) = ClusterEntry{Hypervector(std::move(g)), total};
    } else {
      global.insert(id, Hypervector(std::move(g)), total);
    }
  }
  return global;
}

ClusterId predict(const Hypervector& h, const ClusterModel& global_model) {
  if (global_model.empty()) throw std::invalid_argument("predict: empty model");
  const auto refs = global_model.centroid_refs();
  return nearest_centroid(h, refs);
}

namespace {

// Runs fn(i) for i in [0, n) on up to `workers` threads. The first exception
// by index is rethrown after every worker has finished.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::vector<RoundRecord> run_rounds(const RoundOptions& options,
                                    std::vector<ClientState>& clients,
                                    ServerState& server, const ChannelModel& channel,
                                    const EvalSet& eval) {
  if (options.rounds == 0) throw std::invalid_argument("run_rounds: rounds must be >= 1");
  if (clients.empty()) throw std::invalid_argument("run_rounds: no clients");
  if (eval.encoded.size() != eval.labels.size()) {
    throw std::invalid_argument("run_rounds: evaluation set misaligned");
  }
  std::size_t workers = options.workers;
  if (workers == 0) {
    workers = std::min<std::size_t>(clients.size(),
                                    std::max(1u, std::thread::hardware_concurrency()));
  }

  std::vector<RoundRecord> records;
  records.reserve(options.rounds);
  std::vector<ClientUpdate> updates(clients.size());
  for (std::size_t r = 0; r < options.rounds; ++r) {
    const std::uint64_t rnd = server.round_index;
    const ClusterModel& broadcast = rnd == 0 ? server.initial_model : server.global_model;
    const std::size_t dim = broadcast.dim();

    parallel_for(clients.size(), workers, [&](std::size_t i) {
      const auto endpoint = static_cast<std::uint64_t>(clients[i].client_id);
      const ClusterModel received =
          transmit(broadcast, channel, Direction::kDownlink, rnd, endpoint);
      ClientRoundResult res = client_round(clients[i], received, rnd,
                                           options.local_epochs, options.knn_k);
      if (!res.update.empty()) {
        res.update.model =
            transmit(res.update.model, channel, Direction::kUplink, rnd, endpoint);
      }
      clients[i] = std::move(res.state);
      updates[i] = std::move(res.update);
    });

    RoundRecord record;
    record.round = rnd;
    record.values_down = static_cast<std::uint64_t>(clients.size() * broadcast.size() * dim);
    for (const ClientUpdate& u : updates) {
      if (u.empty()) continue;
      record.values_up += u.model.size() * (dim + 1);
      record.removed_total += u.removed;
      record.active_clusters_per_client.push_back(u.model.size());
    }
    if (record.active_clusters_per_client.empty()) {
      throw std::runtime_error("run_rounds: every client is empty in round " +
                               std::to_string(rnd));
    }

    server.global_model = aggregate(updates, server.global_model);
    ++server.round_index;

    if (!eval.encoded.empty()) {
      const Assignment predicted = assign_all(eval.encoded, server.global_model);
      record.acc = acc(predicted, eval.labels, options.acc_mapping);
    }
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace feduhd
