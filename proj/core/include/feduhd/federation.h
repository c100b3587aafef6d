#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "feduhd/channel.h"
#include "feduhd/cluster_model.h"
#include "feduhd/metrics.h"

namespace feduhd {

struct ClientState {
  std::int32_t client_id = 0;
  std::vector<Hypervector> encoded_data;  // enc_H, fixed after encoding
  Assignment assignment;                  // aligned with encoded_data
  ClusterModel local_model;
  std::set<ClusterId> active_ids;         // k_mi = active_ids.size()
};

struct ServerState {
  ClusterModel global_model;
  ClusterModel initial_model;  // sent to every client in round 0
  std::uint64_t round_index = 0;
};

// What a client sends upstream: centroids and exact sizes for its surviving
// ids only. Sizes travel inside the model entries.
struct ClientUpdate {
  std::int32_t client_id = 0;
  ClusterModel model;
  std::size_t removed = 0;  // ids dropped by the kNN filter this round

  [[nodiscard]] bool empty() const { return model.empty(); }
};

struct ClientRoundResult {
  ClientState state;
  ClientUpdate update;
};

// J centroids with ids 1..J and i.i.d. N(0,1) entries; round_index = 0.
// Throws std::invalid_argument if num_clusters or dim is 0.
[[nodiscard]] ServerState init_global(std::size_t num_clusters, std::size_t dim,
                                      std::uint64_t seed);

// One round of local training.
//
// Round 0 initialises k-means from the full received model. Later rounds
// first run the kNN filter with the previous assignment and initialise from
// the surviving global centroids only; if nothing survives the filter is
// ignored for the round. k is clamped to the client's sample count. A client
// without samples returns its state unchanged and an empty update.
[[nodiscard]] ClientRoundResult client_round(const ClientState& state,
                                             const ClusterModel& global_model,
                                             std::uint64_t round,
                                             std::size_t local_epochs,
                                             std::size_t knn_k);

// Size-weighted aggregation: g_j = sum_i (S_ij / sum_i S_ij) * l_ij over the
// clients reporting j. Ids no client reports, or whose reported sizes sum to
// zero, keep their previous global centroid.
//
// Throws std::invalid_argument if updates is empty or dimensions disagree.
[[nodiscard]] ClusterModel aggregate(std::span<const ClientUpdate> updates,
                                     const ClusterModel& previous_global);

// Nearest global centroid. Throws std::invalid_argument on an empty model.
[[nodiscard]] ClusterId predict(const Hypervector& h,
                                const ClusterModel& global_model);

struct EvalSet {
  std::vector<Hypervector> encoded;
  std::vector<std::int32_t> labels;
};

struct RoundOptions {
  std::size_t rounds = 25;
  std::size_t local_epochs = 10;
  std::size_t knn_k = 4;
  // Client-round fan-out; 0 picks min(clients, hardware threads).
  std::size_t workers = 0;
  AccMapping acc_mapping = AccMapping::kOneToOne;
};

// Runs `rounds` federated rounds: downlink broadcast, concurrent client
// training, uplink, aggregation, evaluation on `eval`. Records come back in
// round order and do not depend on the worker count.
//
// Throws std::runtime_error if every client is empty in some round.
[[nodiscard]] std::vector<RoundRecord> run_rounds(
    const RoundOptions& options, std::vector<ClientState>& clients,
    ServerState& server, const ChannelModel& channel, const EvalSet& eval);

}  // namespace feduhd
