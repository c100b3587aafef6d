#include <gtest/gtest.h>

#include <random>

#include "feduhd/channel.h"
#include "feduhd/federation.h"
#include "feduhd/kmeans.h"
#include "oracles.h"
#include "test_util.h"

namespace feduhd {
namespace {

using testing::model_from;
using testing::to_hypervectors;

ClientUpdate update_of(std::int32_t client, const std::vector<std::vector<double>>& centroids,
                       const std::vector<std::size_t>& sizes, ClusterId first_id = 1) {
  ClientUpdate u;
  u.client_id = client;
  for (std::size_t j = 0; j < centroids.size(); ++j) {
    u.model.insert(first_id + static_cast<ClusterId>(j), Hypervector(centroids[j]), sizes[j]);
  }
  return u;
}

TEST(InitGlobalTest, IdsAndDeterminism) {
  const auto a = init_global(12, 64, 5);
  EXPECT_EQ(a.global_model.ids().size(), 12u);
  EXPECT_EQ(*a.global_model.ids().begin(), 1);
  EXPECT_EQ(*a.global_model.ids().rbegin(), 12);
  EXPECT_EQ(a.global_model.dim(), 64u);
  EXPECT_EQ(a.round_index, 0u);
  EXPECT_EQ(a.initial_model, a.global_model);
  EXPECT_EQ(init_global(12, 64, 5).global_model, a.global_model);
  EXPECT_NE(init_global(12, 64, 6).global_model, a.global_model);
  EXPECT_THROW((void)init_global(0, 4, 1), std::invalid_argument);
  EXPECT_THROW((void)init_global(4, 0, 1), std::invalid_argument);
}

TEST(AggregateTest, SizeWeightedMean) {
  const std::vector<ClientUpdate> updates{update_of(0, {{4, 0}}, {1}), update_of(1, {{0, 4}}, {3})};
  const auto g = aggregate(updates, model_from({{9, 9}}, 1));
  EXPECT_DOUBLE_EQ(g.at(1).centroid[0], 1.0);
  EXPECT_DOUBLE_EQ(g.at(1).centroid[1], 3.0);
  EXPECT_EQ(g.at(1).size, 4u);
}

TEST(AggregateTest, EqualSizesGiveMidpoint) {
  const std::vector<ClientUpdate> updates{update_of(0, {{2, 0}}, {5}), update_of(1, {{0, 2}}, {5})};
  const auto g = aggregate(updates, model_from({{0, 0}}, 1));
  EXPECT_DOUBLE_EQ(g.at(1).centroid[0], 1.0);
  EXPECT_DOUBLE_EQ(g.at(1).centroid[1], 1.0);
}

TEST(AggregateTest, UnreportedIdCarriesForward) {
  const auto prev = model_from({{1, 1}, {7, 7}}, 1);
  const std::vector<ClientUpdate> updates{update_of(0, {{3, 3}}, {2})};
  const auto g = aggregate(updates, prev);
  EXPECT_EQ(g.at(2).centroid, prev.at(2).centroid);
  EXPECT_EQ(g.at(1).centroid, Hypervector({3, 3}));
}

TEST(AggregateTest, ZeroTotalSizeCarriesForward) {
  const auto prev = model_from({{1, 1}}, 1);
  const std::vector<ClientUpdate> updates{update_of(0, {{3, 3}}, {0}), update_of(1, {{5, 5}}, {0})};
  EXPECT_EQ(aggregate(updates, prev).at(1).centroid, prev.at(1).centroid);
}

TEST(AggregateTest, SingleClientIsBitIdentical) {
  std::mt19937_64 rng(71);
  const auto c = oracle::random_matrix(rng, 4, 32);
  const std::vector<ClientUpdate> updates{update_of(0, c, {3, 1, 9, 2})};
  const auto g = aggregate(updates, model_from(oracle::random_matrix(rng, 4, 32), 1));
  for (ClusterId id = 1; id <= 4; ++id) {
    EXPECT_EQ(g.at(id).centroid, updates[0].model.at(id).centroid);
  }
}

TEST(AggregateTest, RejectsEmptyAndMismatch) {
  EXPECT_THROW((void)aggregate({}, model_from({{1}}, 1)), std::invalid_argument);
  const std::vector<ClientUpdate> bad{update_of(0, {{1, 2, 3}}, {1})};
  EXPECT_THROW((void)aggregate(bad, model_from({{1, 2}}, 1)), std::invalid_argument);
}

// The aggregated centroid of an id equals the plain mean of the union of all
// samples the clients assigned to it.
TEST(AggregateTest, MatchesUnionMean) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t clients = 1 + trial % 6, dim = 3 + trial % 5;
    std::vector<ClientUpdate> updates;
    oracle::Matrix all;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < clients; ++i) {
      const std::size_t n = 1 + (trial + i) % 9;
      const auto pts = oracle::random_matrix(rng, n, dim);
      std::vector<std::size_t> idx;
      for (std::size_t p = 0; p < n; ++p) {
        idx.push_back(p);
        members.push_back(all.size());
        all.push_back(pts[p]);
      }
      updates.push_back(update_of(static_cast<std::int32_t>(i), {oracle::mean_of(pts, idx)}, {n}));
    }
    const auto g = aggregate(updates, model_from({std::vector<double>(dim, 0.0)}, 1));
    const auto expected = oracle::mean_of(all, members);
    for (std::size_t d = 0; d < dim; ++d) EXPECT_NEAR(g.at(1).centroid[d], expected[d], 1e-9);
  }
}

TEST(ClientRoundTest, FirstRoundUsesFullModel) {
  ClientState s;
  s.encoded_data = to_hypervectors({{1, 0}, {0.9, 0.1}, {0, 1}});
  const auto global = model_from({{1, 0}, {0, 1}, {-1, -1}}, 1);
  const auto res = client_round(s, global, 0, 10, 2);
  EXPECT_EQ(res.update.model.ids(), global.ids());
  EXPECT_EQ(res.update.removed, 0u);
  EXPECT_EQ(res.state.assignment, (Assignment{1, 1, 2}));
  EXPECT_EQ(res.update.model.total_size(), 3u);
}

TEST(ClientRoundTest, LaterRoundDropsFilteredIds) {
  ClientState s;
  s.encoded_data = to_hypervectors({{0.6, 0.8}, {0.5, 0.9}, {0.1, 1}, {0, 1}});
  s.assignment = {2, 2, 2, 2};
  const auto global = model_from({{1, 0}, {0, 1}}, 1);
  const auto res = client_round(s, global, 1, 10, 2);
  EXPECT_EQ(res.update.model.ids(), (std::set<ClusterId>{2}));
  EXPECT_EQ(res.update.removed, 1u);
  EXPECT_EQ(res.state.active_ids, (std::set<ClusterId>{2}));
}

TEST(ClientRoundTest, KnnKClampedToSampleCount) {
  ClientState s;
  s.encoded_data = to_hypervectors({{1, 0}});
  s.assignment = {1};
  const auto res = client_round(s, model_from({{1, 0}, {0, 1}}, 1), 3, 10, 8);
  EXPECT_EQ(res.update.model.ids(), (std::set<ClusterId>{1}));
}

TEST(ClientRoundTest, EmptyClientSendsNothing) {
  ClientState s;
  s.client_id = 4;
  const auto res = client_round(s, model_from({{1, 0}}, 1), 2, 10, 4);
  EXPECT_TRUE(res.update.empty());
  EXPECT_EQ(res.update.client_id, 4);
}

TEST(PredictTest, NearestGlobalCentroid) {
  const auto g = model_from({{1, 0}, {0, 1}}, 1);
  EXPECT_EQ(predict(Hypervector({0.2, 0.9}), g), 2);
  EXPECT_THROW((void)predict(Hypervector(std::vector<double>{1.0}), ClusterModel{}), std::invalid_argument);
}

struct Fixture {
  std::vector<ClientState> clients;
  ServerState server;
  EvalSet eval;
};

Fixture make_fixture(std::size_t num_clients) {
  std::mt19937_64 rng(79);
  Fixture f;
  const oracle::Matrix centres{{5, 0, 0, 0}, {0, 5, 0, 0}, {0, 0, 5, 0}};
  std::normal_distribution<double> noise;
  for (std::size_t i = 0; i < num_clients; ++i) {
    ClientState s;
    s.client_id = static_cast<std::int32_t>(i);
    for (int p = 0; p < 20; ++p) {
      const std::size_t c = (i + static_cast<std::size_t>(p)) % 3;
      std::vector<double> x(4);
      for (std::size_t d = 0; d < 4; ++d) x[d] = centres[c][d] + noise(rng);
      s.encoded_data.emplace_back(x);
      f.eval.encoded.emplace_back(x);
      f.eval.labels.push_back(static_cast<std::int32_t>(c));
    }
    f.clients.push_back(std::move(s));
  }
  f.server = init_global(5, 4, 3);
  return f;
}

TEST(RunRoundsTest, IndependentOfWorkerCount) {
  RoundOptions opt;
  opt.rounds = 5;
  opt.workers = 1;
  auto a = make_fixture(6);
  const auto ra = run_rounds(opt, a.clients, a.server, ChannelModel::packet_loss(0.2, 9), a.eval);
  opt.workers = 4;
  auto b = make_fixture(6);
  const auto rb = run_rounds(opt, b.clients, b.server, ChannelModel::packet_loss(0.2, 9), b.eval);
  ASSERT_EQ(ra.size(), rb.size());
  for (std::size_t r = 0; r < ra.size(); ++r) {
    EXPECT_EQ(ra[r].acc, rb[r].acc);
    EXPECT_EQ(ra[r].values_up, rb[r].values_up);
    EXPECT_EQ(ra[r].active_clusters_per_client, rb[r].active_clusters_per_client);
  }
  EXPECT_EQ(a.server.global_model, b.server.global_model);
}

TEST(RunRoundsTest, FirstRoundByteAccounting) {
  RoundOptions opt;
  opt.rounds = 1;
  auto f = make_fixture(3);
  const auto rec = run_rounds(opt, f.clients, f.server, ChannelModel::noiseless(), f.eval);
  ASSERT_EQ(rec.size(), 1u);
  EXPECT_EQ(rec[0].round, 0u);
  EXPECT_EQ(rec[0].values_down, 3u * 5u * 4u);
  EXPECT_EQ(rec[0].values_up, 3u * 5u * (4u + 1u));
  EXPECT_EQ(f.server.round_index, 1u);
}

TEST(RunRoundsTest, AllEmptyClientsIsAnError) {
  std::vector<ClientState> clients(2);
  auto server = init_global(2, 3, 1);
  RoundOptions opt;
  opt.rounds = 1;
  EXPECT_THROW((void)run_rounds(opt, clients, server, ChannelModel::noiseless(), EvalSet{}),
               std::runtime_error);
}

TEST(RunRoundsTest, SeparableDataClustersWell) {
  RoundOptions opt;
  opt.rounds = 5;
  opt.acc_mapping = AccMapping::kManyToOne;
  auto f = make_fixture(4);
  const auto rec = run_rounds(opt, f.clients, f.server, ChannelModel::noiseless(), f.eval);
  EXPECT_GE(rec.back().acc, 0.95);
}

}  // namespace
}  // namespace feduhd
