#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "feduhd/channel.h"
#include "oracles.h"
#include "test_util.h"

namespace feduhd {
namespace {

using testing::model_from;

ClusterModel random_model(std::uint64_t seed, std::size_t k, std::size_t dim) {
  std::mt19937_64 rng(seed);
  auto m = model_from(oracle::random_matrix(rng, k, dim), 1);
  std::size_t s = 1;
  for (auto& [id, e] : m) e.size = s++;
  return m;
}

double population_std(const ClusterModel& m) {
  double sum = 0, sq = 0, n = 0;
  for (const auto& [id, e] : m) {
    for (double v : e.centroid.values()) {
      sum += v;
      sq += v * v;
      ++n;
    }
  }
  const double mean = sum / n;
  return std::sqrt(sq / n - mean * mean);
}

TEST(ChannelTest, NoiselessIsIdentity) {
  const auto m = random_model(1, 4, 16);
  EXPECT_EQ(transmit(m, ChannelModel::noiseless(), Direction::kUplink, 3, 2), m);
}

TEST(ChannelTest, ZeroLossIsIdentity) {
  const auto m = random_model(2, 4, 16);
  EXPECT_EQ(transmit(m, ChannelModel::packet_loss(0.0, 5), Direction::kDownlink, 0, 0), m);
}

TEST(ChannelTest, FullLossZeroesCentroidsKeepsSizes) {
  const auto m = random_model(3, 4, 16);
  const auto out = transmit(m, ChannelModel::packet_loss(1.0, 5), Direction::kUplink, 1, 1);
  EXPECT_EQ(out.ids(), m.ids());
  for (const auto& [id, e] : out) {
    EXPECT_EQ(e.size, m.at(id).size);
    for (double v : e.centroid.values()) EXPECT_EQ(v, 0.0);
  }
}

TEST(ChannelTest, LossFractionMatchesRate) {
  const auto m = random_model(4, 1, 10000);
  const auto ch = ChannelModel::packet_loss(0.3, 17);
  for (std::uint64_t t = 0; t < 10; ++t) {
    const auto out = transmit(m, ch, Direction::kUplink, t, 0);
    std::size_t zeroed = 0;
    const auto& orig = m.at(1).centroid;
    const auto& got = out.at(1).centroid;
    for (std::size_t d = 0; d < orig.dim(); ++d) {
      if (got[d] == 0.0) {
        ++zeroed;
      } else {
        EXPECT_EQ(got[d], orig[d]);
      }
    }
    EXPECT_NEAR(static_cast<double>(zeroed) / 10000.0, 0.3, 0.01);
  }
}

TEST(ChannelTest, GaussianNoiseIsUnbiasedWithScaledVariance) {
  const auto m = random_model(5, 4, 8);
  const double s = population_std(m);
  const double sigma = 0.5;
  const auto ch = ChannelModel::gaussian(sigma, 23);
  double sum = 0, sq = 0, n = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const auto out = transmit(m, ch, Direction::kDownlink, t, 0);
    for (const auto& [id, e] : out) {
      EXPECT_EQ(e.size, m.at(id).size);
      for (std::size_t d = 0; d < e.centroid.dim(); ++d) {
        const double noise = e.centroid[d] - m.at(id).centroid[d];
        sum += noise;
        sq += noise * noise;
        ++n;
      }
    }
  }
  const double sd = sigma * s;
  EXPECT_LT(std::abs(sum / n), 3.0 * sd / std::sqrt(n));
  EXPECT_NEAR(std::sqrt(sq / n), sd, 0.02 * sd);
}

TEST(ChannelTest, ZeroSigmaIsIdentity) {
  const auto m = random_model(6, 3, 8);
  EXPECT_EQ(transmit(m, ChannelModel::gaussian(0.0, 1), Direction::kUplink, 0, 0), m);
}

TEST(ChannelTest, DeterministicPerRoundDirectionEndpoint) {
  const auto m = random_model(7, 3, 64);
  const auto ch = ChannelModel::packet_loss(0.5, 29);
  const auto a = transmit(m, ch, Direction::kUplink, 2, 3);
  EXPECT_EQ(a, transmit(m, ch, Direction::kUplink, 2, 3));
  EXPECT_NE(a, transmit(m, ch, Direction::kUplink, 2, 4));
  EXPECT_NE(a, transmit(m, ch, Direction::kUplink, 3, 3));
  EXPECT_NE(a, transmit(m, ch, Direction::kDownlink, 2, 3));
  EXPECT_NE(a, transmit(m, ChannelModel::packet_loss(0.5, 30), Direction::kUplink, 2, 3));
}

TEST(ChannelTest, ScopeLimitsCorruptedLinks) {
  const auto m = random_model(8, 2, 32);
  const auto up = ChannelModel::packet_loss(1.0, 1, LinkScope::kUplinkOnly);
  EXPECT_TRUE(up.corrupts(Direction::kUplink));
  EXPECT_FALSE(up.corrupts(Direction::kDownlink));
  EXPECT_EQ(transmit(m, up, Direction::kDownlink, 0, 0), m);
  const auto down = ChannelModel::gaussian(1.0, 1, LinkScope::kDownlinkOnly);
  EXPECT_EQ(transmit(m, down, Direction::kUplink, 0, 0), m);
  EXPECT_NE(transmit(m, down, Direction::kDownlink, 0, 0), m);
}

TEST(ChannelTest, RejectsBadParameters) {
  EXPECT_THROW((void)ChannelModel::packet_loss(-0.1, 0), std::invalid_argument);
  EXPECT_THROW((void)ChannelModel::packet_loss(1.1, 0), std::invalid_argument);
  EXPECT_THROW((void)ChannelModel::gaussian(-1.0, 0), std::invalid_argument);
  EXPECT_THROW((void)ChannelModel::gaussian(NAN, 0), std::invalid_argument);
}

TEST(ChannelTest, Describe) {
  EXPECT_EQ(ChannelModel::noiseless().describe(), "noiseless");
  EXPECT_NE(ChannelModel::packet_loss(0.3, 0).describe().find("0.3"), std::string::npos);
}

TEST(DegradationTest, Examples) {
  EXPECT_NEAR(degradation(0.8, 0.6), 25.0, 1e-9);
  EXPECT_EQ(degradation(0.7, 0.7), 0.0);
  EXPECT_LT(degradation(0.5, 0.6), 0.0);
  EXPECT_THROW((void)degradation(0.0, 0.5), std::invalid_argument);
  EXPECT_THROW((void)degradation(-0.1, 0.5), std::invalid_argument);
}

}  // namespace
}  // namespace feduhd
