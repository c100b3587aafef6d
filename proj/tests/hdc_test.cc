#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "feduhd/hypervector.h"
#include "feduhd/projection.h"
#include "feduhd/similarity.h"
#include "oracles.h"

namespace feduhd {
namespace {

TEST(HypervectorTest, RejectsNonFiniteElements) {
  EXPECT_THROW(Hypervector({1.0, std::numeric_limits<double>::quiet_NaN()}),
               std::invalid_argument);
  EXPECT_THROW(Hypervector(std::vector<double>{std::numeric_limits<double>::infinity()}), std::invalid_argument);
  EXPECT_EQ(Hypervector(4).dim(), 4u);
}

TEST(ProjectionTest, SameSeedIsBitIdentical) {
  EXPECT_EQ(build_projection(7, 3, 5), build_projection(7, 3, 5));
}

TEST(ProjectionTest, DistinctSeedsDiffer) {
  const auto a = build_projection(7, 3, 5);
  const auto b = build_projection(8, 3, 5);
  EXPECT_FALSE(std::equal(a.entries().begin(), a.entries().end(), b.entries().begin()));
}

TEST(ProjectionTest, RejectsZeroDimensions) {
  EXPECT_THROW(build_projection(1, 0, 5), std::invalid_argument);
  EXPECT_THROW(build_projection(1, 3, 0), std::invalid_argument);
}

TEST(ProjectionTest, EntriesAreStandardNormal) {
  const auto p = build_projection(1, 2, 100000);
  double sum = 0.0, sum_sq = 0.0;
  for (double v : p.entries()) {
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(p.entries().size());
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  EXPECT_NEAR(mean, 0.0, 0.02);
  EXPECT_NEAR(var, 1.0, 0.02);
}

TEST(EncodeTest, ZeroInputGivesZeroHypervector) {
  const auto p = build_projection(3, 4, 16);
  const std::vector<double> x(4, 0.0);
  EXPECT_EQ(encode(x, p), Hypervector(16));
}

TEST(EncodeTest, MatchesHandMultiplication) {
  // explicit row combination x0 * P[0] + x1 * P[1]
  const auto p = build_projection(11, 2, 3);
  const std::vector<double> x{1.0, 2.0};
  const Hypervector h = encode(x, p);
  for (std::size_t d = 0; d < 3; ++d) {
    EXPECT_DOUBLE_EQ(h[d], 1.0 * p.row(0)[d] + 2.0 * p.row(1)[d]);
  }
}

TEST(EncodeTest, RejectsLengthMismatch) {
  const auto p = build_projection(3, 4, 8);
  const std::vector<double> x(3, 1.0);
  EXPECT_THROW((void)encode(x, p), std::invalid_argument);
}

TEST(EncodeTest, IsLinear) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  const auto p = build_projection(9, 12, 256);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(12), y(12), combo(12);
    const double alpha = normal(rng), beta = normal(rng);
    for (std::size_t f = 0; f < 12; ++f) {
      x[f] = normal(rng);
      y[f] = normal(rng);
      combo[f] = alpha * x[f] + beta * y[f];
    }
    const Hypervector hx = encode(x, p), hy = encode(y, p), hc = encode(combo, p);
    for (std::size_t d = 0; d < 256; ++d) {
      const double expected = alpha * hx[d] + beta * hy[d];
      EXPECT_NEAR(hc[d], expected, 1e-6 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST(EncodeTest, ScalingInputScalesOutput) {
  const auto p = build_projection(4, 5, 64);
  std::vector<double> x{0.5, -1.0, 2.0, 0.0, 3.0};
  std::vector<double> x2 = x;
  for (double& v : x2) v *= 2.0;
  const Hypervector a = encode(x, p), b = encode(x2, p);
  for (std::size_t d = 0; d < 64; ++d) EXPECT_NEAR(b[d], 2.0 * a[d], 1e-9);
}

TEST(CosineTest, Examples) {
  const Hypervector v({0.3, -2.0, 5.0});
  EXPECT_NEAR(cosine_similarity(v, v), 1.0, 1e-9);
  EXPECT_EQ(cosine_similarity(Hypervector({1, 0}), Hypervector({0, 1})), 0.0);
  // [1,1].[1,-1] = 1 - 1 = 0.
  EXPECT_EQ(cosine_similarity(Hypervector({1, 1}), Hypervector({1, -1})), 0.0);
}

TEST(CosineTest, ZeroVectorSimilarityIsZero) {
  EXPECT_EQ(cosine_similarity(Hypervector(3), Hypervector({1, 2, 3})), 0.0);
  EXPECT_EQ(cosine_similarity(Hypervector(3), Hypervector(3)), 0.0);
}

TEST(CosineTest, RejectsLengthMismatch) {
  EXPECT_THROW((void)cosine_similarity(Hypervector(2), Hypervector(3)), std::invalid_argument);
}

TEST(CosineTest, SymmetricAndBounded) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const auto m = oracle::random_matrix(rng, 2, 1 + trial % 40, 1.0 + trial % 7);
    const Hypervector a(m[0]), b(m[1]);
    const double ab = cosine_similarity(a, b);
    EXPECT_EQ(ab, cosine_similarity(b, a));
    EXPECT_LE(std::abs(ab), 1.0 + 1e-12);
  }
}

TEST(NearestCentroidTest, ExactMatchWins) {
  const Hypervector c1({1, 0, 0}), c2({0, 1, 0}), c3({0, 0, 1});
  const std::vector<CentroidRef> refs{{4, &c1}, {7, &c2}, {9, &c3}};
  EXPECT_EQ(nearest_centroid(c2, refs), 7);
}

TEST(NearestCentroidTest, TieGoesToLowestId) {
  const Hypervector a({1, 0}), b({0, 1});
  const std::vector<CentroidRef> refs{{5, &b}, {3, &a}};
  EXPECT_EQ(nearest_centroid(Hypervector({1, 1}), refs), 3);
}

TEST(NearestCentroidTest, EmptyThrows) {
  EXPECT_THROW((void)nearest_centroid(Hypervector(std::vector<double>{1.0}), {}), std::invalid_argument);
}

TEST(NearestCentroidTest, AgreesWithExhaustiveScan) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t dim = 2 + trial % 30;
    const std::size_t k = 1 + trial % 32;
    const auto centres = oracle::random_matrix(rng, k, dim);
    const auto points = oracle::random_matrix(rng, 10, dim);
    std::vector<Hypervector> hv;
    for (const auto& c : centres) hv.emplace_back(c);
    std::vector<CentroidRef> refs;
    for (std::size_t j = 0; j < k; ++j) refs.push_back({static_cast<ClusterId>(j), &hv[j]});
    for (const auto& p : points) {
      EXPECT_EQ(nearest_centroid(Hypervector(p), refs),
                static_cast<ClusterId>(oracle::argmax_cosine(p, centres)));
    }
  }
}

}  // namespace
}  // namespace feduhd
