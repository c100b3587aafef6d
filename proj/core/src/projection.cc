#include "feduhd/projection.h"

#include <random>
#include <stdexcept>
#include <string>

#include "rng.h"

namespace feduhd {

ProjectionMatrix::ProjectionMatrix(std::uint64_t seed, std::size_t input_dim,
                                   std::size_t output_dim)
    : seed_(seed), input_dim_(input_dim), output_dim_(output_dim) {
  if (input_dim == 0 || output_dim == 0) {
    throw std::invalid_argument("ProjectionMatrix: dimensions must be positive");
  }
  auto engine = detail::make_engine(
      {detail::kTagProjection, seed, input_dim, output_dim});
  std::normal_distribution<double> normal(0.0, 1.0);
  entries_.resize(input_dim * output_dim);
  for (double& e : entries_) e = normal(engine);
}

std::span<const double> ProjectionMatrix::row(std::size_t f) const {
  return {entries_.data() + f * output_dim_, output_dim_};
}

ProjectionMatrix build_projection(std::uint64_t seed, std::size_t input_dim,
                                  std::size_t output_dim) {
  return ProjectionMatrix(seed, input_dim, output_dim);
}

namespace {

void encode_into(FeatureVector x, const ProjectionMatrix& proj,
                 std::span<double> out) {
  const std::size_t d = proj.output_dim();
  for (std::size_t f = 0; f < x.size(); ++f) {
    const double xf = x[f];
    if (xf == 0.0) continue;
    const double* row = proj.entries().data() + f * d;
    for (std::size_t j = 0; j < d; ++j) out[j] += xf * row[j];
  }
}

}  // namespace

Hypervector encode(FeatureVector x, const ProjectionMatrix& proj) {
  if (x.size() != proj.input_dim()) {
    throw std::invalid_argument("encode: feature vector has length " +
                                std::to_string(x.size()) + ", projection expects " +
                                std::to_string(proj.input_dim()));
  }
  std::vector<double> out(proj.output_dim(), 0.0);
  encode_into(x, proj, out);
  return Hypervector(std::move(out));
}

std::vector<Hypervector> encode_rows(std::span<const double> features,
                                     std::size_t num_rows,
                                     const ProjectionMatrix& proj) {
  const std::size_t f = proj.input_dim();
  if (features.size() != num_rows * f) {
    throw std::invalid_argument("encode_rows: feature matrix is not num_rows x F");
  }
  std::vector<Hypervector> out;
  out.reserve(num_rows);
  for (std::size_t i = 0; i < num_rows; ++i) {
    out.push_back(encode(features.subspan(i * f, f), proj));
  }
  return out;
}

}  // namespace feduhd
