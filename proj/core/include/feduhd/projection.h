#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "feduhd/hypervector.h"

namespace feduhd {

// Seeded F x D random projection with i.i.d. standard normal entries.
// Rebuilding from the same (seed, input_dim, output_dim) yields a
// bit-identical matrix, so the seed alone is what the server distributes.
class ProjectionMatrix {
 public:
  ProjectionMatrix(std::uint64_t seed, std::size_t input_dim,
                   std::size_t output_dim);

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::size_t input_dim() const { return input_dim_; }
  [[nodiscard]] std::size_t output_dim() const { return output_dim_; }

  // Row f of the matrix (length output_dim).
  [[nodiscard]] std::span<const double> row(std::size_t f) const;

  [[nodiscard]] std::span<const double> entries() const { return entries_; }

  friend bool operator==(const ProjectionMatrix&,
                         const ProjectionMatrix&) = default;

 private:
  std::uint64_t seed_;
  std::size_t input_dim_;
  std::size_t output_dim_;
  std::vector<double> entries_;  // row-major, input_dim x output_dim
};

// Throws std::invalid_argument when either dimension is zero.
[[nodiscard]] ProjectionMatrix build_projection(std::uint64_t seed,
                                                std::size_t input_dim,
                                                std::size_t output_dim);

// x * P. Throws std::invalid_argument if x.size() != proj.input_dim().
[[nodiscard]] Hypervector encode(FeatureVector x, const ProjectionMatrix& proj);

// Encodes every row of a row-major N x F feature matrix.
[[nodiscard]] std::vector<Hypervector> encode_rows(
    std::span<const double> features, std::size_t num_rows,
    const ProjectionMatrix& proj);

}  // namespace feduhd
