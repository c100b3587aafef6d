#pragma once

// Real-valued hypervectors and the feature vectors they are encoded from.

#include <cstddef>
#include <span>
#include <vector>

namespace feduhd {

// Dense real hypervector of fixed dimension. The dimension is set at
// construction and never changes; every element is finite.
class Hypervector {
 public:
  Hypervector() = default;

  // Zero vector of the given dimension.
  explicit Hypervector(std::size_t dim);

  // Throws std::invalid_argument if any element is NaN or infinite.
  explicit Hypervector(std::vector<double> values);

  [[nodiscard]] std::size_t dim() const { return values_.size(); }
  [[nodiscard]] bool empty() const { return values_.empty(); }

  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

  [[nodiscard]] std::span<const double> values() const { return values_; }

  // Mutable access for in-place numeric kernels. Callers must keep elements
  // finite; the channel and aggregation paths only write finite values.
  [[nodiscard]] std::span<double> mutable_values() { return values_; }

  [[nodiscard]] double norm() const;

  friend bool operator==(const Hypervector&, const Hypervector&) = default;

 private:
  std::vector<double> values_;
};

// Raw input row before encoding. Image datasets arrive here as precomputed
// feature-extractor outputs.
using FeatureVector = std::span<const double>;

// dot(a, b); lengths must match (checked by callers).
[[nodiscard]] double dot(std::span<const double> a, std::span<const double> b);

}  // namespace feduhd
