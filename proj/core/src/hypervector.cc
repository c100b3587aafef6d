#include "feduhd/hypervector.h"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace feduhd {

Hypervector::Hypervector(std::size_t dim) : values_(dim, 0.0) {}

Hypervector::Hypervector(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("Hypervector: non-finite element");
    }
  }
}

double Hypervector::norm() const { return std::sqrt(dot(values_, values_)); }

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace feduhd
