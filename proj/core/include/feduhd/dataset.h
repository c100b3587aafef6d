#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace feduhd {

// N x F feature matrix plus one integer class label per row. Labels are only
// used to draw non-iid partitions and to score clusterings, never to train.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  // Throws std::invalid_argument if sizes disagree or a label is negative.
  LabeledDataset(std::size_t num_features, std::vector<double> features,
                 std::vector<std::int32_t> labels);

  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] bool empty() const { return labels_.empty(); }
  [[nodiscard]] std::size_t num_features() const { return num_features_; }
  // max label + 1.
  [[nodiscard]] std::size_t num_classes() const;

  [[nodiscard]] std::span<const double> row(std::size_t i) const {
    return {features_.data() + i * num_features_, num_features_};
  }
  [[nodiscard]] std::span<const double> features() const { return features_; }
  [[nodiscard]] std::span<const std::int32_t> labels() const { return labels_; }

  [[nodiscard]] LabeledDataset subset(std::span<const std::size_t> indices) const;

  // In-place per-feature z-scoring with the given statistics.
  void standardize(std::span<const double> mean, std::span<const double> stddev);
  // Per-feature mean and population standard deviation (zero std -> 1).
  [[nodiscard]] std::pair<std::vector<double>, std::vector<double>>
  feature_moments() const;

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;

 private:
  std::size_t num_features_ = 0;
  std::vector<double> features_;
  std::vector<std::int32_t> labels_;
};

// Feature CSV: header "f0,f1,...,f{F-1},label", then one sample per line.
// Throws ParseError (with line number) on malformed input and DataError if
// the file cannot be opened or holds no samples.
[[nodiscard]] LabeledDataset read_csv(std::istream& in);
[[nodiscard]] LabeledDataset load_csv(const std::filesystem::path& path);

// Shortest round-trip decimal form, so write -> read is bit-exact.
void write_csv(std::ostream& out, const LabeledDataset& dataset);
void save_csv(const std::filesystem::path& path, const LabeledDataset& dataset);

// UCI "Human Activity Recognition Using Smartphones" layout: <dir>/<split>/
// X_<split>.txt (whitespace separated) and y_<split>.txt with labels 1..6,
// shifted here to 0..5. split is "train" or "test".
[[nodiscard]] LabeledDataset load_uci_har(const std::filesystem::path& dir,
                                          const std::string& split);

// Isotropic unit-variance Gaussian blobs. When num_classes <= feature_dim the
// class means sit on distinct coordinate axes at distance
// separation / sqrt(2) from the origin, so every pair of means is exactly
// `separation` standard deviations apart; otherwise means are random
// directions at that same radius. Rows are grouped by class.
[[nodiscard]] LabeledDataset make_blobs(std::size_t num_classes,
                                        std::size_t per_class,
                                        std::size_t feature_dim,
                                        double separation, std::uint64_t seed);

struct Split {
  LabeledDataset train;
  LabeledDataset test;
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
};

// Class-stratified split; the test share of each class is rounded with the
// largest-remainder rule so the total is round(N * test_fraction).
// Throws std::invalid_argument unless 0 < test_fraction < 1.
[[nodiscard]] Split train_test_split(const LabeledDataset& dataset,
                                     double test_fraction, std::uint64_t seed);

}  // namespace feduhd
