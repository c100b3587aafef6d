#include "feduhd/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "feduhd/errors.h"
#include "feduhd/partition.h"
#include "rng.h"

namespace feduhd {

LabeledDataset::LabeledDataset(std::size_t num_features, std::vector<double> features,
                               std::vector<std::int32_t> labels)
    : num_features_(num_features),
      features_(std::move(features)),
      labels_(std::move(labels)) {
  if (features_.size() != labels_.size() * num_features_) {
    throw std::invalid_argument("LabeledDataset: feature matrix is not N x F");
  }
  if (std::any_of(labels_.begin(), labels_.end(), [](std::int32_t l) { return l < 0; })) {
    throw std::invalid_argument("LabeledDataset: negative label");
  }
}

std::size_t LabeledDataset::num_classes() const {
  if (labels_.empty()) return 0;
  return static_cast<std::size_t>(*std::max_element(labels_.begin(), labels_.end())) + 1;
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
  std::vector<double> features;
  features.reserve(indices.size() * num_features_);
  std::vector<std::int32_t> labels;
  labels.reserve(indices.size());
  for (std::size_t i : indices) {
    const auto r = row(i);
    features.insert(features.end(), r.begin(), r.end());
    labels.push_back(labels_.at(i));
  }
  return LabeledDataset(num_features_, std::move(features), std::move(labels));
}

void LabeledDataset::standardize(std::span<const double> mean,
                                 std::span<const double> stddev) {
  if (mean.size() != num_features_ || stddev.size() != num_features_) {
    throw std::invalid_argument("standardize: statistics have the wrong length");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t f = 0; f < num_features_; ++f) {
      double& v = features_[i * num_features_ + f];
      v = (v - mean[f]) / stddev[f];
    }
  }
}

std::pair<std::vector<double>, std::vector<double>> LabeledDataset::feature_moments() const {
  std::vector<double> mean(num_features_, 0.0);
  std::vector<double> stddev(num_features_, 0.0);
  if (empty()) {
    std::fill(stddev.begin(), stddev.end(), 1.0);
    return {mean, stddev};
  }
  const auto n = static_cast<double>(size());
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t f = 0; f < num_features_; ++f) mean[f] += row(i)[f];
  }
  for (double& m : mean) m /= n;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t f = 0; f < num_features_; ++f) {
      const double d = row(i)[f] - mean[f];
      stddev[f] += d * d;
    }
  }
  for (double& s : stddev) {
    s = std::sqrt(s / n);
    if (s == 0.0) s = 1.0;
  }
  return {mean, stddev};
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_real(std::string_view text, double& out) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

bool parse_label(std::string_view text, std::int32_t& out) {
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && out >= 0;
}

void append_real(std::string& out, double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

}  // namespace

LabeledDataset read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header", 1);
  const auto header = split_fields(trim(line), ',');
  if (trim(header.back()) != "label") {
    throw ParseError("missing label column (last header field must be 'label')", 1);
  }
  const std::size_t num_features = header.size() - 1;
  if (num_features == 0) throw ParseError("header declares no feature columns", 1);

  std::vector<double> features;
  std::vector<std::int32_t> labels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    const auto fields = split_fields(row, ',');
    if (fields.size() != num_features + 1) {
      throw ParseError("expected " + std::to_string(num_features + 1) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    for (std::size_t f = 0; f < num_features; ++f) {
      double v = 0.0;
      if (!parse_real(trim(fields[f]), v)) {
        throw ParseError("non-numeric feature in column " + std::to_string(f), line_no);
      }
      features.push_back(v);
    }
    std::int32_t label = 0;
    if (!parse_label(trim(fields.back()), label)) {
      throw ParseError("label must be a non-negative integer", line_no);
    }
    labels.push_back(label);
  }
  if (labels.empty()) throw DataError("dataset has a header but no samples");
  return LabeledDataset(num_features, std::move(features), std::move(labels));
}

LabeledDataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset " + path.string());
  try {
    return read_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.message(), e.line());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_csv(std::ostream& out, const LabeledDataset& dataset) {
  std::string text;
  for (std::size_t f = 0; f < dataset.num_features(); ++f) {
    text += 'f';
    text += std::to_string(f);
    text += ',';
  }
  text += "label\n";
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    for (double v : dataset.row(i)) {
      append_real(text, v);
      text += ',';
    }
    text += std::to_string(dataset.labels()[i]);
    text += '\n';
  }
  out << text;
}

void save_csv(const std::filesystem::path& path, const LabeledDataset& dataset) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_csv(out, dataset);
}

LabeledDataset load_uci_har(const std::filesystem::path& dir, const std::string& split) {
  const auto x_path = dir / split / ("X_" + split + ".txt");
  const auto y_path = dir / split / ("y_" + split + ".txt");
  std::ifstream xs(x_path);
  std::ifstream ys(y_path);
  if (!xs) throw DataError("cannot open " + x_path.string());
  if (!ys) throw DataError("cannot open " + y_path.string());

  std::vector<double> features;
  std::vector<std::int32_t> labels;
  std::size_t num_features = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(xs, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::size_t count = 0;
    std::string token;
    while (fields >> token) {
      double v = 0.0;
      if (!parse_real(token, v)) throw ParseError(x_path.string() + ": bad value", line_no);
      features.push_back(v);
      ++count;
    }
    if (count == 0) continue;
    if (num_features == 0) num_features = count;
    if (count != num_features) {
      throw ParseError(x_path.string() + ": ragged row", line_no);
    }
  }
  line_no = 0;
  while (std::getline(ys, line)) {
    ++line_no;
    const std::string_view t = trim(line);
    if (t.empty()) continue;
    std::int32_t label = 0;
    if (!parse_label(t, label) || label < 1) {
      throw ParseError(y_path.string() + ": labels must be integers >= 1", line_no);
    }
    labels.push_back(label - 1);
  }
  if (labels.empty() || features.size() != labels.size() * num_features) {
    throw DataError("HAR split '" + split + "': feature and label counts disagree");
  }
  return LabeledDataset(num_features, std::move(features), std::move(labels));
}

LabeledDataset make_blobs(std::size_t num_classes, std::size_t per_class,
                          std::size_t feature_dim, double separation, std::uint64_t seed) {
  if (num_classes == 0 || per_class == 0 || feature_dim == 0 || !(separation > 0.0)) {
    throw std::invalid_argument("make_blobs: all parameters must be positive");
  }
  auto engine = detail::make_engine({detail::kTagBlobs, seed});
  std::normal_distribution<double> normal(0.0, 1.0);
  const double radius = separation / std::sqrt(2.0);

  std::vector<std::vector<double>> means(num_classes, std::vector<double>(feature_dim, 0.0));
  for (std::size_t c = 0; c < num_classes; ++c) {
    if (num_classes <= feature_dim) {
      means[c][c] = radius;
      continue;
    }
    double norm_sq = 0.0;
    for (double& m : means[c]) {
      m = normal(engine);
      norm_sq += m * m;
    }
    const double scale = radius / std::sqrt(norm_sq);
    for (double& m : means[c]) m *= scale;
  }

  std::vector<double> features;
  features.reserve(num_classes * per_class * feature_dim);
  std::vector<std::int32_t> labels;
  labels.reserve(num_classes * per_class);
  for (std::size_t c = 0; c < num_classes; ++c) {
    for (std::size_t i = 0; i < per_class; ++i) {
      for (std::size_t f = 0; f < feature_dim; ++f) {
        features.push_back(means[c][f] + normal(engine));
      }
      labels.push_back(static_cast<std::int32_t>(c));
    }
  }
  return LabeledDataset(feature_dim, std::move(features), std::move(labels));
}

Split train_test_split(const LabeledDataset& dataset, double test_fraction,
                       std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw std::invalid_argument("train_test_split: test_fraction must lie in (0, 1)");
  }
  const std::size_t k = dataset.num_classes();
  std::vector<std::vector<std::size_t>> by_class(k);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    by_class[static_cast<std::size_t>(dataset.labels()[i])].push_back(i);
  }
  auto engine = detail::make_engine({detail::kTagSplit, seed});
  const auto n = static_cast<double>(dataset.size());
  const auto total_test =
      static_cast<std::size_t>(std::llround(n * test_fraction));
  std::vector<double> shares(k);
  for (std::size_t c = 0; c < k; ++c) shares[c] = static_cast<double>(by_class[c].size()) / n;
  const std::vector<std::size_t> per_class_test = largest_remainder(shares, total_test);

  Split split;
  for (std::size_t c = 0; c < k; ++c) {
    auto& idx = by_class[c];
    std::shuffle(idx.begin(), idx.end(), engine);
    const std::size_t take = std::min(per_class_test[c], idx.size());
    split.test_indices.insert(split.test_indices.end(), idx.begin(),
                              idx.begin() + static_cast<std::ptrdiff_t>(take));
    split.train_indices.insert(split.train_indices.end(),
                               idx.begin() + static_cast<std::ptrdiff_t>(take), idx.end());
  }
  std::sort(split.train_indices.begin(), split.train_indices.end());
  std::sort(split.test_indices.begin(), split.test_indices.end());
  split.train = dataset.subset(split.train_indices);
  split.test = dataset.subset(split.test_indices);
  return split;
}

}  // namespace feduhd
