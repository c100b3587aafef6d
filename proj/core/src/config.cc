#include "feduhd/config.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <type_traits>
#include <sstream>

#include <json.hpp>

#include "feduhd/errors.h"

namespace feduhd {
namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

// Walks one JSON object, tracking which keys were consumed so leftovers can
// be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_.empty() ? "/" : path_, "expected an object");
  }

  [[nodiscard]] std::string field(const std::string& key) const { return path_ + "/" + key; }

  const json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  const json& require(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr) throw ConfigError(field(key), "required field is missing");
    return *v;
  }

  template <typename Unsigned>
    requires std::is_unsigned_v<Unsigned>
  void read(const std::string& key, Unsigned& out) {
    if (const json* v = find(key)) out = static_cast<Unsigned>(as_count(*v, field(key)));
  }

  void read(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ConfigError(field(key), "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) throw ConfigError(field(key), "must be finite");
    }
  }

  void read(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) throw ConfigError(field(key), "expected true or false");
      out = v->get<bool>();
    }
  }

  void read(const std::string& key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw ConfigError(field(key), "expected a string");
      out = v->get<std::string>();
    }
  }

  void reject_unknown() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.contains(key)) throw ConfigError(field(key), "unknown field");
    }
  }

  static std::uint64_t as_count(const json& v, const std::string& field) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) throw ConfigError(field, "must be non-negative");
    throw ConfigError(field, "expected a non-negative integer");
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

DatasetKind dataset_kind_from(const std::string& s, const std::string& field) {
  if (s == "blobs") return DatasetKind::kBlobs;
  if (s == "csv") return DatasetKind::kCsv;
  if (s == "uci_har") return DatasetKind::kUciHar;
  throw ConfigError(field, "unknown dataset kind '" + s + "' (blobs, csv, uci_har)");
}

std::string_view to_string(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::kBlobs:
      return "blobs";
    case DatasetKind::kCsv:
      return "csv";
    case DatasetKind::kUciHar:
      return "uci_har";
  }
  return "blobs";
}

ChannelKind channel_kind_from(std::string_view s, const std::string& field) {
  if (s == "noiseless") return ChannelKind::kNoiseless;
  if (s == "packet_loss") return ChannelKind::kPacketLoss;
  if (s == "gaussian") return ChannelKind::kGaussian;
  throw ConfigError(field, "unknown channel kind '" + std::string(s) +
                               "' (noiseless, packet_loss, gaussian)");
}

LinkScope scope_from(std::string_view s, const std::string& field) {
  if (s == "both") return LinkScope::kBoth;
  if (s == "uplink") return LinkScope::kUplinkOnly;
  if (s == "downlink") return LinkScope::kDownlinkOnly;
  throw ConfigError(field, "unknown link scope '" + std::string(s) +
                               "' (both, uplink, downlink)");
}

void validate_channel(const ChannelConfig& c, const std::string& path) {
  if (!(c.loss_rate >= 0.0 && c.loss_rate <= 1.0)) {
    throw ConfigError(path + "/loss_rate", "must lie in [0, 1]");
  }
  if (!(c.sigma >= 0.0) || !std::isfinite(c.sigma)) {
    throw ConfigError(path + "/sigma", "must be finite and >= 0");
  }
}

ChannelConfig read_channel(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  ChannelConfig c;
  std::string kind = "noiseless";
  r.read("kind", kind);
  c.kind = channel_kind_from(kind, r.field("kind"));
  r.read("loss_rate", c.loss_rate);
  r.read("sigma", c.sigma);
  std::string scope = "both";
  r.read("scope", scope);
  c.scope = scope_from(scope, r.field("scope"));
  r.reject_unknown();
  validate_channel(c, path);
  return c;
}

ojson channel_json(const ChannelConfig& c) {
  ojson j;
  j["kind"] = std::string(to_string(c.kind));
  j["loss_rate"] = c.loss_rate;
  j["sigma"] = c.sigma;
  j["scope"] = std::string(to_string(c.scope));
  return j;
}

void require_positive(std::size_t v, const std::string& field) {
  if (v == 0) throw ConfigError(field, "must be >= 1");
}

}  // namespace

void validate(const ExperimentConfig& c) {
  if (c.schema_version != kConfigSchemaVersion) {
    throw ConfigError("/schema_version",
                      "unsupported version " + std::to_string(c.schema_version));
  }
  const DatasetConfig& d = c.dataset;
  if ((d.kind == DatasetKind::kCsv || d.kind == DatasetKind::kUciHar) && d.path.empty()) {
    throw ConfigError("/dataset/path", "required for this dataset kind");
  }
  if (!(d.test_fraction > 0.0 && d.test_fraction < 1.0)) {
    throw ConfigError("/dataset/test_fraction", "must lie in (0, 1)");
  }
  if (d.kind == DatasetKind::kBlobs) {
    require_positive(d.num_classes, "/dataset/num_classes");
    require_positive(d.per_class, "/dataset/per_class");
    require_positive(d.feature_dim, "/dataset/feature_dim");
    if (!(d.separation > 0.0)) throw ConfigError("/dataset/separation", "must be > 0");
  }
  require_positive(c.hdc_dim, "/hdc_dim");
  require_positive(c.num_clusters, "/num_clusters");
  require_positive(c.num_clients, "/num_clients");
  require_positive(c.local_epochs, "/local_epochs");
  require_positive(c.knn_k, "/knn_k");
  require_positive(c.rounds, "/rounds");
  if (!(c.dirichlet_alpha > 0.0) || !std::isfinite(c.dirichlet_alpha)) {
    throw ConfigError("/dirichlet_alpha", "must be a finite number > 0");
  }
  if (c.participation != 1.0) {
    throw ConfigError("/participation", "only full participation (1.0) is supported");
  }
  validate_channel(c.channel, "/channel");
  for (std::size_t i = 0; i < c.sweep.size(); ++i) {
    validate_channel(c.sweep[i], "/sweep/" + std::to_string(i));
  }
  if (c.output_dir.empty()) throw ConfigError("/output_dir", "must not be empty");
}

ExperimentConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("/", std::string("invalid JSON: ") + e.what());
  }

  ExperimentConfig c;
  ObjectReader root(doc, "");
  const json& version = root.require("schema_version");
  if (!version.is_number_integer()) {
    throw ConfigError("/schema_version", "expected an integer");
  }
  c.schema_version = version.get<int>();

  if (const json* ds = root.find("dataset")) {
    ObjectReader r(*ds, "/dataset");
    std::string kind = "blobs";
    r.read("kind", kind);
    c.dataset.kind = dataset_kind_from(kind, r.field("kind"));
    r.read("path", c.dataset.path);
    r.read("test_path", c.dataset.test_path);
    r.read("test_fraction", c.dataset.test_fraction);
    r.read("standardize", c.dataset.standardize);
    r.read("num_classes", c.dataset.num_classes);
    r.read("per_class", c.dataset.per_class);
    r.read("feature_dim", c.dataset.feature_dim);
    r.read("separation", c.dataset.separation);
    r.reject_unknown();
  }
  root.read("hdc_dim", c.hdc_dim);
  root.read("num_clusters", c.num_clusters);
  root.read("num_clients", c.num_clients);
  root.read("local_epochs", c.local_epochs);
  root.read("knn_k", c.knn_k);
  root.read("rounds", c.rounds);
  root.read("dirichlet_alpha", c.dirichlet_alpha);
  root.read("participation", c.participation);
  if (const json* ch = root.find("channel")) c.channel = read_channel(*ch, "/channel");
  if (const json* seeds = root.find("seeds")) {
    ObjectReader r(*seeds, "/seeds");
    r.read("projection", c.seeds.projection);
    r.read("init", c.seeds.init);
    r.read("partition", c.seeds.partition);
    r.read("channel", c.seeds.channel);
    r.reject_unknown();
  }
  root.read("output_dir", c.output_dir);
  root.read("workers", c.workers);
  std::string mapping = "one_to_one";
  root.read("acc_mapping", mapping);
  if (mapping == "one_to_one") {
    c.acc_mapping = AccMapping::kOneToOne;
  } else if (mapping == "many_to_one") {
    c.acc_mapping = AccMapping::kManyToOne;
  } else {
    throw ConfigError("/acc_mapping", "expected one_to_one or many_to_one");
  }
  if (const json* sweep = root.find("sweep")) {
    if (!sweep->is_array()) throw ConfigError("/sweep", "expected an array");
    for (std::size_t i = 0; i < sweep->size(); ++i) {
      c.sweep.push_back(read_channel((*sweep)[i], "/sweep/" + std::to_string(i)));
    }
  }
  root.reject_unknown();
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("/", "cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string to_json(const ExperimentConfig& c) {
  ojson j;
  j["schema_version"] = c.schema_version;
  ojson ds;
  ds["kind"] = std::string(to_string(c.dataset.kind));
  ds["path"] = c.dataset.path;
  ds["test_path"] = c.dataset.test_path;
  ds["test_fraction"] = c.dataset.test_fraction;
  ds["standardize"] = c.dataset.standardize;
  ds["num_classes"] = c.dataset.num_classes;
  ds["per_class"] = c.dataset.per_class;
  ds["feature_dim"] = c.dataset.feature_dim;
  ds["separation"] = c.dataset.separation;
  j["dataset"] = std::move(ds);
  j["hdc_dim"] = c.hdc_dim;
  j["num_clusters"] = c.num_clusters;
  j["num_clients"] = c.num_clients;
  j["local_epochs"] = c.local_epochs;
  j["knn_k"] = c.knn_k;
  j["rounds"] = c.rounds;
  j["dirichlet_alpha"] = c.dirichlet_alpha;
  j["participation"] = c.participation;
  j["channel"] = channel_json(c.channel);
  j["seeds"] = {{"projection", c.seeds.projection},
                {"init", c.seeds.init},
                {"partition", c.seeds.partition},
                {"channel", c.seeds.channel}};
  j["output_dir"] = c.output_dir;
  j["workers"] = c.workers;
  j["acc_mapping"] =
      c.acc_mapping == AccMapping::kOneToOne ? "one_to_one" : "many_to_one";
  auto sweep = ojson::array();
  for (const auto& point : c.sweep) sweep.push_back(channel_json(point));
  j["sweep"] = std::move(sweep);
  return j.dump(2);
}

ChannelModel make_channel(const ChannelConfig& channel, std::uint64_t seed) {
  switch (channel.kind) {
    case ChannelKind::kNoiseless:
      return ChannelModel::noiseless();
    case ChannelKind::kPacketLoss:
      return ChannelModel::packet_loss(channel.loss_rate, seed, channel.scope);
    case ChannelKind::kGaussian:
      return ChannelModel::gaussian(channel.sigma, seed, channel.scope);
  }
  return ChannelModel::noiseless();
}

ChannelConfig parse_channel_spec(std::string_view spec) {
  const std::string field = "--sweep '" + std::string(spec) + "'";
  ChannelConfig c;
  if (const auto at = spec.find('@'); at != std::string_view::npos) {
    c.scope = scope_from(spec.substr(at + 1), field);
    spec = spec.substr(0, at);
  }
  const auto colon = spec.find(':');
  c.kind = channel_kind_from(spec.substr(0, colon), field);
  if (c.kind == ChannelKind::kNoiseless) {
    if (colon != std::string_view::npos) throw ConfigError(field, "noiseless takes no value");
    return c;
  }
  if (colon == std::string_view::npos) throw ConfigError(field, "missing value after ':'");
  const std::string_view value = spec.substr(colon + 1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(field, "value is not a number");
  }
  (c.kind == ChannelKind::kPacketLoss ? c.loss_rate : c.sigma) = v;
  validate_channel(c, field);
  return c;
}

std::vector<ChannelConfig> parse_sweep(std::string_view list) {
  std::vector<ChannelConfig> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    const auto item = list.substr(start, comma == std::string_view::npos ? comma : comma - start);
    if (!item.empty()) out.push_back(parse_channel_spec(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<std::uint64_t> seed_override_from_env() {
  const char* raw = std::getenv("FEDUHD_SEED_OVERRIDE");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string_view text(raw);
  std::uint64_t seed = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("$FEDUHD_SEED_OVERRIDE", "expected a non-negative integer");
  }
  return seed;
}

void apply_seed_override(ExperimentConfig& config, std::uint64_t seed) {
  config.seeds = SeedConfig{seed, seed, seed, seed};
}

}  // namespace feduhd
