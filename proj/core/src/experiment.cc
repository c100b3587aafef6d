#include "feduhd/experiment.h"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "feduhd/errors.h"
#include "feduhd/federation.h"
#include "feduhd/projection.h"

namespace feduhd {
namespace {

using ojson = nlohmann::ordered_json;

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string rounds_csv(const std::vector<RoundRecord>& records) {
  std::ostringstream os;
  write_rounds_csv(os, records);
  return os.str();
}

}  // namespace

PreparedData prepare_data(const ExperimentConfig& config) {
  const DatasetConfig& d = config.dataset;
  PreparedData data;
  try {
    switch (d.kind) {
      case DatasetKind::kBlobs: {
        const LabeledDataset all = make_blobs(d.num_classes, d.per_class, d.feature_dim,
                                              d.separation, config.seeds.partition);
        Split split = train_test_split(all, d.test_fraction, config.seeds.partition);
        data.train = std::move(split.train);
        data.test = std::move(split.test);
        break;
      }
      case DatasetKind::kCsv: {
        if (d.test_path.empty()) {
          Split split =
              train_test_split(load_csv(d.path), d.test_fraction, config.seeds.partition);
          data.train = std::move(split.train);
          data.test = std::move(split.test);
        } else {
          data.train = load_csv(d.path);
          data.test = load_csv(d.test_path);
        }
        break;
      }
      case DatasetKind::kUciHar:
        data.train = load_uci_har(d.path, "train");
        data.test = load_uci_har(d.path, "test");
        break;
    }
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  if (data.train.empty()) throw DataError("training split is empty");
  if (data.test.num_features() != data.train.num_features()) {
    throw DataError("train and test feature counts differ");
  }
  if (d.standardize) {
    const auto [mean, stddev] = data.train.feature_moments();
    data.train.standardize(mean, stddev);
    data.test.standardize(mean, stddev);
  }
  return data;
}

PartitionSpec partition_spec(const ExperimentConfig& config) {
  return {config.dirichlet_alpha, config.num_clients, config.seeds.partition};
}

RunResult run_experiment(const ExperimentConfig& config, const PreparedData& data,
                         const ChannelModel& channel) {
  RunResult result;
  result.spec = partition_spec(config);
  result.partition = dirichlet_partition(data.train, result.spec);

  const ProjectionMatrix proj =
      build_projection(config.seeds.projection, data.train.num_features(), config.hdc_dim);
  std::vector<ClientState> clients(config.num_clients);
  for (std::size_t i = 0; i < clients.size(); ++i) {
    clients[i].client_id = static_cast<std::int32_t>(i);
    const LabeledDataset shard = data.train.subset(result.partition.shards[i]);
    clients[i].encoded_data = encode_rows(shard.features(), shard.size(), proj);
  }
  EvalSet eval;
  eval.encoded = encode_rows(data.test.features(), data.test.size(), proj);
  eval.labels.assign(data.test.labels().begin(), data.test.labels().end());

  ServerState server = init_global(config.num_clusters, config.hdc_dim, config.seeds.init);
  RoundOptions options;
  options.rounds = config.rounds;
  options.local_epochs = config.local_epochs;
  options.knn_k = config.knn_k;
  options.workers = config.workers;
  options.acc_mapping = config.acc_mapping;
  result.records = run_rounds(options, clients, server, channel, eval);
  result.final_model = server.global_model;
  return result;
}

RunResult run_experiment(const ExperimentConfig& config, const PreparedData& data) {
  return run_experiment(config, data, make_channel(config.channel, config.seeds.channel));
}

std::string summary_json(const ExperimentConfig& config, const RunResult& result) {
  ojson doc;
  doc["final_acc"] = result.final_acc();
  double best = 0.0;
  std::uint64_t up = 0, down = 0, removed = 0;
  for (const RoundRecord& r : result.records) {
    best = std::max(best, r.acc);
    up += r.values_up;
    down += r.values_down;
    removed += r.removed_total;
  }
  doc["best_acc"] = best;
  doc["rounds"] = result.records.size();
  doc["values_up_total"] = up;
  doc["values_down_total"] = down;
  doc["bytes_total"] = (up + down) * kBytesPerValue;
  doc["removed_total"] = removed;
  std::vector<std::size_t> shard_sizes;
  for (const auto& shard : result.partition.shards) shard_sizes.push_back(shard.size());
  doc["shard_sizes"] = shard_sizes;
  doc["config"] = ojson::parse(to_json(config));
  return doc.dump(2) + "\n";
}

namespace {

ExperimentConfig load_with_overrides(const CommandOptions& options) {
  ExperimentConfig config = load_config(options.config_path);
  if (options.output_dir) config.output_dir = options.output_dir->string();
  if (options.workers) config.workers = *options.workers;
  if (const auto seed = seed_override_from_env()) apply_seed_override(config, *seed);
  validate(config);
  return config;
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

std::filesystem::path ensure_output_dir(const ExperimentConfig& config) {
  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

int cmd_run(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig config = load_with_overrides(options);
    const PreparedData data = prepare_data(config);
    const RunResult result = run_experiment(config, data);
    const auto dir = ensure_output_dir(config);
    write_text(dir / "rounds.csv", rounds_csv(result.records));
    write_text(dir / "summary.json", summary_json(config, result));
    write_manifest(dir / "partition.manifest", result.spec, result.partition, data.train);
    out << "rounds: " << result.records.size() << "  final ACC: " << result.final_acc()
        << "\noutputs written to " << dir.string() << '\n';
    return static_cast<int>(kExitOk);
  });
}

int cmd_partition(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig config = load_with_overrides(options);
    const PreparedData data = prepare_data(config);
    const PartitionSpec spec = partition_spec(config);
    const Partition partition = dirichlet_partition(data.train, spec);
    const auto dir = ensure_output_dir(config);
    write_manifest(dir / "partition.manifest", spec, partition, data.train);

    const auto histograms = partition.class_histograms(data.train);
    std::ostringstream csv;
    csv << "client,size";
    for (std::size_t c = 0; c < data.train.num_classes(); ++c) csv << ",class_" << c;
    csv << '\n';
    for (std::size_t s = 0; s < histograms.size(); ++s) {
      csv << s << ',' << partition.shards[s].size();
      for (std::size_t count : histograms[s]) csv << ',' << count;
      csv << '\n';
    }
    write_text(dir / "partition_histograms.csv", csv.str());
    out << csv.str();
    return static_cast<int>(kExitOk);
  });
}

int cmd_noise_sweep(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ExperimentConfig config = load_with_overrides(options);
    if (options.sweep) config.sweep = parse_sweep(*options.sweep);
    if (config.sweep.empty()) throw ConfigError("/sweep", "no sweep points given");

    const PreparedData data = prepare_data(config);
    const auto dir = ensure_output_dir(config);
    const RunResult base = run_experiment(config, data, ChannelModel::noiseless());
    write_text(dir / "rounds_baseline.csv", rounds_csv(base.records));

    std::ostringstream table;
    table << "point,channel,loss_rate,sigma,scope,base_acc,perturbed_acc,degradation_pct\n";
    char line[256];
    for (std::size_t i = 0; i < config.sweep.size(); ++i) {
      const ChannelConfig& point = config.sweep[i];
      const RunResult run =
          run_experiment(config, data, make_channel(point, config.seeds.channel));
      write_text(dir / ("rounds_point_" + std::to_string(i) + ".csv"), rounds_csv(run.records));
      std::snprintf(line, sizeof line, "%zu,%s,%.6g,%.6g,%s,%.6f,%.6f,%.4f\n", i,
                    std::string(to_string(point.kind)).c_str(), point.loss_rate, point.sigma,
                    std::string(to_string(point.scope)).c_str(), base.final_acc(),
                    run.final_acc(), degradation(base.final_acc(), run.final_acc()));
      table << line;
    }
    write_text(dir / "noise_sweep.csv", table.str());
    out << table.str();
    return static_cast<int>(kExitOk);
  });
}

}  // namespace feduhd
