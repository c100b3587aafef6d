// feduhd: federated unsupervised clustering simulator.
//
//   feduhd run         --config cfg.json [--output DIR] [--workers N]
//   feduhd partition   --config cfg.json [--output DIR]
//   feduhd noise-sweep --config cfg.json [--sweep packet_loss:0.1,gaussian:0.5]

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "feduhd/experiment.h"

namespace {

struct Args {
  std::string config;
  std::string output;
  std::size_t workers = 0;
  std::string sweep;
};

void add_common(CLI::App* cmd, Args& args) {
  cmd->add_option("--config", args.config, "Experiment config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--output", args.output, "Output directory (overrides output_dir)");
  cmd->add_option("--workers", args.workers, "Concurrent client workers (0 = auto)");
}

feduhd::CommandOptions to_options(const Args& args, const CLI::App* cmd) {
  feduhd::CommandOptions options;
  options.config_path = args.config;
  if (!args.output.empty()) options.output_dir = args.output;
  if (cmd->count("--workers") > 0) options.workers = args.workers;
  if (!args.sweep.empty()) options.sweep = args.sweep;
  return options;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unsupervised federated learning with hyperdimensional computing"};
  app.require_subcommand(1);

  Args args;
  auto* run = app.add_subcommand("run", "Partition, train for all rounds, evaluate");
  add_common(run, args);
  auto* partition = app.add_subcommand("partition", "Write the Dirichlet partition manifest");
  add_common(partition, args);
  auto* sweep = app.add_subcommand("noise-sweep", "Degradation under lossy channels");
  add_common(sweep, args);
  sweep->add_option("--sweep", args.sweep,
                    "Comma-separated channel points, e.g. packet_loss:0.3,gaussian:0.5");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : feduhd::kExitConfig;
  }

  if (run->parsed()) return feduhd::cmd_run(to_options(args, run), std::cout, std::cerr);
  if (partition->parsed()) {
    return feduhd::cmd_partition(to_options(args, partition), std::cout, std::cerr);
  }
  return feduhd::cmd_noise_sweep(to_options(args, sweep), std::cout, std::cerr);
}
