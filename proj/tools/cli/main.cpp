#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "config.hpp"
#include "pipeline.hpp"

namespace pl = imfgraph::pipeline;

namespace {

struct Flags {
  std::optional<std::string> config;
  pl::Overrides overrides;
  std::optional<std::string> imfs;
  std::optional<std::string> graphs;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "INI configuration file");
  cmd->add_option("--input", f.overrides.input, "input CSV");
  cmd->add_option("--column", f.overrides.column, "value column name (default: last column)");
  cmd->add_option("--date-column", f.overrides.date_column, "ISO date column name");
  cmd->add_option("--out-dir", f.overrides.out_dir, "output directory");
  cmd->add_option("--seed", f.overrides.seed, "random seed");
  cmd->add_option("--threads", f.overrides.threads, "worker threads (0 = all cores)");
}

void add_decompose(CLI::App* cmd, Flags& f) {
  cmd->add_option("--method", f.overrides.method, "emd, eemd or ceemdan");
  cmd->add_option("--trials", f.overrides.trials, "ensemble trials");
  cmd->add_option("--noise-width", f.overrides.noise_width, "noise amplitude as a fraction of the std");
}

void add_transform(CLI::App* cmd, Flags& f) {
  cmd->add_option("--percentile", f.overrides.percentile, "recurrence distance percentile");
  cmd->add_option("--transforms", f.overrides.transforms, "comma list of nvg, hvg, recurrence, or none");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"imfgraph: time series to IMF graphs"};
  app.set_version_flag("--version", pl::version());
  app.require_subcommand(1);

  Flags f;
  auto* suit = app.add_subcommand("suitability", "run the EMD-suitability test battery");
  auto* dec = app.add_subcommand("decompose", "decompose the input series into IMFs");
  auto* tr = app.add_subcommand("transform", "build graphs from an imfs CSV");
  auto* met = app.add_subcommand("metrics", "compute topology metrics for graph files");
  auto* run = app.add_subcommand("run", "run every stage and write a manifest");
  for (auto* cmd : {suit, dec, tr, met, run}) add_common(cmd, f);
  for (auto* cmd : {dec, run}) add_decompose(cmd, f);
  for (auto* cmd : {tr, run}) add_transform(cmd, f);
  tr->add_option("--imfs", f.imfs, "imfs CSV (default: <out-dir>/imfs.csv)");
  met->add_option("--graphs", f.graphs, "graph directory (default: <out-dir>/graphs)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  pl::PipelineConfig config;
  try {
    if (f.config) config = pl::load_config(*f.config);
    pl::apply_overrides(config, f.overrides);
  } catch (const std::exception& e) {
    std::cerr << "imfgraph: " << e.what() << '\n';
    return 1;
  }

  if (*suit) return pl::cmd_suitability(config);
  if (*dec) return pl::cmd_decompose(config);
  if (*tr) return pl::cmd_transform(config, f.imfs ? std::filesystem::path(*f.imfs) : config.out_dir / "imfs.csv");
  if (*met) return pl::cmd_metrics(config, f.graphs ? std::filesystem::path(*f.graphs) : config.out_dir / "graphs");
  return pl::cmd_run(config);
}
