#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"
#include "imfgraph/stat_tests.hpp"
#include "json.hpp"

namespace imfgraph::pipeline {

inline constexpr const char* kManifestFile = "manifest.json";

/// Outcome of one stage. Output paths are relative to the output directory.
struct StageReport {
  std::string name;
  double seconds = 0.0;
  std::vector<std::string> outputs;
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();  // per-item, non-fatal
  std::vector<std::string> notes;
};

/// Raised when a stage cannot complete; carries the stage name.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

TimeSeries load_input(const PipelineConfig& config);

/// Writes suitability.json.
StageReport run_suitability(const PipelineConfig& config, stats::Verdict* verdict = nullptr);
/// Writes imfs.csv, metrics.csv, reconstruction.json, decomposition.json.
StageReport run_decompose(const PipelineConfig& config);
/// Reads an imfs CSV and writes graphs/<component>_<method>.{edges.csv,features.csv,json}
/// and graphs/params.csv. Per-item failures are recorded, not thrown.
StageReport run_transform(const PipelineConfig& config, const std::filesystem::path& imfs_file);
/// Reads graph JSON files and writes topology/<name>.json and topology_summary.csv.
StageReport run_metrics(const PipelineConfig& config, const std::vector<std::filesystem::path>& graph_files);

/// Graph JSON files in a directory, ordered by component number then method.
std::vector<std::filesystem::path> list_graph_files(const std::filesystem::path& dir);

/// Writes manifest.json: config snapshot, stage timings and notes, and a
/// SHA-256 inventory of every output the stages produced.
void write_manifest(const PipelineConfig& config, const std::vector<StageReport>& stages);

std::string sha256_file(const std::filesystem::path& path);

// Subcommands. Each returns the process exit code and reports errors on stderr.
int cmd_suitability(const PipelineConfig& config);
int cmd_decompose(const PipelineConfig& config);
int cmd_transform(const PipelineConfig& config, const std::filesystem::path& imfs_file);
int cmd_metrics(const PipelineConfig& config, const std::filesystem::path& graphs_dir);
int cmd_run(const PipelineConfig& config);

const char* version();

}  // namespace imfgraph::pipeline
