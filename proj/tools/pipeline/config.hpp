#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "imfgraph/emd.hpp"
#include "imfgraph/graph.hpp"
#include "imfgraph/graph_metrics.hpp"
#include "imfgraph/stat_tests.hpp"
#include "json.hpp"

namespace imfgraph::pipeline {

/// Raised for malformed or unknown configuration entries.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct InputConfig {
  std::filesystem::path path;
  std::optional<std::string> column;        // header name
  std::optional<std::size_t> column_index;  // zero-based; default is the last column
  std::optional<std::string> date_column;
};

struct TransformConfig {
  std::vector<GraphKind> methods{GraphKind::kNvg, GraphKind::kHvg, GraphKind::kRecurrence};
  double percentile = 10.0;
  std::size_t theiler_window = 0;
  std::optional<std::size_t> ami_bins;
  std::optional<std::size_t> ami_max_lag;
  std::size_t ami_spline_order = 3;
  std::size_t fnn_max_dim = 10;
  double fnn_threshold = 0.10;
  bool include_residue = false;
};

struct PipelineConfig {
  InputConfig input;
  emd::Method method = emd::Method::kEemd;
  emd::EmdConfig emd;
  stats::SuitabilityOptions suitability;
  TransformConfig transform;
  metrics::MetricsOptions metrics;
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 0;
  std::size_t threads = 0;

  /// Pushes the shared seed and thread count into the per-module options.
  void sync();
};

/// Parses an INI document. Unknown sections or keys and unparsable values
/// raise ConfigError naming the offending entry. Relative input paths are
/// resolved against `base_dir`.
PipelineConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
PipelineConfig load_config(const std::filesystem::path& path);

/// Command-line overrides applied on top of the file configuration.
struct Overrides {
  std::optional<std::filesystem::path> input;
  std::optional<std::string> column;
  std::optional<std::string> date_column;
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> method;
  std::optional<std::size_t> trials;
  std::optional<double> noise_width;
  std::optional<double> percentile;
  std::optional<std::string> transforms;
  std::optional<std::size_t> threads;
};

void apply_overrides(PipelineConfig& config, const Overrides& o);

/// Comma-separated list of nvg, hvg, recurrence; "none" or "" for no transforms.
std::vector<GraphKind> parse_transform_list(std::string_view text);

/// Fully resolved configuration, suitable for the run manifest.
nlohmann::ordered_json config_json(const PipelineConfig& config);

}  // namespace imfgraph::pipeline
