#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "imfgraph/io.hpp"
#include "imfgraph/ts2graph.hpp"

namespace imfgraph::pipeline {
namespace {

namespace pt = boost::property_tree;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* expected) {
  throw ConfigError("config: " + key + " = '" + value + "' is not " + expected);
}

std::size_t to_size(const std::string& key, const std::string& value) {
  std::size_t out = 0;
  const auto v = trim(value);
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || p != v.data() + v.size()) bad_value(key, value, "a non-negative integer");
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto v = trim(value);
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || p != v.data() + v.size()) bad_value(key, value, "a non-negative integer");
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto v = trim(value);
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || p != v.data() + v.size()) bad_value(key, value, "a number");
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  const auto v = lower(trim(value));
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  bad_value(key, value, "a boolean");
}

std::vector<int> to_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  std::stringstream ss(value);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto n = to_size(key, item);
    out.push_back(static_cast<int>(n));
  }
  if (out.empty()) bad_value(key, value, "a comma-separated integer list");
  return out;
}

emd::Method to_method(const std::string& key, const std::string& value) {
  const auto m = emd::parse_method(lower(trim(value)));
  if (!m) bad_value(key, value, "one of emd, eemd, ceemdan");
  return *m;
}

// Drops a trailing "; comment" or "# comment" preceded by whitespace.
std::string strip_comment(const std::string& value) {
  for (std::size_t i = 1; i < value.size(); ++i) {
    if ((value[i] == ';' || value[i] == '#') && (value[i - 1] == ' ' || value[i - 1] == '\t'))
      return trim(value.substr(0, i));
  }
  return value;
}

using Setter = void (*)(PipelineConfig&, const std::string& key, const std::string& value);

// Every accepted key, as "section.key".
const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"input.path", [](PipelineConfig& c, const std::string&, const std::string& v) { c.input.path = trim(v); }},
      {"input.column", [](PipelineConfig& c, const std::string&, const std::string& v) { c.input.column = trim(v); }},
      {"input.column_index",
       [](PipelineConfig& c, const std::string& k, const std::string& v) { c.input.column_index = to_size(k, v); }},
      {"input.date_column",
       [](PipelineConfig& c, const std::string&, const std::string& v) { c.input.date_column = trim(v); }},

      {"emd.method", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.method = to_method(k, v); }},
      {"emd.max_imfs", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.emd.max_imfs = to_size(k, v); }},
      {"emd.sd_thresh", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.emd.sd_thresh = to_double(k, v); }},
      {"emd.s_number", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.emd.s_number = to_size(k, v); }},
      {"emd.fixe_h", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.emd.fixe_h = to_size(k, v); }},
      {"emd.trials", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.emd.trials = to_size(k, v); }},
      {"emd.noise_width",
       [](PipelineConfig& c, const std::string& k, const std::string& v) { c.emd.noise_width = to_double(k, v); }},
      {"emd.residue_range_ratio",
       [](PipelineConfig& c, const std::string& k, const std::string& v) { c.emd.residue_range_ratio = to_double(k, v); }},

      {"suitability.bds_dims",
       [](PipelineConfig& c, const std::string& k, const std::string& v) { c.suitability.bds_dims = to_int_list(k, v); }},
      {"suitability.bds_epsilon_frac",
       [](PipelineConfig& c, const std::string& k, const std::string& v) { c.suitability.bds_epsilon_frac = to_double(k, v); }},
      {"suitability.ljung_box_lags",
       [](PipelineConfig& c, const std::string& k, const std::string& v) { c.suitability.ljung_box_lags = to_size(k, v); }},
      {"suitability.acf_lags",
       [](PipelineConfig& c, const std::string& k, const std::string& v) { c.suitability.acf_lags = to_size(k, v); }},
      {"suitability.volatility_window",
       [](PipelineConfig& c, const std::string& k, const std::string& v) { c.suitability.volatility_window = to_size(k, v); }},

      {"transform.methods",
       [](PipelineConfig& c, const std::string&, const std::string& v) { c.transform.methods = parse_transform_list(v); }},
      {"transform.percentile",
       [](PipelineConfig& c, const std::string& k, const std::string& v) { c.transform.percentile = to_double(k, v); }},
      {"transform.theiler_window",
       [](PipelineConfig& c, const std::string& k, const std::string& v) { c.transform.theiler_window = to_size(k, v); }},
      {"transform.ami_bins",
       [](PipelineConfig& c, const std::string& k, const std::string& v) { c.transform.ami_bins = to_size(k, v); }},
      {"transform.ami_max_lag",
       [](PipelineConfig& c, const std::string& k, const std::string& v) { c.transform.ami_max_lag = to_size(k, v); }},
      {"transform.ami_spline_order",
       [](PipelineConfig& c, const std::string& k, const std::string& v) { c.transform.ami_spline_order = to_size(k, v); }},
      {"transform.fnn_max_dim",
       [](PipelineConfig& c, const std::string& k, const std::string& v) { c.transform.fnn_max_dim = to_size(k, v); }},
      {"transform.fnn_threshold",
       [](PipelineConfig& c, const std::string& k, const std::string& v) { c.transform.fnn_threshold = to_double(k, v); }},
      {"transform.include_residue",
       [](PipelineConfig& c, const std::string& k, const std::string& v) { c.transform.include_residue = to_bool(k, v); }},

      {"metrics.distances", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.metrics.distances = to_bool(k, v); }},
      {"metrics.clustering",
       [](PipelineConfig& c, const std::string& k, const std::string& v) { c.metrics.clustering = to_bool(k, v); }},
      {"metrics.betweenness",
       [](PipelineConfig& c, const std::string& k, const std::string& v) { c.metrics.betweenness = to_bool(k, v); }},
      {"metrics.closeness", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.metrics.closeness = to_bool(k, v); }},
      {"metrics.eigenvector",
       [](PipelineConfig& c, const std::string& k, const std::string& v) { c.metrics.eigenvector = to_bool(k, v); }},
      {"metrics.betweenness_samples",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         const auto n = to_size(k, v);
         c.metrics.betweenness_options.sample_sources = n == 0 ? std::nullopt : std::optional<std::size_t>(n);
       }},
      {"metrics.eigen_max_iter",
       [](PipelineConfig& c, const std::string& k, const std::string& v) { c.metrics.eigen_max_iter = to_size(k, v); }},
      {"metrics.eigen_tol", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.metrics.eigen_tol = to_double(k, v); }},

      {"run.out_dir", [](PipelineConfig& c, const std::string&, const std::string& v) { c.out_dir = trim(v); }},
      {"run.seed", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.seed = to_u64(k, v); }},
      {"run.threads", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.threads = to_size(k, v); }},
  };
  return table;
}

void validate(const PipelineConfig& c) {
  c.emd.validate();
  if (!(c.transform.percentile > 0.0 && c.transform.percentile <= 100.0))
    throw ConfigError("config: transform.percentile must be in (0, 100]");
  if (c.transform.ami_spline_order == 0 || c.transform.ami_spline_order > ts2graph::kMaxAmiSplineOrder)
    throw ConfigError("config: transform.ami_spline_order must be in [1, " +
                      std::to_string(ts2graph::kMaxAmiSplineOrder) + "]");
  if (c.transform.fnn_max_dim == 0) throw ConfigError("config: transform.fnn_max_dim must be positive");
  if (c.input.column && c.input.column_index)
    throw ConfigError("config: input.column and input.column_index are mutually exclusive");
}

}  // namespace

void PipelineConfig::sync() {
  emd.seed = seed;
  emd.threads = threads;
  metrics.threads = threads;
  metrics.betweenness_options.seed = seed;
  metrics.betweenness_options.threads = threads;
}

std::vector<GraphKind> parse_transform_list(std::string_view text) {
  std::vector<GraphKind> out;
  const auto all = lower(trim(text));
  if (all.empty() || all == "none") return out;
  std::stringstream ss(all);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto k = parse_graph_kind(trim(item));
    if (!k) throw ConfigError("unknown transform '" + trim(item) + "' (expected nvg, hvg, recurrence or none)");
    if (std::find(out.begin(), out.end(), *k) == out.end()) out.push_back(*k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PipelineConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  PipelineConfig c;
  const auto& table = setters();
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ConfigError("config: key '" + section + "' must be inside a section");
    static const std::set<std::string> sections{"input", "emd", "suitability", "transform", "metrics", "run"};
    if (!sections.count(section)) throw ConfigError("config: unknown section [" + section + "]");
    for (const auto& [key, node] : body) {
      const auto full = section + "." + key;
      const auto it = table.find(full);
      if (it == table.end()) throw ConfigError("config: unknown key '" + full + "'");
      it->second(c, full, strip_comment(node.data()));
    }
  }
  if (!c.input.path.empty() && c.input.path.is_relative() && !base_dir.empty()) c.input.path = base_dir / c.input.path;
  validate(c);
  c.sync();
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const IoError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return parse_config(text, path.parent_path());
}

void apply_overrides(PipelineConfig& c, const Overrides& o) {
  if (o.input) c.input.path = *o.input;
  if (o.column) {
    c.input.column = *o.column;
    c.input.column_index.reset();
  }
  if (o.date_column) c.input.date_column = *o.date_column;
  if (o.out_dir) c.out_dir = *o.out_dir;
  if (o.seed) c.seed = *o.seed;
  if (o.method) c.method = to_method("--method", *o.method);
  if (o.trials) c.emd.trials = *o.trials;
  if (o.noise_width) c.emd.noise_width = *o.noise_width;
  if (o.percentile) c.transform.percentile = *o.percentile;
  if (o.transforms) c.transform.methods = parse_transform_list(*o.transforms);
  if (o.threads) c.threads = *o.threads;
  validate(c);
  c.sync();
}

nlohmann::ordered_json config_json(const PipelineConfig& c) {
  using nlohmann::ordered_json;
  ordered_json input;
  input["path"] = c.input.path.generic_string();
  input["column"] = c.input.column ? ordered_json(*c.input.column) : ordered_json(nullptr);
  input["column_index"] = c.input.column_index ? ordered_json(*c.input.column_index) : ordered_json(nullptr);
  input["date_column"] = c.input.date_column ? ordered_json(*c.input.date_column) : ordered_json(nullptr);

  ordered_json emd;
  emd["method"] = emd::to_string(c.method);
  emd["max_imfs"] = c.emd.max_imfs;
  emd["sd_thresh"] = c.emd.sd_thresh;
  emd["s_number"] = c.emd.s_number;
  emd["fixe_h"] = c.emd.fixe_h;
  emd["trials"] = c.emd.trials;
  emd["noise_width"] = c.emd.noise_width;
  emd["residue_range_ratio"] = c.emd.residue_range_ratio;

  ordered_json suit;
  suit["bds_dims"] = c.suitability.bds_dims;
  suit["bds_epsilon_frac"] = c.suitability.bds_epsilon_frac;
  suit["ljung_box_lags"] = c.suitability.ljung_box_lags;
  suit["acf_lags"] = c.suitability.acf_lags;
  suit["volatility_window"] = c.suitability.volatility_window;

  ordered_json tr;
  ordered_json methods = ordered_json::array();
  for (auto k : c.transform.methods) methods.push_back(to_string(k));
  tr["methods"] = methods;
  tr["percentile"] = c.transform.percentile;
  tr["theiler_window"] = c.transform.theiler_window;
  tr["ami_bins"] = c.transform.ami_bins ? ordered_json(*c.transform.ami_bins) : ordered_json(nullptr);
  tr["ami_max_lag"] = c.transform.ami_max_lag ? ordered_json(*c.transform.ami_max_lag) : ordered_json(nullptr);
  tr["ami_spline_order"] = c.transform.ami_spline_order;
  tr["fnn_max_dim"] = c.transform.fnn_max_dim;
  tr["fnn_threshold"] = c.transform.fnn_threshold;
  tr["include_residue"] = c.transform.include_residue;

  ordered_json met;
  met["distances"] = c.metrics.distances;
  met["clustering"] = c.metrics.clustering;
  met["betweenness"] = c.metrics.betweenness;
  met["closeness"] = c.metrics.closeness;
  met["eigenvector"] = c.metrics.eigenvector;
  met["betweenness_samples"] = c.metrics.betweenness_options.sample_sources.value_or(0);
  met["eigen_max_iter"] = c.metrics.eigen_max_iter;
  met["eigen_tol"] = c.metrics.eigen_tol;

  ordered_json run;
  run["out_dir"] = c.out_dir.generic_string();
  run["seed"] = c.seed;
  run["threads"] = c.threads;

  ordered_json out;
  out["input"] = input;
  out["emd"] = emd;
  out["suitability"] = suit;
  out["transform"] = tr;
  out["metrics"] = met;
  out["run"] = run;
  return out;
}

}  // namespace imfgraph::pipeline
