#include "pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

#include <openssl/evp.h>

#include "imfgraph/emd.hpp"
#include "imfgraph/graph_metrics.hpp"
#include "imfgraph/io.hpp"
#include "imfgraph/parallel.hpp"
#include "imfgraph/ts2graph.hpp"

#ifndef IMFGRAPH_VERSION
#define IMFGRAPH_VERSION "0.0.0"
#endif

namespace imfgraph::pipeline {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Writes `content` under the output directory and records the relative path.
void emit(const PipelineConfig& c, StageReport& r, const std::string& rel, std::string_view content) {
  io::write_file(c.out_dir / rel, content);
  r.outputs.push_back(rel);
}

template <typename Fn>
StageReport guarded(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

std::size_t header_columns(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

struct TransformItem {
  std::string component;
  const std::vector<double>* values = nullptr;
  GraphKind kind = GraphKind::kNvg;
  std::optional<Graph> graph;
  std::string error;
};

Graph build_graph(const PipelineConfig& c, std::span<const double> v, GraphKind kind) {
  switch (kind) {
    case GraphKind::kNvg:
      return ts2graph::nvg(v);
    case GraphKind::kHvg:
      return ts2graph::hvg(v);
    case GraphKind::kRecurrence: {
      ts2graph::RecurrenceOptions opt;
      opt.percentile = c.transform.percentile;
      opt.theiler_window = c.transform.theiler_window;
      opt.ami_bins = c.transform.ami_bins;
      opt.ami_max_lag = c.transform.ami_max_lag;
      opt.ami_spline_order = c.transform.ami_spline_order;
      opt.fnn.max_dim = c.transform.fnn_max_dim;
      opt.fnn.threshold = c.transform.fnn_threshold;
      return ts2graph::recurrence_graph(v, opt).graph;
    }
  }
  throw InvalidArgument("unknown graph kind");
}

// Sort key for "<component>_<method>" stems: IMFs by number, then the
// residue, then anything else by name; methods in enum order.
std::tuple<int, std::size_t, std::string, int> graph_sort_key(const std::string& stem) {
  int method = 3;
  std::string component = stem;
  for (auto k : {GraphKind::kNvg, GraphKind::kHvg, GraphKind::kRecurrence}) {
    const std::string suffix = std::string("_") + to_string(k);
    if (stem.size() > suffix.size() && stem.ends_with(suffix)) {
      method = static_cast<int>(k);
      component = stem.substr(0, stem.size() - suffix.size());
      break;
    }
  }
  if (component.starts_with("imf_")) {
    const auto digits = component.substr(4);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit))
      return {0, std::stoul(digits), {}, method};
  }
  if (component == "residue") return {1, 0, {}, method};
  return {2, 0, component, method};
}

std::string stem_of(const fs::path& p) {
  auto name = p.filename().string();
  return name.ends_with(".json") ? name.substr(0, name.size() - 5) : name;
}

int fail(const char* command, const std::exception& e) {
  if (dynamic_cast<const StageError*>(&e)) {
    std::cerr << "imfgraph: error in " << e.what() << '\n';
  } else {
    std::cerr << "imfgraph " << command << ": error: " << e.what() << '\n';
  }
  return 1;
}

}  // namespace

const char* version() { return IMFGRAPH_VERSION; }

TimeSeries load_input(const PipelineConfig& c) {
  if (c.input.path.empty()) throw InvalidArgument("no input file given (use --input or [input] path)");
  ColumnRef col;
  if (c.input.column) {
    col = ColumnRef::named(*c.input.column);
  } else if (c.input.column_index) {
    col = ColumnRef::at(*c.input.column_index);
  } else {
    col = ColumnRef::at(header_columns(c.input.path) - 1);
  }
  return load_csv(c.input.path, col, c.input.date_column);
}

StageReport run_suitability(const PipelineConfig& c, stats::Verdict* verdict) {
  return guarded("suitability", [&] {
    Stopwatch clock;
    StageReport r;
    r.name = "suitability";
    const auto series = load_input(c);
    const auto report = stats::suitability_report(series, c.suitability);
    emit(c, r, "suitability.json", io::suitability_json(report));
    r.notes.push_back(std::string("verdict: ") + stats::to_string(report.verdict));
    if (verdict) *verdict = report.verdict;
    r.seconds = clock.seconds();
    return r;
  });
}

StageReport run_decompose(const PipelineConfig& c) {
  return guarded("decompose", [&] {
    Stopwatch clock;
    StageReport r;
    r.name = "decompose";
    const auto series = load_input(c);
    const auto d = emd::decompose(series, c.method, c.emd);
    const auto metrics = emd::characterize(d);
    const auto recon = emd::validate_reconstruction(d, series);
    // Serialise everything first so a failure leaves no partial output.
    const auto imfs = io::imfs_csv(d);
    const auto table = io::imf_metrics_csv(metrics);
    const auto rec = io::reconstruction_json(recon);
    const auto full = io::decomposition_json(d, metrics);
    emit(c, r, "imfs.csv", imfs);
    emit(c, r, "metrics.csv", table);
    emit(c, r, "reconstruction.json", rec);
    emit(c, r, "decomposition.json", full);
    r.notes.push_back(std::to_string(d.imfs.size()) + " IMFs + residue (" + emd::to_string(d.method) + ")");
    r.seconds = clock.seconds();
    return r;
  });
}

StageReport run_transform(const PipelineConfig& c, const fs::path& imfs_file) {
  return guarded("transform", [&] {
    Stopwatch clock;
    StageReport r;
    r.name = "transform";
    const auto columns = io::parse_columns_csv(io::read_file(imfs_file));
    if (c.transform.methods.empty()) {
      r.notes.push_back("empty stage: no transforms enabled");
      r.seconds = clock.seconds();
      return r;
    }

    std::vector<TransformItem> items;
    for (const auto& [name, values] : columns) {
      const bool take = name.starts_with("imf_") || (c.transform.include_residue && name == "residue");
      if (!take) continue;
      for (auto kind : c.transform.methods) items.push_back({name, &values, kind, std::nullopt, {}});
    }
    if (items.empty()) r.notes.push_back("empty stage: no components to transform");

    parallel_for(items.size(), c.threads, [&](std::size_t i) {
      auto& item = items[i];
      try {
        Graph g = build_graph(c, *item.values, item.kind);
        g.provenance.component = item.component;
        item.graph = std::move(g);
      } catch (const std::exception& e) {
        item.error = e.what();
      }
    });

    std::string params = "component,tau,dim,epsilon\n";
    const bool recurrence = std::find(c.transform.methods.begin(), c.transform.methods.end(),
                                      GraphKind::kRecurrence) != c.transform.methods.end();
    for (const auto& item : items) {
      const std::string method = to_string(item.kind);
      if (!item.graph) {
        r.failures.push_back({{"component", item.component}, {"method", method}, {"error", item.error}});
        continue;
      }
      const auto& g = *item.graph;
      const auto base = "graphs/" + item.component + "_" + method;
      emit(c, r, base + ".edges.csv", io::edges_csv(g));
      emit(c, r, base + ".features.csv", io::features_csv(g));
      emit(c, r, base + ".json", io::graph_json(g));
      if (item.kind == GraphKind::kRecurrence) {
        const auto& p = g.provenance.params;
        params += item.component + "," + io::format_double(p.at("tau")) + "," + io::format_double(p.at("dim")) +
                  "," + io::format_double(p.at("epsilon")) + "\n";
      }
    }
    if (recurrence && !items.empty()) emit(c, r, "graphs/params.csv", params);
    r.seconds = clock.seconds();
    return r;
  });
}

std::vector<fs::path> list_graph_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("graph directory not found: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return graph_sort_key(stem_of(a)) < graph_sort_key(stem_of(b));
  });
  return files;
}

StageReport run_metrics(const PipelineConfig& c, const std::vector<fs::path>& graph_files) {
  return guarded("metrics", [&] {
    Stopwatch clock;
    StageReport r;
    r.name = "metrics";
    std::string summary = io::topology_csv_header();
    if (graph_files.empty()) r.notes.push_back("empty stage: no graph files");
    for (const auto& file : graph_files) {
      const auto stem = stem_of(file);
      try {
        const auto g = io::parse_graph_json(io::read_file(file));
        const auto report = metrics::topology_report(g, c.metrics);
        const std::string method = to_string(g.kind);
        const auto component = g.provenance.component.empty() ? stem : g.provenance.component;
        emit(c, r, "topology/" + stem + ".json", io::topology_json(report, component, method));
        summary += io::topology_csv_row(report, component, method);
      } catch (const std::exception& e) {
        r.failures.push_back({{"graph", file.filename().string()}, {"error", e.what()}});
      }
    }
    emit(c, r, "topology_summary.csv", summary);
    r.seconds = clock.seconds();
    return r;
  });
}

std::string sha256_file(const fs::path& path) {
  const auto bytes = io::read_file(path);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 failed for " + path.string());
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

void write_manifest(const PipelineConfig& c, const std::vector<StageReport>& stages) {
  ordered_json m;
  m["tool"] = "imfgraph";
  m["version"] = version();
  m["config"] = config_json(c);
  ordered_json st = ordered_json::array();
  std::set<std::string> paths;
  for (const auto& s : stages) {
    ordered_json j;
    j["name"] = s.name;
    j["seconds"] = s.seconds;
    j["outputs"] = s.outputs.size();
    j["failures"] = s.failures;
    j["notes"] = s.notes;
    st.push_back(j);
    paths.insert(s.outputs.begin(), s.outputs.end());
  }
  m["stages"] = st;
  ordered_json files = ordered_json::array();
  for (const auto& p : paths) {
    const auto full = c.out_dir / p;
    files.push_back({{"path", p}, {"sha256", sha256_file(full)}, {"bytes", fs::file_size(full)}});
  }
  m["outputs"] = files;
  io::write_file(c.out_dir / kManifestFile, m.dump(2) + "\n");
}

int cmd_suitability(const PipelineConfig& c) {
  try {
    auto verdict = stats::Verdict::kUnsuitable;
    const auto stage = run_suitability(c, &verdict);
    write_manifest(c, {stage});
    std::cout << "verdict: " << stats::to_string(verdict) << '\n';
    switch (verdict) {
      case stats::Verdict::kSuitable:
        return 0;
      case stats::Verdict::kMarginal:
        return 2;
      case stats::Verdict::kUnsuitable:
        return 3;
    }
    return 1;
  } catch (const std::exception& e) {
    return fail("suitability", e);
  }
}

int cmd_decompose(const PipelineConfig& c) {
  try {
    write_manifest(c, {run_decompose(c)});
    return 0;
  } catch (const std::exception& e) {
    return fail("decompose", e);
  }
}

int cmd_transform(const PipelineConfig& c, const fs::path& imfs_file) {
  try {
    const auto stage = run_transform(c, imfs_file);
    write_manifest(c, {stage});
    for (const auto& f : stage.failures)
      std::cerr << "imfgraph transform: " << f["component"].get<std::string>() << "/"
                << f["method"].get<std::string>() << " failed: " << f["error"].get<std::string>() << '\n';
    return 0;
  } catch (const std::exception& e) {
    return fail("transform", e);
  }
}

int cmd_metrics(const PipelineConfig& c, const fs::path& graphs_dir) {
  try {
    const auto stage = run_metrics(c, list_graph_files(graphs_dir));
    write_manifest(c, {stage});
    for (const auto& f : stage.failures)
      std::cerr << "imfgraph metrics: " << f["graph"].get<std::string>()
                << " failed: " << f["error"].get<std::string>() << '\n';
    return 0;
  } catch (const std::exception& e) {
    return fail("metrics", e);
  }
}

int cmd_run(const PipelineConfig& c) {
  std::vector<StageReport> stages;
  try {
    stages.push_back(run_suitability(c));
    stages.push_back(run_decompose(c));
    stages.push_back(run_transform(c, c.out_dir / "imfs.csv"));
    std::vector<fs::path> graphs;
    for (const auto& p : stages.back().outputs) {
      if (p.ends_with(".json")) graphs.push_back(c.out_dir / p);
    }
    stages.push_back(run_metrics(c, graphs));
    write_manifest(c, stages);
    return 0;
  } catch (const StageError& e) {
    std::cerr << "imfgraph run: aborted in stage '" << e.stage() << "': " << e.what() << '\n';
    try {
      write_manifest(c, stages);
    } catch (const std::exception&) {
    }
    return 1;
  } catch (const std::exception& e) {
    return fail("run", e);
  }
}

}  // namespace imfgraph::pipeline
