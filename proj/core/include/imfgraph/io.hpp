#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "imfgraph/emd.hpp"
#include "imfgraph/graph.hpp"
#include "imfgraph/graph_metrics.hpp"
#include "imfgraph/stat_tests.hpp"

// Text serialisations. Everything here is byte-stable: doubles use the
// shortest round-trip representation and edges are emitted in sorted order.
namespace imfgraph::io {

std::string format_double(double v);

void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

// Graph exports ---------------------------------------------------------------

/// One "src,dst" line per edge, no header.
std::string edges_csv(const Graph& g);
/// One "node,feature" line per node, no header.
std::string features_csv(const Graph& g);
/// {kind, params, n, edges, features, provenance}
std::string graph_json(const Graph& g);
Graph parse_graph_json(std::string_view text);

// Reports ---------------------------------------------------------------------

std::string suitability_json(const stats::SuitabilityReport& r);
std::string topology_json(const metrics::TopologyReport& r, std::string_view component,
                          std::string_view method);
std::string topology_csv_header();
std::string topology_csv_row(const metrics::TopologyReport& r, std::string_view component,
                             std::string_view method);

// Decompositions --------------------------------------------------------------

/// Columns imf_1..imf_K, residue; one row per sample.
std::string imfs_csv(const emd::Decomposition& d);
/// Named columns read back from an imfs CSV.
std::vector<std::pair<std::string, std::vector<double>>> parse_columns_csv(std::string_view text);
/// component,energy,variance,frequency_cycles,mean_amplitude,std
std::string imf_metrics_csv(const std::vector<emd::ImfMetrics>& m);
std::string reconstruction_json(const emd::ReconstructionReport& r);
std::string decomposition_json(const emd::Decomposition& d, const std::vector<emd::ImfMetrics>& m);

}  // namespace imfgraph::io
