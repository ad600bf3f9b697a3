#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace imfgraph {

enum class GraphKind { kNvg, kHvg, kRecurrence };
const char* to_string(GraphKind k);
std::optional<GraphKind> parse_graph_kind(std::string_view text);

/// Undirected edge with src < dst.
struct Edge {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  auto operator<=>(const Edge&) const = default;
};

struct Provenance {
  std::string component;                 // e.g. "imf_3", "residue"
  std::map<std::string, double> params;  // tau, dim, epsilon, ...
};

/// Undirected simple graph with one real feature per node. Edges are kept
/// sorted lexicographically.
struct Graph {
  std::size_t n = 0;
  std::vector<Edge> edges;
  std::vector<double> node_features;
  GraphKind kind = GraphKind::kNvg;
  Provenance provenance;

  /// Throws InvalidArgument unless edges are sorted, unique, in range, with
  /// src < dst, and features match n.
  void validate() const;
  std::size_t edge_count() const noexcept { return edges.size(); }
};

/// Compressed adjacency (CSR) with sorted neighbour lists.
struct Adjacency {
  std::vector<std::size_t> offsets;  // size n + 1
  std::vector<std::uint32_t> neighbors;

  static Adjacency from(const Graph& g);
  std::size_t size() const noexcept { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::size_t degree(std::size_t v) const { return offsets[v + 1] - offsets[v]; }
  const std::uint32_t* begin(std::size_t v) const { return neighbors.data() + offsets[v]; }
  const std::uint32_t* end(std::size_t v) const { return neighbors.data() + offsets[v + 1]; }
};

}  // namespace imfgraph
