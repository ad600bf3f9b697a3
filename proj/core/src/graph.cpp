#include "imfgraph/graph.hpp"

#include <algorithm>

#include "imfgraph/error.hpp"

namespace imfgraph {

const char* to_string(GraphKind k) {
  switch (k) {
    case GraphKind::kNvg: return "nvg";
    case GraphKind::kHvg: return "hvg";
    case GraphKind::kRecurrence: return "recurrence";
  }
  return "unknown";
}

std::optional<GraphKind> parse_graph_kind(std::string_view text) {
  if (text == "nvg") return GraphKind::kNvg;
  if (text == "hvg") return GraphKind::kHvg;
  if (text == "recurrence") return GraphKind::kRecurrence;
  return std::nullopt;
}

void Graph::validate() const {
  if (node_features.size() != n) throw InvalidArgument("node feature count differs from node count");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.src >= e.dst) throw InvalidArgument("edge endpoints must satisfy src < dst");
    if (e.dst >= n) throw InvalidArgument("edge endpoint out of range");
    if (i > 0 && !(edges[i - 1] < e)) throw InvalidArgument("edges must be sorted and unique");
  }
}

Adjacency Adjacency::from(const Graph& g) {
  Adjacency a;
  a.offsets.assign(g.n + 1, 0);
  for (const Edge& e : g.edges) {
    ++a.offsets[e.src + 1];
    ++a.offsets[e.dst + 1];
  }
  for (std::size_t v = 0; v < g.n; ++v) a.offsets[v + 1] += a.offsets[v];
  a.neighbors.resize(a.offsets[g.n]);
  std::vector<std::size_t> fill(a.offsets.begin(), a.offsets.end() - 1);
  // Edges are sorted by (src, dst), so writing in order keeps each list sorted
  // except for back-references, which are sorted afterwards.
  for (const Edge& e : g.edges) {
    a.neighbors[fill[e.src]++] = e.dst;
    a.neighbors[fill[e.dst]++] = e.src;
  }
  for (std::size_t v = 0; v < g.n; ++v) {
    std::sort(a.neighbors.begin() + static_cast<std::ptrdiff_t>(a.offsets[v]),
              a.neighbors.begin() + static_cast<std::ptrdiff_t>(a.offsets[v + 1]));
  }
  return a;
}

}  // namespace imfgraph
