#include "imfgraph/ts2graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "imfgraph/error.hpp"

namespace imfgraph::ts2graph {

namespace {

void check_series(std::span<const double> s) {
  if (s.size() < 2) throw InvalidArgument("visibility graphs need at least 2 samples");
  if (s.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("series too long for 32-bit node ids");
  }
  for (double v : s) {
    if (!std::isfinite(v)) throw InvalidArgument("visibility graphs need finite values");
  }
}

Graph finish(std::span<const double> s, GraphKind kind, std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  Graph g;
  g.n = s.size();
  g.edges = std::move(edges);
  g.node_features.assign(s.begin(), s.end());
  g.kind = kind;
  return g;
}

}  // namespace

Graph nvg(std::span<const double> s) {
  check_series(s);
  std::vector<Edge> edges;
  edges.reserve(s.size() * 3);
  // Intervals [lo, hi] still to process. The interval maximum sees only
  // points inside the interval and blocks every pair straddling it.
  std::vector<std::pair<std::size_t, std::size_t>> work{{0, s.size() - 1}};
  while (!work.empty()) {
    const auto [lo, hi] = work.back();
    work.pop_back();
    if (lo >= hi) continue;
    std::size_t top = lo;
    for (std::size_t i = lo + 1; i <= hi; ++i) {
      if (s[i] > s[top]) top = i;
    }
    const double y = s[top];
    double max_slope = -std::numeric_limits<double>::infinity();
    for (std::size_t j = top + 1; j <= hi; ++j) {
      const double slope = (s[j] - y) / static_cast<double>(j - top);
      if (slope > max_slope) {
        edges.push_back({static_cast<std::uint32_t>(top), static_cast<std::uint32_t>(j)});
        max_slope = slope;
      }
    }
    max_slope = -std::numeric_limits<double>::infinity();
    for (std::size_t k = top; k-- > lo;) {
      const double slope = (s[k] - y) / static_cast<double>(top - k);
      if (slope > max_slope) {
        edges.push_back({static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(top)});
        max_slope = slope;
      }
    }
    if (top > lo) work.emplace_back(lo, top - 1);
    if (top < hi) work.emplace_back(top + 1, hi);
  }
  return finish(s, GraphKind::kNvg, std::move(edges));
}

Graph hvg(std::span<const double> s) {
  check_series(s);
  std::vector<Edge> edges;
  edges.reserve(s.size() * 2);
  std::vector<std::uint32_t> stack;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const auto jj = static_cast<std::uint32_t>(j);
    while (!stack.empty() && s[stack.back()] < s[j]) {
      edges.push_back({stack.back(), jj});
      stack.pop_back();
    }
    if (!stack.empty()) {
      edges.push_back({stack.back(), jj});
      if (s[stack.back()] == s[j]) stack.pop_back();
    }
    stack.push_back(jj);
  }
  return finish(s, GraphKind::kHvg, std::move(edges));
}

}  // namespace imfgraph::ts2graph
