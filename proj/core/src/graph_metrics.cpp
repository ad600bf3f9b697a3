#include "imfgraph/graph_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "imfgraph/error.hpp"
#include "imfgraph/parallel.hpp"

namespace imfgraph::metrics {

std::uint32_t Components::largest() const {
  std::uint32_t best = 0;
  for (std::uint32_t c = 1; c < sizes.size(); ++c) {
    if (sizes[c] > sizes[best]) best = c;
  }
  return best;
}

namespace {

Components components_of(const Adjacency& adj) {
  const std::size_t n = adj.size();
  Components c;
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  c.labels.assign(n, kUnset);
  std::vector<std::uint32_t> queue;
  for (std::size_t root = 0; root < n; ++root) {
    if (c.labels[root] != kUnset) continue;
    const auto label = static_cast<std::uint32_t>(c.count++);
    std::size_t size = 0;
    queue.assign(1, static_cast<std::uint32_t>(root));
    c.labels[root] = label;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint32_t v = queue[head];
      ++size;
      for (const auto* it = adj.begin(v); it != adj.end(v); ++it) {
        if (c.labels[*it] == kUnset) {
          c.labels[*it] = label;
          queue.push_back(*it);
        }
      }
    }
    c.sizes.push_back(size);
  }
  return c;
}

struct PassResult {
  std::vector<double> dist_sum;       // indexed by node; filled for sources only
  std::vector<std::int64_t> ecc;      // indexed by node; -1 for non-sources
  std::vector<double> dependency;     // raw Brandes sums over ordered pairs
};

// BFS (and optionally Brandes accumulation) from each source. Sources are cut
// into a fixed number of contiguous blocks with private accumulators that are
// summed in block order, so output does not depend on the thread count.
PassResult source_pass(const Adjacency& adj, const std::vector<std::uint32_t>& sources, bool brandes,
                       std::size_t threads) {
  const std::size_t n = adj.size();
  PassResult out;
  out.dist_sum.assign(n, 0.0);
  out.ecc.assign(n, -1);
  if (brandes) out.dependency.assign(n, 0.0);
  if (sources.empty()) return out;

  const std::size_t blocks = std::min<std::size_t>(64, sources.size());
  std::vector<std::vector<double>> partial(brandes ? blocks : 0);
  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::size_t lo = sources.size() * b / blocks;
    const std::size_t hi = sources.size() * (b + 1) / blocks;
    std::vector<std::int64_t> dist(n, -1);
    std::vector<double> sigma(brandes ? n : 0, 0.0);
    std::vector<double> delta(brandes ? n : 0, 0.0);
    std::vector<std::uint32_t> order;
    order.reserve(n);
    if (brandes) partial[b].assign(n, 0.0);
    for (std::size_t si = lo; si < hi; ++si) {
      const std::uint32_t s = sources[si];
      order.assign(1, s);
      dist[s] = 0;
      if (brandes) sigma[s] = 1.0;
      double sum = 0.0;
      for (std::size_t head = 0; head < order.size(); ++head) {
        const std::uint32_t v = order[head];
        const std::int64_t dv = dist[v];
        sum += static_cast<double>(dv);
        for (const auto* it = adj.begin(v); it != adj.end(v); ++it) {
          const std::uint32_t w = *it;
          if (dist[w] < 0) {
            dist[w] = dv + 1;
            order.push_back(w);
          }
          if (brandes && dist[w] == dv + 1) sigma[w] += sigma[v];
        }
      }
      out.dist_sum[s] = sum;
      out.ecc[s] = dist[order.back()];
      if (brandes) {
        for (std::size_t k = order.size(); k-- > 1;) {
          const std::uint32_t w = order[k];
          const double coeff = (1.0 + delta[w]) / sigma[w];
          for (const auto* it = adj.begin(w); it != adj.end(w); ++it) {
            if (dist[*it] == dist[w] - 1) delta[*it] += sigma[*it] * coeff;
          }
          partial[b][w] += delta[w];
        }
      }
      for (std::uint32_t v : order) {
        dist[v] = -1;
        if (brandes) {
          sigma[v] = 0.0;
          delta[v] = 0.0;
        }
      }
    }
  });
  for (const auto& p : partial) {
    for (std::size_t v = 0; v < n; ++v) out.dependency[v] += p[v];
  }
  return out;
}

std::vector<std::uint32_t> all_nodes(std::size_t n) {
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), 0u);
  return v;
}

std::vector<double> normalize_betweenness(std::vector<double> raw, std::size_t n, double scale) {
  if (n < 3) return std::vector<double>(n, 0.0);
  const double nd = static_cast<double>(n);
  const double factor = scale / ((nd - 1.0) * (nd - 2.0));  // raw counts each pair twice
  for (double& v : raw) v *= factor;
  return raw;
}

std::vector<double> closeness_from(const Components& comp, const std::vector<double>& dist_sum) {
  const std::size_t n = comp.labels.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  for (std::size_t v = 0; v < n; ++v) {
    const double r = static_cast<double>(comp.sizes[comp.labels[v]]);
    if (r < 2.0 || dist_sum[v] <= 0.0) continue;
    out[v] = (r - 1.0) / static_cast<double>(n - 1) * ((r - 1.0) / dist_sum[v]);
  }
  return out;
}

DistanceStats distance_from(const Components& comp, const std::vector<std::int64_t>& ecc) {
  DistanceStats d;
  const std::size_t n = comp.labels.size();
  d.eccentricity.assign(n, -1);
  if (n == 0) return d;
  const std::uint32_t big = comp.largest();
  double total = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    if (comp.labels[v] != big) continue;
    d.eccentricity[v] = ecc[v];
    d.diameter = std::max(d.diameter, static_cast<std::size_t>(ecc[v]));
    total += static_cast<double>(ecc[v]);
    ++d.measured_size;
  }
  d.avg_eccentricity = total / static_cast<double>(d.measured_size);
  return d;
}

std::vector<std::uint32_t> members(const Components& comp, std::uint32_t label) {
  std::vector<std::uint32_t> out;
  for (std::size_t v = 0; v < comp.labels.size(); ++v) {
    if (comp.labels[v] == label) out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

MeanMax mean_max(const std::vector<double>& v) {
  MeanMax r;
  if (v.empty()) return r;
  r.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  r.max = *std::max_element(v.begin(), v.end());
  return r;
}

std::vector<std::uint32_t> sampled_sources(std::size_t n, const BetweennessOptions& opt) {
  if (!opt.sample_sources || *opt.sample_sources >= n) return all_nodes(n);
  if (*opt.sample_sources == 0) throw InvalidArgument("betweenness sample size must be positive");
  const auto pool = all_nodes(n);
  std::vector<std::uint32_t> picked;
  std::mt19937_64 rng(opt.seed);
  std::sample(pool.begin(), pool.end(), std::back_inserter(picked), *opt.sample_sources, rng);
  return picked;
}

}  // namespace

Components components(const Graph& g) { return components_of(Adjacency::from(g)); }

DistanceStats distance_stats(const Graph& g, std::size_t threads) {
  const auto adj = Adjacency::from(g);
  const auto comp = components_of(adj);
  if (g.n == 0) return {};
  const auto pass = source_pass(adj, members(comp, comp.largest()), false, threads);
  return distance_from(comp, pass.ecc);
}

ClusteringStats clustering_stats(const Graph& g, std::size_t threads) {
  const auto adj = Adjacency::from(g);
  const std::size_t n = g.n;
  ClusteringStats c;
  c.per_node.assign(n, 0.0);
  if (n == 0) return c;
  parallel_for(n, threads, [&](std::size_t v) {
    const std::size_t k = adj.degree(v);
    if (k < 2) return;
    std::size_t links = 0;  // each triangle through v seen twice
    for (const auto* it = adj.begin(v); it != adj.end(v); ++it) {
      const std::uint32_t u = *it;
      const auto* a = adj.begin(v);
      const auto* b = adj.begin(u);
      while (a != adj.end(v) && b != adj.end(u)) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++links;
          ++a;
          ++b;
        }
      }
    }
    const double kd = static_cast<double>(k);
    c.per_node[v] = static_cast<double>(links) / (kd * (kd - 1.0));
  });
  const double nd = static_cast<double>(n);
  c.mean = std::accumulate(c.per_node.begin(), c.per_node.end(), 0.0) / nd;
  double var = 0.0;
  for (double x : c.per_node) var += (x - c.mean) * (x - c.mean);
  c.std = std::sqrt(var / nd);
  std::vector<double> sorted = c.per_node;
  std::sort(sorted.begin(), sorted.end());
  c.median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return c;
}

std::vector<double> betweenness(const Graph& g, const BetweennessOptions& opt) {
  const auto adj = Adjacency::from(g);
  const auto sources = sampled_sources(g.n, opt);
  auto pass = source_pass(adj, sources, true, opt.threads);
  const double scale = sources.empty() ? 0.0 : static_cast<double>(g.n) / static_cast<double>(sources.size());
  return normalize_betweenness(std::move(pass.dependency), g.n, scale);
}

std::vector<double> closeness(const Graph& g, std::size_t threads) {
  const auto adj = Adjacency::from(g);
  const auto comp = components_of(adj);
  const auto pass = source_pass(adj, all_nodes(g.n), false, threads);
  return closeness_from(comp, pass.dist_sum);
}

EigenvectorResult eigenvector_centrality(const Graph& g, std::size_t max_iter, double tol) {
  if (g.edges.empty()) throw InvalidArgument("eigenvector centrality needs at least one edge");
  const auto adj = Adjacency::from(g);
  const std::size_t n = g.n;
  EigenvectorResult r;
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y(n);
  for (r.iterations = 1; r.iterations <= max_iter; ++r.iterations) {
    double norm = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      double acc = 0.0;
      for (const auto* it = adj.begin(v); it != adj.end(v); ++it) acc += x[*it];
      y[v] = acc;
      norm += acc * acc;
    }
    norm = std::sqrt(norm);
    double mixed_norm = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      y[v] = 0.5 * x[v] + 0.5 * y[v] / norm;
      mixed_norm += y[v] * y[v];
    }
    mixed_norm = std::sqrt(mixed_norm);
    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      y[v] /= mixed_norm;
      change = std::max(change, std::abs(y[v] - x[v]));
    }
    x.swap(y);
    if (change < tol) {
      r.converged = true;
      break;
    }
  }
  r.iterations = std::min(r.iterations, max_iter);
  r.values = std::move(x);
  return r;
}

TopologyReport topology_report(const Graph& g, const MetricsOptions& opt) {
  if (g.n == 0) throw InvalidArgument("topology_report needs at least one node");
  g.validate();
  const auto adj = Adjacency::from(g);
  const auto comp = components_of(adj);
  const double n = static_cast<double>(g.n);

  TopologyReport r;
  r.n = g.n;
  r.m = g.edges.size();
  r.density = g.n >= 2 ? 2.0 * static_cast<double>(r.m) / (n * (n - 1.0)) : 0.0;
  r.avg_degree = 2.0 * static_cast<double>(r.m) / n;
  r.components = comp.count;
  r.largest_component_size = comp.sizes[comp.largest()];

  const bool exact_bc = opt.betweenness && !opt.betweenness_options.sample_sources;
  const bool need_all = opt.closeness || exact_bc;
  PassResult pass;
  if (need_all) {
    pass = source_pass(adj, all_nodes(g.n), exact_bc, opt.threads);
  } else if (opt.distances) {
    pass = source_pass(adj, members(comp, comp.largest()), false, opt.threads);
  }
  if (opt.distances) {
    const auto d = distance_from(comp, pass.ecc);
    r.diameter = d.diameter;
    r.avg_eccentricity = d.avg_eccentricity;
  }
  if (opt.closeness) r.closeness = mean_max(closeness_from(comp, pass.dist_sum));
  if (opt.betweenness) {
    if (exact_bc) {
      r.betweenness = mean_max(normalize_betweenness(std::move(pass.dependency), g.n, 1.0));
    } else {
      auto bo = opt.betweenness_options;
      bo.threads = opt.threads;
      r.betweenness = mean_max(betweenness(g, bo));
    }
  }
  if (opt.clustering) {
    const auto c = clustering_stats(g, opt.threads);
    r.clustering_mean = c.mean;
    r.clustering_median = c.median;
    r.clustering_std = c.std;
  }
  if (opt.eigenvector) {
    if (g.edges.empty()) {
      r.eigenvector = MeanMax{};
    } else {
      const auto e = eigenvector_centrality(g, opt.eigen_max_iter, opt.eigen_tol);
      r.eigenvector = mean_max(e.values);
      r.eigenvector_converged = e.converged;
    }
  }
  return r;
}

}  // namespace imfgraph::metrics
