#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "imfgraph/graph.hpp"

namespace imfgraph::ts2graph {

/// Natural visibility graph: (i, j) linked iff every intermediate sample lies
/// strictly below the straight line joining them. Divide-and-conquer on the
/// interval maximum.
Graph nvg(std::span<const double> s);

/// Horizontal visibility graph: (i, j) linked iff every intermediate sample is
/// strictly below min(y_i, y_j). Linear-time stack sweep.
Graph hvg(std::span<const double> s);

inline constexpr std::size_t kMaxAmiSplineOrder = 4;

/// Mutual information (nats) between s[0..n-L) and s[L..n) for L = 1..max_lag,
/// from a joint histogram with `bins` cells per axis on an equal-width grid
/// over the series range. Samples are spread over neighbouring cells with
/// B-spline weights of the given order; order 1 is the hard-binned histogram.
std::vector<double> ami(std::span<const double> s, std::size_t max_lag, std::size_t bins,
                        std::size_t spline_order = 3);

/// Default histogram resolution: ceil(sqrt(n/5)) capped at 64.
std::size_t default_ami_bins(std::size_t n);
/// Default lag range: min(100, n/10).
std::size_t default_ami_max_lag(std::size_t n);

/// 1-based lag of the first local minimum of an AMI curve; the first sample of
/// a flat valley wins, and the global argmin is the fallback.
std::size_t select_delay(std::span<const double> ami_curve);

struct FnnOptions {
  std::size_t max_dim = 10;
  double threshold = 0.10;
  double rtol = 15.0;
  double atol = 2.0;
};

struct FnnResult {
  std::size_t dim = 1;
  bool saturated = false;          // no dimension reached the threshold
  std::vector<double> fractions;   // false-neighbour fraction for d = 1, 2, ...
};

/// Smallest embedding dimension whose false-nearest-neighbour fraction falls
/// below the threshold (Kennel criteria).
FnnResult fnn(std::span<const double> s, std::size_t tau, const FnnOptions& options = {});

/// Row-major delay vectors: row i is (s[i], s[i+tau], ..., s[i+(dim-1)tau]).
struct Embedding {
  std::size_t count = 0;
  std::size_t dim = 0;
  std::vector<double> data;

  std::span<const double> row(std::size_t i) const { return {data.data() + i * dim, dim}; }
};

Embedding delay_embed(std::span<const double> s, std::size_t tau, std::size_t dim);

struct EmbeddingParams {
  std::size_t tau = 1;
  std::size_t dim = 2;
  double epsilon = 0.0;
  double percentile = 10.0;
};

struct RecurrenceOptions {
  std::optional<std::size_t> tau;     // default: select_delay(ami(s))
  std::optional<std::size_t> dim;     // default: max(2, fnn(s, tau))
  std::optional<double> epsilon;      // default: percentile of pair distances
  double percentile = 10.0;
  std::size_t theiler_window = 0;     // pairs with |i - j| <= window are ignored
  std::optional<std::size_t> ami_bins;
  std::optional<std::size_t> ami_max_lag;
  std::size_t ami_spline_order = 3;
  FnnOptions fnn;
};

struct RecurrenceResult {
  Graph graph;
  EmbeddingParams params;
  std::optional<FnnResult> fnn;
};

/// Linear-interpolated percentile (0..100) of the Euclidean distances between
/// distinct embedded points outside the Theiler window.
double distance_percentile(const Embedding& e, double percentile, std::size_t theiler_window = 0);

/// Edges between embedded points at Euclidean distance <= epsilon, skipping
/// pairs with |i - j| <= theiler_window. Node features are the first coordinate.
Graph epsilon_graph(const Embedding& e, double epsilon, std::size_t theiler_window = 0);

/// Recurrence network: nodes are delay vectors, edges join pairs at Euclidean
/// distance <= epsilon. Node features are the first embedding coordinate.
RecurrenceResult recurrence_graph(std::span<const double> s, const RecurrenceOptions& options = {});

}  // namespace imfgraph::ts2graph
