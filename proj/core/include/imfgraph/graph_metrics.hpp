#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "imfgraph/graph.hpp"

namespace imfgraph::metrics {

struct Components {
  std::size_t count = 0;
  std::vector<std::uint32_t> labels;  // in [0, count), numbered by smallest member
  std::vector<std::size_t> sizes;
  /// Label of the largest component; the lowest label wins ties.
  std::uint32_t largest() const;
};

Components components(const Graph& g);

struct DistanceStats {
  std::size_t diameter = 0;
  double avg_eccentricity = 0.0;
  std::vector<std::int64_t> eccentricity;  // -1 outside the measured component
  std::size_t measured_size = 0;
};

/// Diameter and eccentricities of the largest connected component.
DistanceStats distance_stats(const Graph& g, std::size_t threads = 0);

struct ClusteringStats {
  double mean = 0.0;
  double median = 0.0;
  double std = 0.0;  // population standard deviation
  std::vector<double> per_node;
};

/// Local clustering 2T/(k(k-1)), zero for degree < 2, aggregated over all nodes.
ClusteringStats clustering_stats(const Graph& g, std::size_t threads = 0);

struct BetweennessOptions {
  std::optional<std::size_t> sample_sources;  // uniform source sampling; exact when unset
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

/// Brandes betweenness normalised by 2/((n-1)(n-2)) with n the full node count.
std::vector<double> betweenness(const Graph& g, const BetweennessOptions& options = {});

/// Wasserman-Faust closeness: ((r-1)/(n-1)) * ((r-1)/sum of distances) with r
/// the size of the node's component; isolated nodes score 0.
std::vector<double> closeness(const Graph& g, std::size_t threads = 0);

struct EigenvectorResult {
  std::vector<double> values;  // unit L2 norm, non-negative
  std::size_t iterations = 0;
  bool converged = false;
};

/// Damped power iteration x <- normalize(x/2 + Ax/(2|Ax|)) from the uniform
/// vector. Requires at least one edge.
EigenvectorResult eigenvector_centrality(const Graph& g, std::size_t max_iter = 1000, double tol = 1e-8);

struct MeanMax {
  double mean = 0.0;
  double max = 0.0;
};

struct TopologyReport {
  std::size_t n = 0;
  std::size_t m = 0;
  double density = 0.0;
  double avg_degree = 0.0;
  std::size_t components = 0;
  std::size_t largest_component_size = 0;
  std::size_t diameter = 0;
  double avg_eccentricity = 0.0;
  double clustering_mean = 0.0;
  double clustering_median = 0.0;
  double clustering_std = 0.0;
  std::optional<MeanMax> betweenness;
  std::optional<MeanMax> closeness;
  std::optional<MeanMax> eigenvector;
  bool eigenvector_converged = true;
};

struct MetricsOptions {
  bool distances = true;
  bool clustering = true;
  bool betweenness = true;
  bool closeness = true;
  bool eigenvector = true;
  BetweennessOptions betweenness_options;
  std::size_t eigen_max_iter = 1000;
  double eigen_tol = 1e-8;
  std::size_t threads = 0;
};

TopologyReport topology_report(const Graph& g, const MetricsOptions& options = {});

}  // namespace imfgraph::metrics
