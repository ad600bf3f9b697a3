#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "imfgraph/error.hpp"
#include "imfgraph/series.hpp"
#include "imfgraph/ts2graph.hpp"

namespace imfgraph::ts2graph {

std::size_t default_ami_bins(std::size_t n) {
  const auto b = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n) / 5.0)));
  return std::clamp<std::size_t>(b, 1, 64);
}

std::size_t default_ami_max_lag(std::size_t n) { return std::max<std::size_t>(1, std::min<std::size_t>(100, n / 10)); }

namespace {

// Nonzero B-spline weights of one sample: `order` consecutive basis functions
// starting at `first`, on a clamped uniform knot vector with bins - order + 1
// intervals spanning [0, 1]. Order 1 is the plain histogram indicator.
struct SplineWeights {
  std::size_t first = 0;
  std::array<double, kMaxAmiSplineOrder> w{};
};

SplineWeights spline_weights(double u, std::size_t bins, std::size_t order) {
  const std::size_t intervals = bins - order + 1;
  const double z = std::clamp(u, 0.0, 1.0) * static_cast<double>(intervals);
  const std::size_t span = std::min(static_cast<std::size_t>(z), intervals - 1);
  // Knot t_j of the clamped vector, shifted so the active span is [span, span + 1).
  auto knot = [&](long j) {
    return std::clamp<double>(static_cast<double>(j), 0.0, static_cast<double>(intervals));
  };
  // Cox-de Boor triangle (NURBS Book A2.2) with knots indexed by interval.
  std::array<double, kMaxAmiSplineOrder> n{};
  std::array<double, kMaxAmiSplineOrder> left{}, right{};
  n[0] = 1.0;
  const long s = static_cast<long>(span);
  for (std::size_t d = 1; d < order; ++d) {
    left[d] = z - knot(s + 1 - static_cast<long>(d));
    right[d] = knot(s + static_cast<long>(d)) - z;
    double saved = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
      const double denom = right[r + 1] + left[d - r];
      const double tmp = denom > 0.0 ? n[r] / denom : 0.0;
      n[r] = saved + right[r + 1] * tmp;
      saved = left[d - r] * tmp;
    }
    n[d] = saved;
  }
  SplineWeights out;
  out.first = span;  // basis functions span .. span + order - 1
  out.w = n;
  return out;
}

}  // namespace

std::vector<double> ami(std::span<const double> s, std::size_t max_lag, std::size_t bins,
                        std::size_t spline_order) {
  const std::size_t n = s.size();
  if (max_lag == 0 || bins == 0) throw InvalidArgument("ami: max_lag and bins must be positive");
  if (spline_order == 0 || spline_order > kMaxAmiSplineOrder || spline_order > bins) {
    throw InvalidArgument("ami: spline order must lie in [1, min(bins, 4)]");
  }
  if (n <= max_lag + bins) throw InvalidArgument("ami: series shorter than max_lag + bins");
  const auto [lo_it, hi_it] = std::minmax_element(s.begin(), s.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  if (!(range > 0.0)) throw DegenerateData("ami: zero-variance input");

  const std::size_t k = spline_order;
  std::vector<SplineWeights> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = spline_weights((s[i] - lo) / range, bins, k);

  std::vector<double> out;
  out.reserve(max_lag);
  std::vector<double> joint(bins * bins);
  std::vector<double> px(bins), py(bins);
  for (std::size_t lag = 1; lag <= max_lag; ++lag) {
    std::fill(joint.begin(), joint.end(), 0.0);
    std::fill(px.begin(), px.end(), 0.0);
    std::fill(py.begin(), py.end(), 0.0);
    const std::size_t pairs = n - lag;
    for (std::size_t i = 0; i < pairs; ++i) {
      const auto& a = w[i];
      const auto& b = w[i + lag];
      for (std::size_t p = 0; p < k; ++p) {
        px[a.first + p] += a.w[p];
        py[b.first + p] += b.w[p];
        double* row = joint.data() + (a.first + p) * bins + b.first;
        for (std::size_t q = 0; q < k; ++q) row[q] += a.w[p] * b.w[q];
      }
    }
    const double total = static_cast<double>(pairs);
    double mi = 0.0;
    for (std::size_t a = 0; a < bins; ++a) {
      for (std::size_t b = 0; b < bins; ++b) {
        const double c = joint[a * bins + b];
        if (!(c > 0.0)) continue;
        mi += c / total * std::log(c * total / (px[a] * py[b]));
      }
    }
    out.push_back(mi);
  }
  return out;
}

std::size_t select_delay(std::span<const double> curve) {
  if (curve.empty()) throw InvalidArgument("select_delay: empty curve");
  for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
    if (!(curve[i] < curve[i - 1])) continue;
    std::size_t j = i;
    while (j + 1 < curve.size() && curve[j + 1] == curve[i]) ++j;
    if (j + 1 < curve.size() && curve[j + 1] > curve[i]) return i + 1;
    i = j;
  }
  return static_cast<std::size_t>(std::min_element(curve.begin(), curve.end()) - curve.begin()) + 1;
}

Embedding delay_embed(std::span<const double> s, std::size_t tau, std::size_t dim) {
  if (tau == 0 || dim == 0) throw InvalidArgument("delay_embed: tau and dim must be positive");
  const std::size_t span_len = (dim - 1) * tau;
  if (s.size() < span_len + 1) throw InvalidArgument("delay_embed: series too short for tau and dim");
  Embedding e;
  e.count = s.size() - span_len;
  e.dim = dim;
  e.data.resize(e.count * dim);
  for (std::size_t i = 0; i < e.count; ++i) {
    for (std::size_t c = 0; c < dim; ++c) e.data[i * dim + c] = s[i + c * tau];
  }
  return e;
}

FnnResult fnn(std::span<const double> s, std::size_t tau, const FnnOptions& opt) {
  if (tau == 0 || opt.max_dim == 0) throw InvalidArgument("fnn: tau and max_dim must be positive");
  if (s.size() < opt.max_dim * tau + 2) throw InvalidArgument("fnn: series too short for max_dim");
  const double sigma = sample_std(s);
  if (!(sigma > 0.0)) throw DegenerateData("fnn: constant series");
  // Distances below this floor are treated as the floor so exactly repeated
  // states are not flagged by the relative criterion through rounding noise.
  const double floor = 1e-9 * sigma;

  FnnResult result;
  for (std::size_t d = 1; d <= opt.max_dim; ++d) {
    const std::size_t count = s.size() - d * tau;  // coordinate d must exist
    std::size_t false_nn = 0;
    for (std::size_t i = 0; i < count; ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t nn = i;
      for (std::size_t j = 0; j < count; ++j) {
        if (j == i) continue;
        double dist2 = 0.0;
        for (std::size_t c = 0; c < d && dist2 < best; ++c) {
          const double diff = s[i + c * tau] - s[j + c * tau];
          dist2 += diff * diff;
        }
        if (dist2 < best) {
          best = dist2;
          nn = j;
        }
      }
      const double r_d = std::max(std::sqrt(best), floor);
      const double extra = std::abs(s[i + d * tau] - s[nn + d * tau]);
      const double r_next = std::sqrt(best + extra * extra);
      if (extra > opt.rtol * r_d || r_next / sigma > opt.atol) ++false_nn;
    }
    const double fraction = static_cast<double>(false_nn) / static_cast<double>(count);
    result.fractions.push_back(fraction);
    if (fraction < opt.threshold) {
      result.dim = d;
      return result;
    }
  }
  result.dim = opt.max_dim;
  result.saturated = true;
  return result;
}

namespace {

double distance(const Embedding& e, std::size_t i, std::size_t j) {
  const auto a = e.row(i);
  const auto b = e.row(j);
  double acc = 0.0;
  for (std::size_t c = 0; c < e.dim; ++c) {
    const double d = a[c] - b[c];
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace

double distance_percentile(const Embedding& e, double percentile, std::size_t theiler) {
  if (!(percentile > 0.0 && percentile <= 100.0)) {
    throw InvalidArgument("percentile must lie in (0, 100]");
  }
  std::vector<double> d;
  if (e.count > theiler + 1) d.reserve((e.count - theiler - 1) * (e.count - theiler) / 2);
  double max_d = 0.0;
  for (std::size_t i = 0; i < e.count; ++i) {
    for (std::size_t j = i + 1 + theiler; j < e.count; ++j) {
      d.push_back(distance(e, i, j));
      max_d = std::max(max_d, d.back());
    }
  }
  if (d.empty()) throw InvalidArgument("no point pairs outside the Theiler window");
  if (!(max_d > 0.0)) throw DegenerateData("all pairwise distances are zero");
  const double pos = percentile / 100.0 * static_cast<double>(d.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(lo);
  std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(lo), d.end());
  const double v_lo = d[lo];
  if (frac == 0.0 || lo + 1 >= d.size()) return v_lo;
  const double v_hi = *std::min_element(d.begin() + static_cast<std::ptrdiff_t>(lo) + 1, d.end());
  return v_lo + frac * (v_hi - v_lo);
}

Graph epsilon_graph(const Embedding& e, double epsilon, std::size_t theiler_window) {
  Graph g;
  g.n = e.count;
  g.kind = GraphKind::kRecurrence;
  g.node_features.resize(e.count);
  for (std::size_t i = 0; i < e.count; ++i) g.node_features[i] = e.row(i)[0];
  for (std::size_t i = 0; i < e.count; ++i) {
    for (std::size_t j = i + 1 + theiler_window; j < e.count; ++j) {
      if (distance(e, i, j) <= epsilon) {
        g.edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
      }
    }
  }
  return g;
}

RecurrenceResult recurrence_graph(std::span<const double> s, const RecurrenceOptions& opt) {
  RecurrenceResult result;
  EmbeddingParams& p = result.params;
  p.percentile = opt.percentile;

  if (opt.tau) {
    p.tau = *opt.tau;
  } else {
    const std::size_t max_lag = opt.ami_max_lag.value_or(default_ami_max_lag(s.size()));
    const std::size_t bins = opt.ami_bins.value_or(default_ami_bins(s.size()));
    p.tau = select_delay(ami(s, max_lag, bins, opt.ami_spline_order));
  }
  if (opt.dim) {
    p.dim = *opt.dim;
  } else {
    FnnOptions fo = opt.fnn;
    // Shrink the search range to what the series length supports.
    while (fo.max_dim > 1 && s.size() < fo.max_dim * p.tau + 2) --fo.max_dim;
    result.fnn = fnn(s, p.tau, fo);
    p.dim = std::max<std::size_t>(2, result.fnn->dim);
  }
  if (p.dim < 2) throw InvalidArgument("embedding dimension must be at least 2");

  const Embedding e = delay_embed(s, p.tau, p.dim);
  if (e.count < p.dim + 1) throw InvalidArgument("too few embedded points for the chosen tau and dim");
  p.epsilon = opt.epsilon ? *opt.epsilon : distance_percentile(e, opt.percentile, opt.theiler_window);
  if (opt.epsilon && !(p.epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");

  result.graph = epsilon_graph(e, p.epsilon, opt.theiler_window);
  Graph& g = result.graph;
  g.provenance.params = {{"tau", static_cast<double>(p.tau)},
                         {"dim", static_cast<double>(p.dim)},
                         {"epsilon", p.epsilon},
                         {"theiler_window", static_cast<double>(opt.theiler_window)}};
  if (!opt.epsilon) g.provenance.params["percentile"] = p.percentile;
  return result;
}

}  // namespace imfgraph::ts2graph
