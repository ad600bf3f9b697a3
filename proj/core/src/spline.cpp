#include "spline.hpp"

#include "imfgraph/error.hpp"

namespace imfgraph::detail {

std::vector<double> natural_spline_on_grid(std::span<const double> x, std::span<const double> y,
                                           std::size_t count) {
  const std::size_t k = x.size();
  if (k < 2 || y.size() != k) throw InvalidArgument("spline needs at least two knots");

  // Second derivatives M_i with M_0 = M_{k-1} = 0, via the Thomas algorithm.
  std::vector<double> m(k, 0.0);
  if (k > 2) {
    const std::size_t inner = k - 2;
    std::vector<double> diag(inner), upper(inner), rhs(inner);
    for (std::size_t i = 1; i + 1 < k; ++i) {
      const double h0 = x[i] - x[i - 1];
      const double h1 = x[i + 1] - x[i];
      diag[i - 1] = 2.0 * (h0 + h1);
      upper[i - 1] = h1;
      rhs[i - 1] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
    }
    for (std::size_t i = 1; i < inner; ++i) {
      const double lower = x[i + 1] - x[i];  // h_i, symmetric with upper[i-1]
      const double w = lower / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    m[inner] = rhs[inner - 1] / diag[inner - 1];
    for (std::size_t i = inner - 1; i-- > 0;) {
      m[i + 1] = (rhs[i] - upper[i] * m[i + 2]) / diag[i];
    }
  }

  std::vector<double> out(count);
  std::size_t seg = 0;
  for (std::size_t g = 0; g < count; ++g) {
    const double t = static_cast<double>(g);
    while (seg + 2 < k && t > x[seg + 1]) ++seg;
    const double h = x[seg + 1] - x[seg];
    const double a = (x[seg + 1] - t) / h;
    const double b = (t - x[seg]) / h;
    out[g] = a * y[seg] + b * y[seg + 1] +
             ((a * a * a - a) * m[seg] + (b * b * b - b) * m[seg + 1]) * h * h / 6.0;
  }
  return out;
}

}  // namespace imfgraph::detail
