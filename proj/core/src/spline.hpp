#pragma once

#include <span>
#include <vector>

namespace imfgraph::detail {

/// Natural cubic spline through (x, y) with strictly increasing x, evaluated
/// at the integer abscissae 0..count-1. Two knots degrade to a straight line.
std::vector<double> natural_spline_on_grid(std::span<const double> x, std::span<const double> y,
                                           std::size_t count);

}  // namespace imfgraph::detail
