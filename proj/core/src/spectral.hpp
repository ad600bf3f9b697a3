#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace imfgraph::detail {

/// Index of the largest-magnitude DFT bin in 1..n/2 of the mean-removed
/// signal (lowest index on ties); 0 for a constant signal.
std::size_t dominant_bin(std::span<const double> s);

/// |analytic signal| of the mean-removed input, using the one-sided
/// frequency-domain Hilbert multiplier without padding.
std::vector<double> analytic_amplitude(std::span<const double> s);

}  // namespace imfgraph::detail
