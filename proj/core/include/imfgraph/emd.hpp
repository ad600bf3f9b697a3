#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "imfgraph/error.hpp"
#include "imfgraph/series.hpp"

namespace imfgraph::emd {

/// Raised when a signal has too few extrema to build envelopes.
class InsufficientExtrema : public DegenerateData {
 public:
  using DegenerateData::DegenerateData;
};

/// Sifting and ensemble parameters. Defaults reproduce the reference EEMD
/// setup. A stopping rule is disabled by setting it to zero; at most one of
/// sd_thresh, s_number, fixe_h may be disabled.
struct EmdConfig {
  std::size_t max_imfs = 14;
  double sd_thresh = 0.25;
  std::size_t s_number = 8;   // hard iteration cap is 100 * s_number
  std::size_t fixe_h = 5;     // consecutive iterations the IMF condition must hold
  std::size_t trials = 100;   // ensemble methods only
  double noise_width = 0.05;  // fraction of the signal's standard deviation
  std::uint64_t seed = 0;
  std::size_t threads = 0;    // 0 = hardware concurrency; results are thread-count independent
  /// Decomposition ends once the residue's peak-to-peak range drops below this
  /// fraction of the source's range (0 disables).
  double residue_range_ratio = 1e-3;

  /// Throws InvalidArgument if the configuration is inconsistent.
  void validate() const;
  std::size_t iteration_cap() const { return s_number > 0 ? 100 * s_number : 1000; }
};

enum class Method { kEmd, kEemd, kCeemdan };
const char* to_string(Method m);
std::optional<Method> parse_method(std::string_view text);

struct Extrema {
  std::vector<std::size_t> maxima;
  std::vector<std::size_t> minima;
};

struct ImfMetrics {
  double energy = 0.0;
  double variance = 0.0;
  std::size_t dominant_frequency_cycles = 0;
  double mean_amplitude = 0.0;
  double std = 0.0;
};

enum class StopRule { kImfCondition, kSdCriterion, kIterationCap, kEnvelopeFailure };
const char* to_string(StopRule r);

struct SiftResult {
  std::vector<double> imf;
  std::size_t iterations = 0;
  StopRule rule = StopRule::kIterationCap;
};

struct Imf {
  std::vector<double> values;
  std::size_t index = 0;  // 1-based
  std::optional<ImfMetrics> metrics;
  std::optional<SiftResult> sift_info;  // plain EMD only; values moved out
};

struct Decomposition {
  std::vector<Imf> imfs;
  std::vector<double> residue;
  Method method = Method::kEmd;
  EmdConfig config;
  std::size_t source_length = 0;
};

struct ReconstructionReport {
  double imf_rmse = 0.0;  // sum of IMFs (no residue) vs source
  double imf_mae = 0.0;
  double full_max_abs_error = 0.0;  // IMFs + residue vs source
  double residue_mean = 0.0;
  double residue_std = 0.0;
  double residue_min = 0.0;
  double residue_max = 0.0;
  std::size_t residue_extrema = 0;
  bool residue_monotonic = false;
};

/// Interior local extrema. A run of equal values bounded by strictly lower
/// (higher) neighbours counts once, at the run midpoint rounded down.
Extrema find_extrema(std::span<const double> s);

/// Mean of the upper and lower natural-cubic-spline envelopes. The two
/// extrema nearest each end are mirrored across that end before fitting.
std::vector<double> envelope_mean(std::span<const double> s);

/// True when |#extrema - #zero crossings| <= 1.
bool satisfies_imf_condition(std::span<const double> s);

/// Extracts one IMF candidate. Stopping-rule precedence: IMF condition held
/// for fixe_h iterations, then the SD criterion (only on an iterate that meets
/// the IMF condition), then the iteration cap. An envelope failure after the
/// first iteration returns the current iterate.
SiftResult sift(std::span<const double> s, const EmdConfig& config);

Decomposition emd(const TimeSeries& s, const EmdConfig& config = {});
Decomposition eemd(const TimeSeries& s, const EmdConfig& config = {});
Decomposition ceemdan(const TimeSeries& s, const EmdConfig& config = {});
Decomposition decompose(const TimeSeries& s, Method method, const EmdConfig& config = {});

/// Energy, variance, dominant frequency in whole cycles over the record,
/// mean analytic-signal amplitude, and standard deviation for each IMF.
std::vector<ImfMetrics> characterize(const Decomposition& d);
ImfMetrics characterize_component(std::span<const double> v);

ReconstructionReport validate_reconstruction(const Decomposition& d, const TimeSeries& source);

}  // namespace imfgraph::emd
