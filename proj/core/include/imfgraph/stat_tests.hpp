#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "imfgraph/series.hpp"

namespace imfgraph::stats {

enum class Regression { kConstant, kConstantTrend };

/// Outcome of one hypothesis test.
///
/// `p_clamped` is set when the p-value sits at a table or response-surface
/// bound rather than being interpolated. `degenerate` marks a test that could
/// not be computed on deterministic input; such a result never rejects.
struct TestResult {
  std::string name;
  double statistic = 0.0;
  double p_value = 1.0;
  bool p_clamped = false;
  std::map<std::string, double> critical_values;  // keyed "1%", "5%", ...
  std::string null_hypothesis;
  bool reject_at_5pct = false;
  bool degenerate = false;
  std::string note;
  std::map<std::string, double> extras;  // lags, nobs, skewness, ...
};

/// Augmented Dickey-Fuller unit-root test. Lag order is chosen by AIC over
/// 0..max_lag on a common sample (default max_lag = floor(12 (n/100)^(1/4))),
/// then the regression is refit on the full sample for the chosen lag.
TestResult adf(std::span<const double> s, Regression regression = Regression::kConstant,
               std::optional<std::size_t> max_lag = std::nullopt);

/// KPSS stationarity test with a Bartlett-kernel long-run variance
/// (default bandwidth floor(4 (n/100)^(1/4))). p-value clamped to [0.01, 0.10].
TestResult kpss(std::span<const double> s, Regression regression = Regression::kConstant,
                std::optional<std::size_t> lags = std::nullopt);

/// BDS independence test on the residuals of an OLS AR(1) fit of `s`.
/// One result per embedding dimension; epsilon = epsilon_frac * std(residuals).
std::vector<TestResult> bds(std::span<const double> s, std::span<const int> dims,
                            double epsilon_frac = 1.0);

/// BDS statistics computed directly on `x` (no AR prefilter).
std::vector<TestResult> bds_raw(std::span<const double> x, std::span<const int> dims,
                                double epsilon);

/// Residuals of x_t = a + b x_{t-1} + e_t fit by least squares.
std::vector<double> ar1_residuals(std::span<const double> s);

TestResult ljung_box(std::span<const double> s, std::size_t lags);

/// Normality test from biased sample skewness and excess kurtosis; both are
/// surfaced in `extras`.
TestResult jarque_bera(std::span<const double> s);

struct AcfResult {
  std::vector<double> values;  // lags 1..max_lag
  double significance_band = 0.0;
};

/// Biased (1/n) sample autocorrelation at lags 1..max_lag.
AcfResult acf(std::span<const double> s, std::size_t max_lag);

enum class Verdict { kSuitable, kMarginal, kUnsuitable };
const char* to_string(Verdict v);

struct SuitabilityOptions {
  std::vector<int> bds_dims{2, 3, 4, 5};
  double bds_epsilon_frac = 1.0;
  std::size_t ljung_box_lags = 20;
  std::size_t acf_lags = 20;
  std::size_t volatility_window = 252;
};

struct SuitabilityReport {
  TestResult price_adf;
  TestResult price_kpss;
  TestResult returns_adf;
  TestResult returns_kpss;
  std::vector<TestResult> bds;
  TestResult ljung_box_sq;
  TestResult jarque_bera;        // on returns
  TestResult jarque_bera_price;  // on prices
  std::size_t sq_acf_significant_lags = 0;
  double max_sq_acf = 0.0;
  double rolling_vol_mean = 0.0;
  double rolling_vol_max = 0.0;
  std::size_t returns_zero_crossings = 0;
  double window_zero_crossing_cv = 0.0;  // variability of per-window crossing counts
  bool price_nonstationary = false;
  bool returns_stationary = false;
  bool nonlinear = false;
  Verdict verdict = Verdict::kUnsuitable;
};

/// Runs the full EMD-suitability battery on a price series (length >= 300).
///
/// Verdict: unsuitable when both unit-root tests call the price series
/// stationary; suitable when the price is non-stationary by both tests, the
/// returns are stationary by both, and BDS or Ljung-Box on squared returns
/// rejects; marginal otherwise.
SuitabilityReport suitability_report(const TimeSeries& s, const SuitabilityOptions& options = {});

// Distribution helpers.
double normal_sf(double z);
double chi2_sf(double x, double dof);

/// MacKinnon (1994) approximate p-value for an ADF t-statistic with one
/// integrated series. Sets *clamped when the statistic is outside the
/// response-surface range.
double mackinnon_p(double stat, Regression regression, bool* clamped = nullptr);

/// MacKinnon (2010) finite-sample critical values at 1/5/10%.
std::map<std::string, double> mackinnon_crit(Regression regression, std::size_t nobs);

}  // namespace imfgraph::stats
