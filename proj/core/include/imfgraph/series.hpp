#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace imfgraph {

/// Ordered, finite, univariate observations with optional calendar dates.
class TimeSeries {
 public:
  TimeSeries() = default;

  /// Throws InvalidArgument on non-finite values, a timestamp/value length
  /// mismatch, or non-increasing timestamps.
  explicit TimeSeries(std::vector<double> values,
                      std::optional<std::vector<std::chrono::sys_days>> timestamps = std::nullopt,
                      std::string label = {});

  std::span<const double> values() const noexcept { return values_; }
  const std::optional<std::vector<std::chrono::sys_days>>& timestamps() const noexcept {
    return timestamps_;
  }
  const std::string& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
  std::optional<std::vector<std::chrono::sys_days>> timestamps_;
  std::string label_;
};

/// Percent returns; element i is the change from parent[base_index + i]
/// to parent[base_index + i + 1]. Any zero value in the input is an error.
struct ReturnSeries {
  std::vector<double> values;
  std::size_t base_index = 0;
};

enum class RollingKind { kMean, kStd };

/// Column selector for load_csv: header name or zero-based index.
struct ColumnRef {
  std::optional<std::string> name;
  std::optional<std::size_t> index;

  static ColumnRef named(std::string n) { return {std::move(n), std::nullopt}; }
  static ColumnRef at(std::size_t i) { return {std::nullopt, i}; }
};

/// Reads a comma-separated file with a header row. Dates, when a date column
/// is given, must be ISO-8601 (YYYY-MM-DD) and strictly increasing.
TimeSeries load_csv(const std::filesystem::path& path, const ColumnRef& column,
                    const std::optional<std::string>& date_column = std::nullopt);

ReturnSeries pct_returns(std::span<const double> s);
inline ReturnSeries pct_returns(const TimeSeries& s) { return pct_returns(s.values()); }

/// Trailing-window mean or sample (n-1) standard deviation.
std::vector<double> rolling_stat(std::span<const double> s, std::size_t window, RollingKind kind);

/// Sign changes between adjacent samples. A zero sample inherits the sign of
/// the last nonzero sample before it; leading zeros carry no sign.
std::size_t zero_crossings(std::span<const double> s);

// Small descriptive helpers shared across modules.
double mean(std::span<const double> s);
/// Sample variance (n-1 denominator); 0 for fewer than two samples.
double sample_variance(std::span<const double> s);
double sample_std(std::span<const double> s);

/// Parses YYYY-MM-DD; nullopt if malformed or not a valid calendar date.
std::optional<std::chrono::sys_days> parse_iso_date(std::string_view text);

}  // namespace imfgraph
