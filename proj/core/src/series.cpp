#include "imfgraph/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "imfgraph/error.hpp"

namespace imfgraph {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

std::optional<double> parse_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

}  // namespace

TimeSeries::TimeSeries(std::vector<double> values,
                       std::optional<std::vector<std::chrono::sys_days>> timestamps,
                       std::string label)
    : values_(std::move(values)), timestamps_(std::move(timestamps)), label_(std::move(label)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw InvalidArgument("non-finite value at index " + std::to_string(i));
    }
  }
  if (timestamps_) {
    if (timestamps_->size() != values_.size()) {
      throw InvalidArgument("timestamp count does not match value count");
    }
    for (std::size_t i = 1; i < timestamps_->size(); ++i) {
      if ((*timestamps_)[i] <= (*timestamps_)[i - 1]) {
        throw InvalidArgument("timestamps not strictly increasing at index " + std::to_string(i));
      }
    }
  }
}

std::optional<std::chrono::sys_days> parse_iso_date(std::string_view text) {
  // YYYY-MM-DD, optionally followed by a time part we ignore.
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0, d = 0;
  auto parse_int = [](std::string_view part, auto& out) {
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    return ec == std::errc{} && ptr == part.data() + part.size();
  };
  if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) ||
      !parse_int(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  if (text.size() > 10 && text[10] != 'T' && text[10] != ' ') return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!ymd.ok()) return std::nullopt;
  return std::chrono::sys_days{ymd};
}

TimeSeries load_csv(const std::filesystem::path& path, const ColumnRef& column,
                    const std::optional<std::string>& date_column) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file: " + path.string());

  std::string header_line;
  if (!std::getline(in, header_line)) throw IoError("empty CSV file: " + path.string());
  if (header_line.size() >= 3 && header_line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    header_line.erase(0, 3);
  }
  const auto header = split_commas(header_line);

  auto resolve = [&](const std::string& name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw InvalidArgument("missing column: " + name);
    return static_cast<std::size_t>(it - header.begin());
  };

  std::size_t value_col = 0;
  std::string label;
  if (column.name) {
    value_col = resolve(*column.name);
    label = *column.name;
  } else if (column.index) {
    if (*column.index >= header.size()) {
      throw InvalidArgument("missing column: index " + std::to_string(*column.index));
    }
    value_col = *column.index;
    label = std::string(header[value_col]);
  } else {
    throw InvalidArgument("no column selected");
  }
  std::optional<std::size_t> date_col;
  if (date_column) date_col = resolve(*date_column);

  std::vector<double> values;
  std::vector<std::chrono::sys_days> dates;
  std::vector<std::size_t> bad_rows;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_commas(line);
    std::optional<double> v;
    if (value_col < fields.size()) v = parse_double(fields[value_col]);
    std::optional<std::chrono::sys_days> date;
    if (date_col) {
      if (*date_col < fields.size()) date = parse_iso_date(fields[*date_col]);
      if (!date) v.reset();
    }
    if (!v) {
      bad_rows.push_back(line_no);
      continue;
    }
    values.push_back(*v);
    if (date) dates.push_back(*date);
  }

  if (!bad_rows.empty()) {
    std::ostringstream msg;
    msg << "unparseable value in column '" << label << "' at row";
    if (bad_rows.size() > 1) msg << 's';
    for (std::size_t i = 0; i < bad_rows.size() && i < 20; ++i) msg << (i ? ", " : " ") << bad_rows[i];
    if (bad_rows.size() > 20) msg << ", ...";
    throw InvalidArgument(msg.str());
  }
  if (values.size() < 3) {
    throw InvalidArgument("fewer than 3 valid rows in " + path.string());
  }
  std::optional<std::vector<std::chrono::sys_days>> ts;
  if (date_col) {
    for (std::size_t i = 1; i < dates.size(); ++i) {
      if (dates[i] <= dates[i - 1]) {
        throw InvalidArgument("non-increasing dates at data row " + std::to_string(i + 1));
      }
    }
    ts = std::move(dates);
  }
  return TimeSeries(std::move(values), std::move(ts), std::move(label));
}

ReturnSeries pct_returns(std::span<const double> s) {
  if (s.size() < 2) throw InvalidArgument("pct_returns needs at least 2 values");
  ReturnSeries out;
  out.values.reserve(s.size() - 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 0.0) throw InvalidArgument("zero base value at index " + std::to_string(i));
  }
  for (std::size_t i = 0; i + 1 < s.size(); ++i) out.values.push_back(100.0 * (s[i + 1] - s[i]) / s[i]);
  return out;
}

std::vector<double> rolling_stat(std::span<const double> s, std::size_t window, RollingKind kind) {
  if (window == 0 || window > s.size()) {
    throw InvalidArgument("rolling window must be in [1, length]");
  }
  if (kind == RollingKind::kStd && window < 2) {
    throw InvalidArgument("rolling std needs window >= 2");
  }
  std::vector<double> out;
  out.reserve(s.size() - window + 1);
  // Direct two-pass per window: exact enough and O(n*w) is fine at these sizes.
  for (std::size_t start = 0; start + window <= s.size(); ++start) {
    auto w = s.subspan(start, window);
    out.push_back(kind == RollingKind::kMean ? mean(w) : sample_std(w));
  }
  return out;
}

std::size_t zero_crossings(std::span<const double> s) {
  if (s.size() < 2) throw InvalidArgument("zero_crossings needs at least 2 values");
  std::size_t count = 0;
  int prev_sign = 0;
  for (double v : s) {
    int sign = (v > 0.0) - (v < 0.0);
    if (sign == 0) continue;
    if (prev_sign != 0 && sign != prev_sign) ++count;
    prev_sign = sign;
  }
  return count;
}

double mean(std::span<const double> s) {
  if (s.empty()) return 0.0;
  return std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
}

double sample_variance(std::span<const double> s) {
  if (s.size() < 2) return 0.0;
  const double m = mean(s);
  double acc = 0.0;
  for (double v : s) acc += (v - m) * (v - m);
  return acc / static_cast<double>(s.size() - 1);
}

double sample_std(std::span<const double> s) { return std::sqrt(sample_variance(s)); }

}  // namespace imfgraph
