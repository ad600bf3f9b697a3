#include "imfgraph/emd.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "imfgraph/parallel.hpp"
#include "spectral.hpp"
#include "spline.hpp"

namespace imfgraph::emd {

void EmdConfig::validate() const {
  if (max_imfs == 0) throw InvalidArgument("max_imfs must be positive");
  if (trials == 0) throw InvalidArgument("trials must be positive");
  if (!(noise_width >= 0.0) || !std::isfinite(noise_width)) {
    throw InvalidArgument("noise_width must be a finite non-negative number");
  }
  if (!std::isfinite(sd_thresh)) throw InvalidArgument("sd_thresh must be finite");
  if (!(residue_range_ratio >= 0.0 && residue_range_ratio < 1.0)) {
    throw InvalidArgument("residue_range_ratio must lie in [0, 1)");
  }
  const int disabled = (sd_thresh <= 0.0) + (s_number == 0) + (fixe_h == 0);
  if (disabled > 1) {
    throw InvalidArgument("at most one of sd_thresh, s_number, fixe_h may be disabled");
  }
}

const char* to_string(Method m) {
  switch (m) {
    case Method::kEmd: return "emd";
    case Method::kEemd: return "eemd";
    case Method::kCeemdan: return "ceemdan";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view text) {
  if (text == "emd") return Method::kEmd;
  if (text == "eemd") return Method::kEemd;
  if (text == "ceemdan") return Method::kCeemdan;
  return std::nullopt;
}

const char* to_string(StopRule r) {
  switch (r) {
    case StopRule::kImfCondition: return "imf_condition";
    case StopRule::kSdCriterion: return "sd_criterion";
    case StopRule::kIterationCap: return "iteration_cap";
    case StopRule::kEnvelopeFailure: return "envelope_failure";
  }
  return "unknown";
}

Extrema find_extrema(std::span<const double> s) {
  Extrema out;
  const std::size_t n = s.size();
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start;
    while (end + 1 < n && s[end + 1] == s[start]) ++end;
    if (start > 0 && end + 1 < n) {
      const double v = s[start];
      const double left = s[start - 1];
      const double right = s[end + 1];
      if (left < v && right < v) {
        out.maxima.push_back((start + end) / 2);
      } else if (left > v && right > v) {
        out.minima.push_back((start + end) / 2);
      }
    }
    start = end + 1;
  }
  return out;
}

namespace {

std::vector<double> envelope(std::span<const double> s, const std::vector<std::size_t>& idx) {
  const std::size_t n = s.size();
  const std::size_t k = idx.size();
  const double last = static_cast<double>(n - 1);
  std::vector<double> x;
  std::vector<double> y;
  x.reserve(k + 4);
  y.reserve(k + 4);
  // Mirror the two outermost extrema across each boundary sample.
  for (std::size_t j = 2; j-- > 0;) {
    x.push_back(-static_cast<double>(idx[j]));
    y.push_back(s[idx[j]]);
  }
  for (std::size_t i : idx) {
    x.push_back(static_cast<double>(i));
    y.push_back(s[i]);
  }
  for (std::size_t j = 0; j < 2; ++j) {
    const std::size_t i = idx[k - 1 - j];
    x.push_back(2.0 * last - static_cast<double>(i));
    y.push_back(s[i]);
  }
  return detail::natural_spline_on_grid(x, y, n);
}

std::size_t extrema_count(std::span<const double> s) {
  const auto e = find_extrema(s);
  return e.maxima.size() + e.minima.size();
}

double peak_to_peak(std::span<const double> s) {
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  return *hi - *lo;
}

// True while the residue still carries oscillations worth extracting.
bool keep_going(std::span<const double> residue, double source_range, const EmdConfig& config) {
  const auto e = find_extrema(residue);
  if (e.maxima.size() < 2 || e.minima.size() < 2) return false;
  return peak_to_peak(residue) >= config.residue_range_ratio * source_range;
}

bool decomposable(std::span<const double> s) {
  const auto e = find_extrema(s);
  return e.maxima.size() >= 2 && e.minima.size() >= 2;
}

std::vector<double> gaussian_noise(std::uint64_t seed, std::size_t stream, std::size_t n) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> out(n);
  for (double& v : out) v = dist(rng);
  return out;
}

// Plain EMD on raw values; IMFs only (residue implied).
std::vector<std::vector<double>> emd_modes(std::span<const double> s, const EmdConfig& config,
                                           std::vector<SiftResult>* info = nullptr) {
  std::vector<std::vector<double>> modes;
  std::vector<double> residue(s.begin(), s.end());
  const double source_range = peak_to_peak(s);
  while (modes.size() < config.max_imfs && keep_going(residue, source_range, config)) {
    SiftResult r = sift(residue, config);
    for (std::size_t i = 0; i < residue.size(); ++i) residue[i] -= r.imf[i];
    modes.push_back(std::move(r.imf));
    if (info) info->push_back(std::move(r));
  }
  return modes;
}

Decomposition assemble(const TimeSeries& s, Method method, const EmdConfig& config,
                       std::vector<std::vector<double>> modes) {
  Decomposition d;
  d.method = method;
  d.config = config;
  d.source_length = s.size();
  d.residue.assign(s.values().begin(), s.values().end());
  for (std::size_t k = 0; k < modes.size(); ++k) {
    for (std::size_t i = 0; i < d.residue.size(); ++i) d.residue[i] -= modes[k][i];
    Imf imf;
    imf.values = std::move(modes[k]);
    imf.index = k + 1;
    d.imfs.push_back(std::move(imf));
  }
  return d;
}

void check_input(const TimeSeries& s, const EmdConfig& config) {
  if (s.size() < 10) throw InvalidArgument("decomposition needs at least 10 samples");
  config.validate();
}

}  // namespace

std::vector<double> envelope_mean(std::span<const double> s) {
  const auto ext = find_extrema(s);
  if (ext.maxima.size() < 2 || ext.minima.size() < 2) {
    throw InsufficientExtrema("envelope needs at least two maxima and two minima");
  }
  auto upper = envelope(s, ext.maxima);
  const auto lower = envelope(s, ext.minima);
  for (std::size_t i = 0; i < upper.size(); ++i) upper[i] = 0.5 * (upper[i] + lower[i]);
  return upper;
}

bool satisfies_imf_condition(std::span<const double> s) {
  if (s.size() < 2) return true;
  const auto ext = static_cast<long long>(extrema_count(s));
  const auto zc = static_cast<long long>(zero_crossings(s));
  return std::llabs(ext - zc) <= 1;
}

SiftResult sift(std::span<const double> s, const EmdConfig& config) {
  std::vector<double> h(s.begin(), s.end());
  const std::size_t cap = config.iteration_cap();
  std::size_t streak = 0;
  std::size_t prev_ext = 0, prev_zc = 0;
  bool have_prev = false;
  for (std::size_t iter = 1;; ++iter) {
    std::vector<double> m;
    try {
      m = envelope_mean(h);
    } catch (const InsufficientExtrema&) {
      if (iter == 1) throw;
      return {std::move(h), iter - 1, StopRule::kEnvelopeFailure};
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      num += m[i] * m[i];
      den += h[i] * h[i];
      h[i] -= m[i];
    }
    const double sd = den > 0.0 ? num / den : 0.0;

    const std::size_t ext = extrema_count(h);
    const std::size_t zc = zero_crossings(h);
    const bool cond = (ext > zc ? ext - zc : zc - ext) <= 1;
    if (!cond) {
      streak = 0;
    } else if (have_prev && ext == prev_ext && zc == prev_zc && streak > 0) {
      ++streak;
    } else {
      streak = 1;
    }
    prev_ext = ext;
    prev_zc = zc;
    have_prev = true;

    if (config.fixe_h > 0 && streak >= config.fixe_h) return {std::move(h), iter, StopRule::kImfCondition};
    if (config.sd_thresh > 0.0 && cond && sd < config.sd_thresh) {
      return {std::move(h), iter, StopRule::kSdCriterion};
    }
    if (iter >= cap) return {std::move(h), iter, StopRule::kIterationCap};
  }
}

Decomposition emd(const TimeSeries& s, const EmdConfig& config) {
  check_input(s, config);
  std::vector<SiftResult> info;
  auto d = assemble(s, Method::kEmd, config, emd_modes(s.values(), config, &info));
  for (std::size_t k = 0; k < d.imfs.size(); ++k) {
    info[k].imf.clear();
    d.imfs[k].sift_info = std::move(info[k]);
  }
  return d;
}

Decomposition eemd(const TimeSeries& s, const EmdConfig& config) {
  check_input(s, config);
  const auto x = s.values();
  const std::size_t n = x.size();
  const double amplitude = config.noise_width * sample_std(x);

  std::vector<std::vector<std::vector<double>>> per_trial(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t t) {
    std::vector<double> perturbed(x.begin(), x.end());
    if (amplitude > 0.0) {
      const auto noise = gaussian_noise(config.seed, t, n);
      for (std::size_t i = 0; i < n; ++i) perturbed[i] += amplitude * noise[i];
    }
    per_trial[t] = emd_modes(perturbed, config);
  });

  std::size_t k_max = 0;
  for (const auto& modes : per_trial) k_max = std::max(k_max, modes.size());
  std::vector<std::vector<double>> avg(k_max, std::vector<double>(n, 0.0));
  for (const auto& modes : per_trial) {  // fixed trial order
    for (std::size_t k = 0; k < modes.size(); ++k) {
      for (std::size_t i = 0; i < n; ++i) avg[k][i] += modes[k][i];
    }
  }
  const double inv = 1.0 / static_cast<double>(config.trials);
  for (auto& mode : avg) {
    for (double& v : mode) v *= inv;
  }
  return assemble(s, Method::kEemd, config, std::move(avg));
}

Decomposition ceemdan(const TimeSeries& s, const EmdConfig& config) {
  check_input(s, config);
  const auto x = s.values();
  const std::size_t n = x.size();
  const bool noisy = config.noise_width > 0.0;

  // Unit-variance noise realizations and their EMD modes, normalized so each
  // mode has unit sample standard deviation (zero if degenerate).
  std::vector<std::vector<std::vector<double>>> noise_modes(config.trials);
  if (noisy) {
    parallel_for(config.trials, config.threads, [&](std::size_t t) {
      auto w = gaussian_noise(config.seed, t, n);
      auto modes = emd_modes(w, config);
      modes.insert(modes.begin(), std::move(w));
      for (auto& mode : modes) {
        const double sd = sample_std(mode);
        for (double& v : mode) v = sd > 0.0 ? v / sd : 0.0;
      }
      noise_modes[t] = std::move(modes);
    });
  }

  std::vector<double> residue(x.begin(), x.end());
  std::vector<std::vector<double>> imfs;
  const double source_range = peak_to_peak(x);
  while (imfs.size() < config.max_imfs && keep_going(residue, source_range, config)) {
    const std::size_t stage = imfs.size();
    const double beta = config.noise_width * sample_std(residue);
    std::vector<std::vector<double>> first_modes(config.trials);
    parallel_for(config.trials, config.threads, [&](std::size_t t) {
      std::vector<double> perturbed = residue;
      if (noisy && stage < noise_modes[t].size()) {
        const auto& mode = noise_modes[t][stage];
        for (std::size_t i = 0; i < n; ++i) perturbed[i] += beta * mode[i];
      }
      if (decomposable(perturbed)) first_modes[t] = sift(perturbed, config).imf;
    });
    std::vector<double> imf(n, 0.0);
    for (const auto& mode : first_modes) {
      if (mode.empty()) continue;
      for (std::size_t i = 0; i < n; ++i) imf[i] += mode[i];
    }
    const double inv = 1.0 / static_cast<double>(config.trials);
    bool nonzero = false;
    for (double& v : imf) {
      v *= inv;
      nonzero = nonzero || v != 0.0;
    }
    if (!nonzero) break;
    for (std::size_t i = 0; i < n; ++i) residue[i] -= imf[i];
    imfs.push_back(std::move(imf));
  }
  return assemble(s, Method::kCeemdan, config, std::move(imfs));
}

Decomposition decompose(const TimeSeries& s, Method method, const EmdConfig& config) {
  switch (method) {
    case Method::kEmd: return emd(s, config);
    case Method::kEemd: return eemd(s, config);
    case Method::kCeemdan: return ceemdan(s, config);
  }
  throw InvalidArgument("unknown decomposition method");
}

ImfMetrics characterize_component(std::span<const double> v) {
  ImfMetrics m;
  for (double x : v) m.energy += x * x;
  m.variance = sample_variance(v);
  m.std = std::sqrt(m.variance);
  if (m.variance > 0.0) {
    m.dominant_frequency_cycles = detail::dominant_bin(v);
    m.mean_amplitude = mean(detail::analytic_amplitude(v));
  }
  return m;
}

std::vector<ImfMetrics> characterize(const Decomposition& d) {
  if (d.source_length == 0) throw InvalidArgument("characterize: empty decomposition");
  std::vector<ImfMetrics> out;
  out.reserve(d.imfs.size());
  for (const auto& imf : d.imfs) out.push_back(characterize_component(imf.values));
  return out;
}

ReconstructionReport validate_reconstruction(const Decomposition& d, const TimeSeries& source) {
  const auto x = source.values();
  if (d.source_length != x.size() || d.residue.size() != x.size()) {
    throw InvalidArgument("decomposition length does not match source");
  }
  for (const auto& imf : d.imfs) {
    if (imf.values.size() != x.size()) throw InvalidArgument("IMF length does not match source");
  }
  ReconstructionReport r;
  double sq = 0.0, abs_sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double imf_sum = 0.0;
    for (const auto& imf : d.imfs) imf_sum += imf.values[i];
    const double err = x[i] - imf_sum;
    sq += err * err;
    abs_sum += std::abs(err);
    r.full_max_abs_error = std::max(r.full_max_abs_error, std::abs(err - d.residue[i]));
  }
  const double n = static_cast<double>(x.size());
  r.imf_rmse = std::sqrt(sq / n);
  r.imf_mae = abs_sum / n;
  r.residue_mean = mean(d.residue);
  r.residue_std = sample_std(d.residue);
  r.residue_min = *std::min_element(d.residue.begin(), d.residue.end());
  r.residue_max = *std::max_element(d.residue.begin(), d.residue.end());
  r.residue_extrema = extrema_count(d.residue);
  r.residue_monotonic = r.residue_extrema == 0;
  return r;
}

}  // namespace imfgraph::emd
