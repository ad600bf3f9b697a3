#include "spectral.hpp"

#include <cmath>
#include <complex>
#include <mutex>

#include <fftw3.h>

#include "imfgraph/series.hpp"

namespace imfgraph::detail {

namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftBuffer {
 public:
  explicit FftBuffer(std::size_t n)
      : n_(n), data_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {}
  ~FftBuffer() {
    if (data_) fftw_free(data_);
  }
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;
  FftBuffer(FftBuffer&& other) noexcept : n_(other.n_), data_(other.data_) { other.data_ = nullptr; }
  FftBuffer& operator=(FftBuffer&&) = delete;

  std::complex<double>& operator[](std::size_t i) {
    return *reinterpret_cast<std::complex<double>*>(&data_[i]);
  }
  void transform(int sign) {
    fftw_plan plan;
    {
      std::lock_guard lock(planner_mutex());
      plan = fftw_plan_dft_1d(static_cast<int>(n_), data_, data_, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

 private:
  std::size_t n_;
  fftw_complex* data_;
};

FftBuffer demeaned_spectrum(std::span<const double> s) {
  const double m = mean(s);
  FftBuffer buf(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) buf[i] = {s[i] - m, 0.0};
  buf.transform(FFTW_FORWARD);
  return buf;
}

}  // namespace

std::size_t dominant_bin(std::span<const double> s) {
  if (s.size() < 2 || sample_variance(s) == 0.0) return 0;
  auto spec = demeaned_spectrum(s);
  std::size_t best = 0;
  double best_mag = 0.0;
  for (std::size_t k = 1; k <= s.size() / 2; ++k) {
    const double mag = std::abs(spec[k]);
    if (mag > best_mag) {
      best_mag = mag;
      best = k;
    }
  }
  return best;
}

std::vector<double> analytic_amplitude(std::span<const double> s) {
  const std::size_t n = s.size();
  std::vector<double> out(n, 0.0);
  if (n == 0) return out;
  auto spec = demeaned_spectrum(s);
  // h = [1, 2, ..., 2, (1 at Nyquist for even n), 0, ...]
  for (std::size_t k = 1; k < n; ++k) {
    if (2 * k < n) {
      spec[k] *= 2.0;
    } else if (2 * k > n) {
      spec[k] = 0.0;
    }
  }
  spec.transform(FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::abs(spec[i]) * scale;
  return out;
}

}  // namespace imfgraph::detail
