#include "howlbench/delay_estimate.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "howlbench/fft.h"

namespace howlbench {

std::optional<DelayEstimate> estimate_delay(const Waveform& y,
                                            double probe_window_s,
                                            double min_lag_s, double max_lag_s,
                                            double significance) {
  const int fs = y.sample_rate;
  const long lag_min = std::lround(min_lag_s * fs);
  const long lag_max = std::lround(max_lag_s * fs);
  if (lag_max <= lag_min || y.size() < size_t(lag_max + lag_min)) {
    return std::nullopt;
  }

  long window = std::lround(probe_window_s * fs);
  window = std::min<long>(window, static_cast<long>(y.size()) - lag_max);
  if (window < lag_min) return std::nullopt;

  // Recent window a, history b reaching lag_max further back.
  const long t1 = static_cast<long>(y.size()) - window;
  const long b_len = window + lag_max;

  int nfft = 2;
  while (nfft < b_len) nfft <<= 1;

  Fft fft(nfft);
  std::vector<std::complex<double>> a(nfft, {0.0, 0.0}), b(nfft, {0.0, 0.0});
  for (long i = 0; i < window; ++i) a[i] = {double(y.samples[t1 + i]), 0.0};
  for (long i = 0; i < b_len; ++i) {
    b[i] = {double(y.samples[t1 - lag_max + i]), 0.0};
  }
  fft.forward(a.data());
  fft.forward(b.data());

  // Phase transform: unit-modulus cross-spectrum.
  std::vector<std::complex<double>> g(nfft);
  for (int k = 0; k < nfft; ++k) {
    const std::complex<double> c = std::conj(a[k]) * b[k];
    const double mag = std::abs(c);
    g[k] = mag > 1e-30 ? c / mag : std::complex<double>(0.0, 0.0);
  }
  fft.inverse(g.data());

  // g[k] ~ correlation of a(t) with b(t + k); b leads a by lag_max, so lag
  // tau maps to k = lag_max - tau.
  const long k_lo = 0, k_hi = lag_max - lag_min;
  long best_k = k_lo;
  double best = -1.0;
  std::vector<double> mags(k_hi - k_lo + 1);
  for (long k = k_lo; k <= k_hi; ++k) {
    const double m = std::abs(g[k]);
    mags[k - k_lo] = m;
    if (m > best) {
      best = m;
      best_k = k;
    }
  }

  // Robust z-score of the peak against the rest of the search range.
  double mean = 0.0;
  long counted = 0;
  for (long k = k_lo; k <= k_hi; ++k) {
    if (std::abs(k - best_k) <= 32) continue;
    mean += mags[k - k_lo];
    ++counted;
  }
  if (counted < 16) return std::nullopt;
  mean /= counted;
  double var = 0.0;
  for (long k = k_lo; k <= k_hi; ++k) {
    if (std::abs(k - best_k) <= 32) continue;
    const double d = mags[k - k_lo] - mean;
    var += d * d;
  }
  var /= counted;
  const double sigma = std::sqrt(std::max(var, 1e-30));
  const double z = (best - mean) / sigma;
  if (z < significance) return std::nullopt;

  DelayEstimate est;
  est.seconds = double(lag_max - best_k) / fs;
  est.confidence = z;
  return est;
}

}  // namespace howlbench
