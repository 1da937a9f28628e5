#pragma once

// Shared helpers for the test suites: brute-force oracles kept independent
// of the implementation paths they check, plus small utilities.

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "howlbench/rng.h"
#include "howlbench/waveform.h"

namespace testsupport {

// Direct O(N^2) DFT of a real frame; reference for the FFT/STFT path.
inline std::vector<std::complex<double>> direct_dft(
    std::span<const double> x, int fft_size) {
  const int bins = fft_size / 2 + 1;
  std::vector<std::complex<double>> out(bins);
  for (int k = 0; k < bins; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (int n = 0; n < fft_size; ++n) {
      const double v = n < static_cast<int>(x.size()) ? x[n] : 0.0;
      const double ang = -2.0 * M_PI * k * n / fft_size;
      acc += v * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

// Direct O(n*m) linear convolution with double accumulation.
inline std::vector<float> direct_convolve(std::span<const float> x,
                                          std::span<const float> h,
                                          size_t out_len) {
  std::vector<float> out(out_len, 0.0f);
  for (size_t i = 0; i < out_len; ++i) {
    double acc = 0.0;
    const size_t jmax = std::min(i, h.size() - 1);
    for (size_t j = 0; j <= jmax; ++j) {
      if (i - j < x.size()) acc += double(h[j]) * double(x[i - j]);
    }
    out[i] = static_cast<float>(acc);
  }
  return out;
}

inline std::vector<float> random_samples(size_t n, uint64_t seed,
                                         float scale = 1.0f) {
  howlbench::Rng rng(seed);
  std::vector<float> v(n);
  for (auto& s : v) s = scale * static_cast<float>(rng.uniform(-1.0, 1.0));
  return v;
}

inline double max_abs_diff(std::span<const float> a, std::span<const float> b) {
  double m = 0.0;
  const size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    m = std::max(m, std::abs(double(a[i]) - double(b[i])));
  }
  return m;
}

}  // namespace testsupport
