#include "howlbench/fft.h"

#include <cmath>
#include <stdexcept>

namespace howlbench {

bool is_power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }

Fft::Fft(int size) : n_(size) {
  if (size < 2 || !is_power_of_two(size)) {
    throw std::invalid_argument("Fft: size must be a power of two >= 2");
  }
  reversed_.resize(n_);
  int bits = 0;
  while ((1 << bits) < n_) ++bits;
  for (int i = 0; i < n_; ++i) {
    int r = 0;
    for (int b = 0; b < bits; ++b) {
      if (i & (1 << b)) r |= 1 << (bits - 1 - b);
    }
    reversed_[i] = r;
  }
  twiddle_.resize(n_ / 2);
  twiddle_inv_.resize(n_ / 2);
  const double step = -2.0 * M_PI / n_;
  for (int k = 0; k < n_ / 2; ++k) {
    twiddle_[k] = std::polar(1.0, step * k);
    twiddle_inv_[k] = std::conj(twiddle_[k]);
  }
}

void Fft::transform(std::complex<double>* data, bool inverse_dir) const {
  for (int i = 0; i < n_; ++i) {
    int j = reversed_[i];
    if (j > i) std::swap(data[i], data[j]);
  }
  const auto& tw = inverse_dir ? twiddle_inv_ : twiddle_;
  for (int len = 2; len <= n_; len <<= 1) {
    const int half = len >> 1;
    const int stride = n_ / len;
    for (int start = 0; start < n_; start += len) {
      for (int k = 0; k < half; ++k) {
        std::complex<double> even = data[start + k];
        std::complex<double> odd = data[start + k + half] * tw[k * stride];
        data[start + k] = even + odd;
        data[start + k + half] = even - odd;
      }
    }
  }
}

void Fft::forward(std::complex<double>* data) const { transform(data, false); }

void Fft::inverse(std::complex<double>* data) const {
  transform(data, true);
  const double scale = 1.0 / n_;
  for (int i = 0; i < n_; ++i) data[i] *= scale;
}

void Fft::rfft(const double* in, std::complex<double>* spectrum) const {
  std::vector<std::complex<double>> buf(n_);
  for (int i = 0; i < n_; ++i) buf[i] = std::complex<double>(in[i], 0.0);
  forward(buf.data());
  const int bins = n_ / 2 + 1;
  for (int k = 0; k < bins; ++k) spectrum[k] = buf[k];
}

void Fft::irfft(const std::complex<double>* spectrum, double* out) const {
  std::vector<std::complex<double>> buf(n_);
  const int bins = n_ / 2 + 1;
  buf[0] = std::complex<double>(spectrum[0].real(), 0.0);
  buf[n_ / 2] = std::complex<double>(spectrum[n_ / 2].real(), 0.0);
  for (int k = 1; k < bins - 1; ++k) {
    buf[k] = spectrum[k];
    buf[n_ - k] = std::conj(spectrum[k]);
  }
  inverse(buf.data());
  for (int i = 0; i < n_; ++i) out[i] = buf[i].real();
}

}  // namespace howlbench
