#pragma once

#include <complex>
#include <vector>

namespace howlbench {

// Radix-2 complex FFT with precomputed twiddles and bit-reversal table.
// Transforms run in double so downstream float32 spectra keep 1e-6-level
// accuracy. Methods are const and touch no shared mutable state.
class Fft {
 public:
  explicit Fft(int size);  // size must be a power of two >= 2

  int size() const { return n_; }

  void forward(std::complex<double>* data) const;
  void inverse(std::complex<double>* data) const;  // includes the 1/N factor

  // One-sided real transforms; `spectrum` holds size()/2 + 1 bins.
  void rfft(const double* in, std::complex<double>* spectrum) const;
  void irfft(const std::complex<double>* spectrum, double* out) const;

 private:
  void transform(std::complex<double>* data, bool inverse_dir) const;

  int n_;
  std::vector<int> reversed_;
  std::vector<std::complex<double>> twiddle_;      // forward, n/2 entries
  std::vector<std::complex<double>> twiddle_inv_;  // conjugated
};

bool is_power_of_two(int x);

}  // namespace howlbench
