#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace howlbench {

inline constexpr int kDefaultSampleRate = 16000;

// Mono time-domain signal, amplitude nominally in [-1, 1].
struct Waveform {
  std::vector<float> samples;
  int sample_rate = kDefaultSampleRate;

  Waveform() = default;
  Waveform(std::vector<float> s, int rate)
      : samples(std::move(s)), sample_rate(rate) {}

  size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double seconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

// Mean square over a sample range [begin, end); accumulates in double.
double mean_square(std::span<const float> x);
double rms(std::span<const float> x);
float peak_abs(std::span<const float> x);
bool all_finite(std::span<const float> x);

// y += g * x over the common length.
void mix_into(std::span<float> y, std::span<const float> x, float g = 1.0f);

}  // namespace howlbench
