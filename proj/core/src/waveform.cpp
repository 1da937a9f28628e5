#include "howlbench/waveform.h"

#include <algorithm>
#include <cmath>

namespace howlbench {

double mean_square(std::span<const float> x) {
  if (x.empty()) return 0.0;
  double acc = 0.0;
  for (float v : x) acc += static_cast<double>(v) * v;
  return acc / static_cast<double>(x.size());
}

double rms(std::span<const float> x) { return std::sqrt(mean_square(x)); }

float peak_abs(std::span<const float> x) {
  float peak = 0.0f;
  for (float v : x) peak = std::max(peak, std::fabs(v));
  return peak;
}

bool all_finite(std::span<const float> x) {
  for (float v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void mix_into(std::span<float> y, std::span<const float> x, float g) {
  const size_t n = std::min(y.size(), x.size());
  for (size_t i = 0; i < n; ++i) y[i] += g * x[i];
}

}  // namespace howlbench
