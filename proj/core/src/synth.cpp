#include "howlbench/synth.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "howlbench/rng.h"

namespace howlbench {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Waveform synth_speech(double seconds, int sample_rate, uint64_t seed,
                      float peak) {
  const size_t n = static_cast<size_t>(seconds * sample_rate);
  Waveform out;
  out.sample_rate = sample_rate;
  out.samples.assign(n, 0.0f);
  if (n == 0) return out;

  Rng rng(seed);

  // Pitch track: random walk around a per-utterance base, plus vibrato.
  const double f0_base = rng.uniform(95.0, 220.0);
  const double vibrato_hz = rng.uniform(4.0, 6.5);
  const double vibrato_depth = rng.uniform(0.01, 0.03);

  // Two drifting formant resonances shape the harmonic amplitudes.
  double formant1 = rng.uniform(350.0, 800.0);
  double formant2 = rng.uniform(1200.0, 2400.0);
  double formant1_target = formant1, formant2_target = formant2;

  // Syllable envelope: voiced pulses with short gaps, occasional noise burst.
  std::vector<double> envelope(n, 0.0);
  std::vector<char> voiced(n, 1);
  size_t pos = 0;
  while (pos < n) {
    const size_t syllable = static_cast<size_t>(
        rng.uniform(0.12, 0.30) * sample_rate);
    const size_t gap = static_cast<size_t>(rng.uniform(0.02, 0.06) * sample_rate);
    const bool is_voiced = rng.uniform() > 0.2;
    const double level = rng.uniform(0.5, 1.0);
    const size_t end = std::min(n, pos + syllable);
    for (size_t i = pos; i < end; ++i) {
      const double x = double(i - pos) / double(std::max<size_t>(1, syllable));
      envelope[i] = level * (0.5 - 0.5 * std::cos(kTwoPi * std::min(1.0, x)));
      voiced[i] = is_voiced ? 1 : 0;
    }
    pos = end + gap;
  }

  double phase = 0.0;
  double f0_walk = 0.0;
  double noise_lp = 0.0;
  const size_t control_hop = static_cast<size_t>(sample_rate / 100);  // 10 ms
  double f0 = f0_base;
  std::vector<double> harmonic_gain;

  for (size_t i = 0; i < n; ++i) {
    if (i % control_hop == 0) {
      f0_walk = std::clamp(f0_walk + rng.uniform(-4.0, 4.0), -30.0, 30.0);
      if (rng.uniform() < 0.05) {
        formant1_target = rng.uniform(350.0, 900.0);
        formant2_target = rng.uniform(1100.0, 2600.0);
      }
      formant1 += 0.1 * (formant1_target - formant1);
      formant2 += 0.1 * (formant2_target - formant2);
      const int num_harmonics =
          std::min(30, static_cast<int>(4000.0 / std::max(60.0, f0_base)));
      harmonic_gain.assign(num_harmonics, 0.0);
      for (int k = 0; k < num_harmonics; ++k) {
        const double freq = (k + 1) * std::max(60.0, f0_base + f0_walk);
        const double r1 = (freq - formant1) / 180.0;
        const double r2 = (freq - formant2) / 280.0;
        harmonic_gain[k] = (std::exp(-r1 * r1) + 0.6 * std::exp(-r2 * r2) + 0.12) /
                           (1.0 + 0.35 * k);
      }
    }
    const double t = double(i) / sample_rate;
    f0 = std::max(60.0, f0_base + f0_walk) *
         (1.0 + vibrato_depth * std::sin(kTwoPi * vibrato_hz * t));
    phase += kTwoPi * f0 / sample_rate;
    if (phase > kTwoPi) phase -= kTwoPi;

    double v = 0.0;
    if (voiced[i]) {
      for (size_t k = 0; k < harmonic_gain.size(); ++k) {
        v += harmonic_gain[k] * std::sin(phase * double(k + 1));
      }
      v *= 0.25;
    } else {
      // Fricative-ish: high-passed noise.
      const double w = rng.normal();
      v = 0.35 * (w - noise_lp);
      noise_lp += 0.6 * (w - noise_lp);
    }
    out.samples[i] = static_cast<float>(v * envelope[i]);
  }

  const float p = peak_abs(out.samples);
  if (p > 0.0f) {
    const float scale = peak / p;
    for (float& s : out.samples) s *= scale;
  }
  return out;
}

Waveform white_noise(double seconds, int sample_rate, uint64_t seed,
                     float rms_level) {
  const size_t n = static_cast<size_t>(seconds * sample_rate);
  Waveform out;
  out.sample_rate = sample_rate;
  out.samples.resize(n);
  Rng rng(seed);
  for (size_t i = 0; i < n; ++i) {
    out.samples[i] = rms_level * rng.normal_f();
  }
  return out;
}

Waveform sine(double freq_hz, double seconds, int sample_rate, float amplitude) {
  const size_t n = static_cast<size_t>(seconds * sample_rate);
  Waveform out;
  out.sample_rate = sample_rate;
  out.samples.resize(n);
  for (size_t i = 0; i < n; ++i) {
    out.samples[i] = static_cast<float>(
        amplitude * std::sin(kTwoPi * freq_hz * double(i) / sample_rate));
  }
  return out;
}

Waveform growing_sine(double freq_hz, double seconds, int sample_rate,
                      float start_amp, double growth_db_per_s) {
  const size_t n = static_cast<size_t>(seconds * sample_rate);
  Waveform out;
  out.sample_rate = sample_rate;
  out.samples.resize(n);
  const double rate = growth_db_per_s / 20.0;
  for (size_t i = 0; i < n; ++i) {
    const double t = double(i) / sample_rate;
    const double amp = start_amp * std::pow(10.0, rate * t);
    out.samples[i] = static_cast<float>(
        std::min(amp, 1.0) * std::sin(kTwoPi * freq_hz * t));
  }
  return out;
}

}  // namespace howlbench
