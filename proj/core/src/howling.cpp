#include "howlbench/howling.h"

#include <algorithm>
#include <cmath>

namespace howlbench {

HowlingDetector::HowlingDetector(const HowlingParams& params)
    : params_(params) {}

void HowlingDetector::reset() {
  tracks_.clear();
  next_.clear();
  active_bins_.clear();
}

HowlingFrame HowlingDetector::push(std::span<const std::complex<float>> frame) {
  const int bins = static_cast<int>(frame.size());
  if (static_cast<int>(tracks_.size()) != bins) {
    tracks_.assign(bins, Track{});
    next_.assign(bins, Track{});
  }

  HowlingFrame out;
  double mean_power = 0.0;
  double best_power = 0.0;
  int best_bin = -1;
  std::vector<double> power(bins, 0.0);
  for (int b = 0; b < bins; ++b) {
    power[b] = double(frame[b].real()) * frame[b].real() +
               double(frame[b].imag()) * frame[b].imag();
    if (b >= params_.min_bin) mean_power += power[b];
    if (b >= params_.min_bin && power[b] > best_power) {
      best_power = power[b];
      best_bin = b;
    }
  }
  const int counted = std::max(1, bins - params_.min_bin);
  mean_power /= counted;

  out.peak_bin = best_bin;
  out.peak_power = best_power;
  if (mean_power <= params_.min_mean_power) {
    // Silence: drop all persistence state.
    std::fill(tracks_.begin(), tracks_.end(), Track{});
    active_bins_.clear();
    return out;
  }
  out.papr_db = 10.0 * std::log10(best_power / std::max(mean_power, 1e-300));

  std::fill(next_.begin(), next_.end(), Track{});
  active_bins_.clear();

  for (int b = params_.min_bin; b < bins; ++b) {
    const bool local_peak = power[b] > 0.0 &&
                            (b == 0 || power[b] >= power[b - 1]) &&
                            (b + 1 >= bins || power[b] >= power[b + 1]);
    if (!local_peak) continue;
    const double papr = 10.0 * std::log10(power[b] / std::max(mean_power, 1e-300));
    if (papr <= params_.papr_db) continue;

    // Continue a neighboring track (peaks wobble by a bin), best run wins.
    Track prev{};
    for (int nb = std::max(0, b - 1); nb <= std::min(bins - 1, b + 1); ++nb) {
      if (tracks_[nb].run > prev.run) prev = tracks_[nb];
    }
    const double mag = std::sqrt(power[b]);
    Track t;
    if (prev.run > 0 && mag >= params_.growth_tol * prev.last_mag) {
      t.run = prev.run + 1;
    } else {
      t.run = 1;
    }
    t.last_mag = mag;
    next_[b] = t;
    if (t.run >= params_.persist_frames) {
      active_bins_.push_back(b);
    }
  }
  tracks_.swap(next_);

  out.flagged = !active_bins_.empty();
  return out;
}

HowlingScore howling_score(const Waveform& wave, const FrameParams& frame,
                           const HowlingParams& params) {
  HowlingScore out;
  const Spectrogram spec = stft(wave, frame);
  if (spec.num_frames == 0) return out;
  HowlingDetector detector(params);
  out.frame_flags.resize(spec.num_frames);
  int flagged = 0;
  for (int t = 0; t < spec.num_frames; ++t) {
    const HowlingFrame f = detector.push(spec.frame(t));
    out.frame_flags[t] = f.flagged ? 1 : 0;
    flagged += f.flagged ? 1 : 0;
  }
  out.score = double(flagged) / spec.num_frames;
  return out;
}

}  // namespace howlbench
