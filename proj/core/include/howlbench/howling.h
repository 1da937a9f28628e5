#pragma once

#include <complex>
#include <span>
#include <vector>

#include "howlbench/stft.h"
#include "howlbench/waveform.h"

namespace howlbench {

struct HowlingParams {
  double papr_db = 10.0;       // spectral peak-to-average power threshold
  int persist_frames = 10;     // consecutive frames at the same peak bin
  double growth_tol = 0.90;    // per-frame non-decrease tolerance on |peak|
  double min_mean_power = 1e-10;  // frames quieter than this never flag
  int min_bin = 2;             // ignore DC neighborhood
};

struct HowlingFrame {
  bool flagged = false;
  int peak_bin = -1;
  double papr_db = 0.0;
  double peak_power = 0.0;
};

// Persistence tracker over spectral frames: a bin is howling when it stays
// the local peak with high PAPR for persist_frames frames while its
// magnitude never drops by more than growth_tol between frames.
class HowlingDetector {
 public:
  explicit HowlingDetector(const HowlingParams& params = {});

  HowlingFrame push(std::span<const std::complex<float>> frame);
  // Bins currently meeting all howling criteria (for notch placement).
  const std::vector<int>& active_bins() const { return active_bins_; }
  void reset();

 private:
  HowlingParams params_;
  struct Track {
    int run = 0;        // consecutive candidate frames
    double last_mag = 0.0;
  };
  std::vector<Track> tracks_;
  std::vector<Track> next_;
  std::vector<int> active_bins_;
};

struct HowlingScore {
  double score = 0.0;  // flagged-frame fraction in [0, 1]
  std::vector<char> frame_flags;
};

HowlingScore howling_score(const Waveform& wave, const FrameParams& frame,
                           const HowlingParams& params = {});

}  // namespace howlbench
