#pragma once

#include <vector>

#include "howlbench/howling.h"
#include "howlbench/mixture.h"
#include "howlbench/stft.h"
#include "howlbench/suppressor.h"
#include "howlbench/waveform.h"

namespace howlbench {

// Configuration of one frame-recurrent streaming session: the processor
// output is delayed, amplified, distorted, convolved with the room and fed
// back into the next microphone block.
struct LoopConfig {
  PlaybackChain chain;   // block_size must equal frame.hop
  FrameParams frame;
  float max_output_amplitude = 1.0f;  // loudspeaker drive ceiling
  HowlingParams howling;
};

// Builds the loop matching the audio system a teacher mixture was generated
// with (same delay, gain, resolved nonlinearity, room and playback scale).
LoopConfig loop_config_from_chain(const PlaybackChain& chain,
                                  const FrameParams& frame = {});

struct FrameDiag {
  double rms = 0.0;       // microphone block RMS
  double papr_db = 0.0;   // spectral peak-to-average ratio
  int peak_bin = -1;
  bool howling = false;
};

struct StreamReport {
  Waveform s_hat;
  Waveform microphone_trace;
  std::vector<FrameDiag> frames;
  double mic_howling_score = 0.0;  // flagged fraction over analysis frames
};

// Runs the closed loop over the target/noise pair. The suppressor must be
// freshly reset; a non-finite suppressor output aborts the session with
// std::runtime_error naming the offending frame. One session is strictly
// sequential; independent sessions can run concurrently.
StreamReport run_streaming(const LoopConfig& cfg, Suppressor& suppressor,
                           const Waveform& s, const Waveform& n);

// Magnitude of the open-loop transfer gain*NL_slope*scale*|H(f)| sampled on
// an fft_size grid; its peak decides howling risk.
std::vector<double> loop_gain_spectrum(const PlaybackChain& chain,
                                       int fft_size = 16384);
double peak_loop_gain(const PlaybackChain& chain);

// Gain that sets the peak open-loop magnitude to `margin` for this chain.
float gain_for_margin(const PlaybackChain& chain, double margin);

}  // namespace howlbench
