#pragma once

#include <complex>
#include <span>
#include <vector>

#include "howlbench/fft.h"
#include "howlbench/waveform.h"

namespace howlbench {

enum class Window {
  kSqrtHann,  // periodic sqrt-Hann; COLA at 50% overlap
  kHann,
  kRect,
};

struct FrameParams {
  int frame_len = 512;  // 32 ms at 16 kHz
  int hop = 256;        // 16 ms
  int fft_size = 512;
  Window window = Window::kSqrtHann;

  int bins() const { return fft_size / 2 + 1; }
};

// Throws std::invalid_argument on hop/frame/fft violations.
void validate(const FrameParams& params);

// Analysis (= synthesis) window of length frame_len.
std::vector<double> make_window(const FrameParams& params);

// Forward spectra carry a 2/sum(window) scale (unit sine -> unit magnitude);
// istft undoes it.
double stft_forward_scale(std::span<const double> window);

// Complex one-sided spectrogram, frame-contiguous storage: data[t*bins + f].
struct Spectrogram {
  int num_bins = 0;
  int num_frames = 0;
  std::vector<std::complex<float>> data;
  FrameParams params;
  int sample_rate = kDefaultSampleRate;

  std::complex<float>& at(int f, int t) { return data[size_t(t) * num_bins + f]; }
  const std::complex<float>& at(int f, int t) const {
    return data[size_t(t) * num_bins + f];
  }
  std::span<const std::complex<float>> frame(int t) const {
    return {data.data() + size_t(t) * num_bins, size_t(num_bins)};
  }
  std::span<std::complex<float>> frame(int t) {
    return {data.data() + size_t(t) * num_bins, size_t(num_bins)};
  }
  bool same_shape(const Spectrogram& other) const {
    return num_bins == other.num_bins && num_frames == other.num_frames;
  }
};

// Frame count: full frames only once the signal covers frame_len; a signal
// shorter than one frame is zero-padded into a single frame.
int stft_frame_count(size_t num_samples, const FrameParams& params);

Spectrogram stft(const Waveform& wave, const FrameParams& params);

// Overlap-add synthesis; output length (T-1)*hop + frame_len.
Waveform istft(const Spectrogram& spec);

// Frame-at-a-time analysis/synthesis for streaming consumers. One instance
// per stream; instances are independent.
class StftAnalyzer {
 public:
  explicit StftAnalyzer(const FrameParams& params);

  // `frame` holds frame_len samples; `out` receives bins() values.
  void analyze(std::span<const float> frame, std::span<std::complex<float>> out);

  // Windowed inverse transform of one frame; `out` receives frame_len samples
  // (already multiplied by the synthesis window, ready for overlap-add).
  void synthesize(std::span<const std::complex<float>> bins,
                  std::span<float> out);

  const std::vector<double>& window() const { return window_; }
  const FrameParams& params() const { return params_; }

 private:
  FrameParams params_;
  std::vector<double> window_;
  std::vector<double> real_buf_;
  std::vector<std::complex<double>> spec_buf_;
  Fft fft_;
};

}  // namespace howlbench
