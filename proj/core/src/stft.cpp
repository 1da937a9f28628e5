#include "howlbench/stft.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "howlbench/fft.h"

namespace howlbench {

void validate(const FrameParams& params) {
  if (params.hop <= 0 || params.frame_len <= 0 || params.fft_size <= 0) {
    throw std::invalid_argument("FrameParams: sizes must be positive");
  }
  if (params.hop > params.frame_len || params.frame_len > params.fft_size) {
    throw std::invalid_argument("FrameParams: need hop <= frame_len <= fft_size");
  }
  if (!is_power_of_two(params.fft_size)) {
    throw std::invalid_argument("FrameParams: fft_size must be a power of two");
  }
}

std::vector<double> make_window(const FrameParams& params) {
  std::vector<double> w(params.frame_len, 1.0);
  const int n = params.frame_len;
  switch (params.window) {
    case Window::kRect:
      break;
    case Window::kHann:
      for (int i = 0; i < n; ++i) w[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / n);
      break;
    case Window::kSqrtHann:
      for (int i = 0; i < n; ++i)
        w[i] = std::sqrt(0.5 - 0.5 * std::cos(2.0 * M_PI * i / n));
      break;
  }
  return w;
}

int stft_frame_count(size_t num_samples, const FrameParams& params) {
  if (num_samples == 0) return 0;
  if (num_samples < static_cast<size_t>(params.frame_len)) return 1;
  return static_cast<int>((num_samples - params.frame_len) / params.hop) + 1;
}

// Forward spectra are scaled by 2/sum(window) so a unit sine lands at unit
// magnitude; istft applies the inverse. Keeps float32 storage rounding well
// below the 1e-6 contracts.
double stft_forward_scale(std::span<const double> window) {
  double sum = 0.0;
  for (double w : window) sum += w;
  return 2.0 / sum;
}

StftAnalyzer::StftAnalyzer(const FrameParams& params)
    : params_(params),
      window_(make_window(params)),
      real_buf_(params.fft_size, 0.0),
      spec_buf_(params.bins()),
      fft_(params.fft_size) {
  validate(params);
}

void StftAnalyzer::analyze(std::span<const float> frame,
                           std::span<std::complex<float>> out) {
  std::fill(real_buf_.begin(), real_buf_.end(), 0.0);
  const size_t n = std::min(frame.size(), window_.size());
  for (size_t i = 0; i < n; ++i) real_buf_[i] = frame[i] * window_[i];
  fft_.rfft(real_buf_.data(), spec_buf_.data());
  const double scale = stft_forward_scale(window_);
  for (int k = 0; k < params_.bins(); ++k) {
    out[k] = std::complex<float>(static_cast<float>(spec_buf_[k].real() * scale),
                                 static_cast<float>(spec_buf_[k].imag() * scale));
  }
}

void StftAnalyzer::synthesize(std::span<const std::complex<float>> bins,
                              std::span<float> out) {
  const double unscale = 1.0 / stft_forward_scale(window_);
  for (int k = 0; k < params_.bins(); ++k) {
    spec_buf_[k] = std::complex<double>(double(bins[k].real()) * unscale,
                                        double(bins[k].imag()) * unscale);
  }
  fft_.irfft(spec_buf_.data(), real_buf_.data());
  for (int i = 0; i < params_.frame_len; ++i) {
    out[i] = static_cast<float>(real_buf_[i] * window_[i]);
  }
}

Spectrogram stft(const Waveform& wave, const FrameParams& params) {
  validate(params);
  Spectrogram spec;
  spec.params = params;
  spec.sample_rate = wave.sample_rate;
  spec.num_bins = params.bins();
  spec.num_frames = stft_frame_count(wave.size(), params);
  spec.data.assign(size_t(spec.num_frames) * spec.num_bins, {0.0f, 0.0f});
  if (spec.num_frames == 0) return spec;

  const std::vector<double> window = make_window(params);
  const double scale = stft_forward_scale(window);
  const Fft fft(params.fft_size);
  std::vector<double> padded(params.fft_size);
  std::vector<std::complex<double>> bins(params.bins());

  for (int t = 0; t < spec.num_frames; ++t) {
    const size_t start = size_t(t) * params.hop;
    std::fill(padded.begin(), padded.end(), 0.0);
    const size_t avail =
        std::min(static_cast<size_t>(params.frame_len), wave.size() - start);
    for (size_t i = 0; i < avail; ++i) {
      padded[i] = wave.samples[start + i] * window[i];
    }
    fft.rfft(padded.data(), bins.data());
    auto out = spec.frame(t);
    for (int k = 0; k < spec.num_bins; ++k) {
      out[k] = std::complex<float>(static_cast<float>(bins[k].real() * scale),
                                   static_cast<float>(bins[k].imag() * scale));
    }
  }
  return spec;
}

Waveform istft(const Spectrogram& spec) {
  validate(spec.params);
  const FrameParams& p = spec.params;
  Waveform out;
  out.sample_rate = spec.sample_rate;
  if (spec.num_frames == 0) return out;
  if (spec.num_bins != p.bins()) {
    throw std::invalid_argument("istft: spectrogram bins inconsistent with params");
  }

  const size_t out_len = size_t(spec.num_frames - 1) * p.hop + p.frame_len;
  std::vector<double> acc(out_len, 0.0);
  std::vector<double> norm(out_len, 0.0);

  const std::vector<double> window = make_window(p);
  const double unscale = 1.0 / stft_forward_scale(window);
  const Fft fft(p.fft_size);
  std::vector<std::complex<double>> bins(p.bins());
  std::vector<double> frame(p.fft_size);

  for (int t = 0; t < spec.num_frames; ++t) {
    auto in = spec.frame(t);
    for (int k = 0; k < spec.num_bins; ++k) {
      bins[k] = std::complex<double>(double(in[k].real()) * unscale,
                                     double(in[k].imag()) * unscale);
    }
    fft.irfft(bins.data(), frame.data());
    const size_t start = size_t(t) * p.hop;
    for (int i = 0; i < p.frame_len; ++i) {
      acc[start + i] += frame[i] * window[i];
      norm[start + i] += window[i] * window[i];
    }
  }

  out.samples.resize(out_len);
  for (size_t i = 0; i < out_len; ++i) {
    // COLA normalization; near-zero weights at the very edges stay tapered.
    out.samples[i] =
        norm[i] > 1e-8 ? static_cast<float>(acc[i] / norm[i]) : 0.0f;
  }
  return out;
}

}  // namespace howlbench
