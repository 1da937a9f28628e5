#include "howlbench/loop_engine.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "howlbench/fft.h"

namespace howlbench {

LoopConfig loop_config_from_chain(const PlaybackChain& chain,
                                  const FrameParams& frame) {
  LoopConfig cfg;
  cfg.chain = chain;
  cfg.chain.block_size = frame.hop;
  cfg.frame = frame;
  return cfg;
}

StreamReport run_streaming(const LoopConfig& cfg, Suppressor& suppressor,
                           const Waveform& s, const Waveform& n) {
  if (s.size() != n.size()) {
    throw std::invalid_argument("run_streaming: target/noise length mismatch");
  }
  validate(cfg.frame);
  const int hop = cfg.frame.hop;
  if (cfg.chain.block_size != hop) {
    throw std::invalid_argument("run_streaming: chain block size != hop");
  }
  if (cfg.chain.delay_samples < hop) {
    throw std::invalid_argument(
        "run_streaming: system delay shorter than one hop");
  }
  if (cfg.chain.gain < 0.0f) {
    throw std::invalid_argument("run_streaming: negative gain");
  }

  StreamReport report;
  report.s_hat.sample_rate = s.sample_rate;
  report.microphone_trace.sample_rate = s.sample_rate;
  if (s.empty()) return report;

  PlaybackChain chain = cfg.chain;
  chain.clamp = cfg.max_output_amplitude;
  PlaybackStream playback(chain);

  const size_t len = s.size();
  const size_t num_blocks = (len + hop - 1) / hop;
  std::vector<float> mic_trace(num_blocks * hop, 0.0f);
  std::vector<float> s_hat(num_blocks * hop, 0.0f);
  std::vector<float> d_block(hop), x_block(hop);

  StftAnalyzer analyzer(cfg.frame);
  HowlingDetector detector(cfg.howling);
  std::vector<std::complex<float>> bins(cfg.frame.bins());
  int frames_analyzed = 0;
  int frames_flagged = 0;
  long next_frame = 0;

  for (size_t m = 0; m < num_blocks; ++m) {
    const size_t base = m * hop;
    playback.next_block(d_block, x_block);
    for (int i = 0; i < hop; ++i) {
      const size_t idx = base + i;
      const float sv = idx < len ? s.samples[idx] : 0.0f;
      const float nv = idx < len ? n.samples[idx] : 0.0f;
      mic_trace[base + i] = (sv + nv) + d_block[i];
    }

    FrameInput in;
    in.mic = {mic_trace.data() + base, size_t(hop)};
    in.loudspeaker = {x_block.data(), size_t(hop)};
    in.mic_history = {mic_trace.data(), base + hop};
    in.frame_index = static_cast<long>(m);
    suppressor.process(in, {s_hat.data() + base, size_t(hop)});

    for (int i = 0; i < hop; ++i) {
      if (!std::isfinite(s_hat[base + i])) {
        throw std::runtime_error(
            "run_streaming: suppressor produced non-finite output at frame " +
            std::to_string(m));
      }
    }
    playback.push_source({s_hat.data() + base, size_t(hop)});

    // Analysis frames completed by this block.
    while (size_t(next_frame) * hop + cfg.frame.frame_len <= base + hop) {
      analyzer.analyze(
          {mic_trace.data() + size_t(next_frame) * hop,
           size_t(cfg.frame.frame_len)},
          bins);
      const HowlingFrame hf = detector.push(bins);
      FrameDiag diag;
      diag.rms = rms({mic_trace.data() + size_t(next_frame) * hop,
                      size_t(cfg.frame.frame_len)});
      diag.papr_db = hf.papr_db;
      diag.peak_bin = hf.peak_bin;
      diag.howling = hf.flagged;
      report.frames.push_back(diag);
      ++frames_analyzed;
      frames_flagged += hf.flagged ? 1 : 0;
      ++next_frame;
    }
  }

  mic_trace.resize(len);
  s_hat.resize(len);
  report.microphone_trace.samples = std::move(mic_trace);
  report.s_hat.samples = std::move(s_hat);
  report.mic_howling_score =
      frames_analyzed > 0 ? double(frames_flagged) / frames_analyzed : 0.0;
  return report;
}

std::vector<double> loop_gain_spectrum(const PlaybackChain& chain,
                                       int fft_size) {
  Fft fft(fft_size);
  std::vector<std::complex<double>> buf(fft_size, {0.0, 0.0});
  const size_t n = std::min<size_t>(chain.rir_taps.size(), fft_size);
  for (size_t i = 0; i < n; ++i) {
    buf[i] = std::complex<double>(chain.rir_taps[i], 0.0);
  }
  fft.forward(buf.data());
  const double front =
      double(chain.gain) * chain.nl.slope_at_zero() * chain.playback_scale;
  std::vector<double> mag(fft_size / 2 + 1);
  for (int k = 0; k <= fft_size / 2; ++k) {
    mag[k] = front * std::abs(buf[k]);
  }
  return mag;
}

double peak_loop_gain(const PlaybackChain& chain) {
  const auto mag = loop_gain_spectrum(chain);
  double peak = 0.0;
  for (double m : mag) peak = std::max(peak, m);
  return peak;
}

float gain_for_margin(const PlaybackChain& chain, double margin) {
  PlaybackChain unit = chain;
  unit.gain = 1.0f;
  const double base = peak_loop_gain(unit);
  if (base <= 0.0) {
    throw std::invalid_argument("gain_for_margin: chain has zero loop gain");
  }
  return static_cast<float>(margin / base);
}

}  // namespace howlbench
