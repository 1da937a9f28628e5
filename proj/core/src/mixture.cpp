#include "howlbench/mixture.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "howlbench/rng.h"
#include "howlbench/synth.h"

namespace howlbench {

PlaybackStream::PlaybackStream(const PlaybackChain& chain)
    : chain_(chain),
      conv_(chain.rir_taps, chain.block_size),
      feed_(chain.block_size) {
  if (chain.delay_samples < chain.block_size) {
    throw std::invalid_argument(
        "PlaybackStream: delay must be at least one block");
  }
  source_.reserve(1 << 16);
}

void PlaybackStream::reset() {
  conv_.reset();
  source_.clear();
  cursor_ = 0;
}

void PlaybackStream::push_source(std::span<const float> block) {
  source_.insert(source_.end(), block.begin(), block.end());
}

void PlaybackStream::next_block(std::span<float> d_out, std::span<float> x_out) {
  const int b = chain_.block_size;
  const size_t delay = static_cast<size_t>(chain_.delay_samples);
  for (int i = 0; i < b; ++i) {
    const size_t idx = cursor_ + i;
    float u = 0.0f;
    if (idx >= delay && idx - delay < source_.size()) {
      u = source_[idx - delay];
    }
    float x = chain_.gain * u;
    x = std::clamp(x, -chain_.clamp, chain_.clamp);
    if (i < static_cast<int>(x_out.size())) x_out[i] = x;
    feed_[i] = chain_.nl.apply(x);
  }
  conv_.process(feed_, d_out);
  for (int i = 0; i < b && i < static_cast<int>(d_out.size()); ++i) {
    d_out[i] *= chain_.playback_scale;
  }
  cursor_ += b;
}

Waveform apply_chain(const PlaybackChain& chain, const Waveform& source) {
  Waveform out;
  out.sample_rate = source.sample_rate;
  out.samples.assign(source.size(), 0.0f);
  if (source.empty()) return out;

  PlaybackStream stream(chain);
  stream.push_source(source.samples);
  const int b = chain.block_size;
  std::vector<float> d(b), x(b);
  const size_t num_blocks = (source.size() + b - 1) / b;
  for (size_t m = 0; m < num_blocks; ++m) {
    stream.next_block(d, x);
    const size_t base = m * b;
    const size_t n = std::min<size_t>(b, source.size() - base);
    std::copy(d.begin(), d.begin() + n, out.samples.begin() + base);
  }
  return out;
}

Waveform make_playback(const Waveform& x, const ResolvedNonlinearity& nl,
                       const RoomImpulseResponse& rir) {
  return convolve(apply_nonlinearity(x, nl), rir.taps);
}

Waveform make_playback(const Waveform& x, const NonlinearitySpec& nl,
                       const RoomImpulseResponse& rir) {
  return convolve(apply_nonlinearity(x, nl), rir.taps);
}

double level_ratio_db(const Waveform& s, const Waveform& other,
                      size_t region_begin) {
  const size_t n = std::min(s.size(), other.size());
  if (region_begin >= n) return 0.0;
  std::span<const float> ss(s.samples.data() + region_begin, n - region_begin);
  std::span<const float> oo(other.samples.data() + region_begin,
                            n - region_begin);
  const double ps = mean_square(ss);
  const double po = mean_square(oo);
  if (po <= 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(ps / po);
}

namespace {

// Onset of meaningful signal; the FFT convolution path leaves ~1e-15-scale
// residue inside the block that contains the true onset.
size_t first_active(const std::vector<float>& v) {
  float peak = 0.0f;
  for (float x : v) peak = std::max(peak, std::fabs(x));
  const float threshold = peak * 1e-7f;
  for (size_t i = 0; i < v.size(); ++i) {
    if (std::fabs(v[i]) > threshold) return i;
  }
  return v.size();
}

double region_mean_square(const std::vector<float>& v, size_t begin) {
  if (begin >= v.size()) return 0.0;
  return mean_square(std::span<const float>(v.data() + begin, v.size() - begin));
}

}  // namespace

MixtureBundle make_teacher_mixture(const Waveform& s, const Waveform& noise,
                                   const MixtureSpec& spec, uint64_t seed) {
  if (s.empty()) throw std::invalid_argument("make_teacher_mixture: empty target");
  if (mean_square(s.samples) <= 0.0) {
    throw std::invalid_argument("make_teacher_mixture: degenerate target");
  }
  Waveform n = noise;
  if (n.empty()) {
    n = white_noise(double(s.size()) / s.sample_rate, s.sample_rate,
                    Rng::derive(seed, 0x6e6f69), 0.1f);
    n.samples.resize(s.size(), 0.0f);
  }
  if (n.size() != s.size()) {
    throw std::invalid_argument("make_teacher_mixture: length mismatch");
  }

  MixtureBundle bundle;
  bundle.spec = spec;
  bundle.s = s;

  // Resolve the chain at unit scale, then measure.
  PlaybackChain chain;
  chain.delay_samples =
      static_cast<int>(std::lround(spec.delta_t * s.sample_rate));
  chain.gain = static_cast<float>(spec.gain);
  const size_t usable = s.size() > static_cast<size_t>(chain.delay_samples)
                            ? s.size() - chain.delay_samples
                            : 0;
  float drive_peak = 0.0f;
  for (size_t i = 0; i < usable; ++i) {
    drive_peak = std::max(drive_peak, std::fabs(chain.gain * s.samples[i]));
  }
  chain.nl = resolve(spec.nl, drive_peak);
  chain.rir_taps = spec.rir.taps;
  chain.playback_scale = 1.0f;

  Waveform d_raw = apply_chain(chain, s);
  const size_t region = first_active(d_raw.samples);
  const double p_d = region_mean_square(d_raw.samples, region);
  if (p_d <= 0.0) {
    throw std::invalid_argument("make_teacher_mixture: degenerate playback");
  }
  const double p_s = region_mean_square(s.samples, region);
  const double alpha =
      std::sqrt(p_s / (p_d * std::pow(10.0, spec.spr_db / 10.0)));
  chain.playback_scale = static_cast<float>(alpha);

  bundle.d.sample_rate = s.sample_rate;
  bundle.d.samples.resize(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    bundle.d.samples[i] = chain.playback_scale * d_raw.samples[i];
  }

  bundle.n.sample_rate = s.sample_rate;
  bundle.n.samples.assign(s.size(), 0.0f);
  if (std::isfinite(spec.snr_db)) {
    const double p_n = region_mean_square(n.samples, region);
    if (p_n <= 0.0) {
      throw std::invalid_argument("make_teacher_mixture: degenerate noise");
    }
    const float beta = static_cast<float>(
        std::sqrt(p_s / (p_n * std::pow(10.0, spec.snr_db / 10.0))));
    for (size_t i = 0; i < s.size(); ++i) {
      bundle.n.samples[i] = beta * n.samples[i];
    }
  }

  bundle.y.sample_rate = s.sample_rate;
  bundle.y.samples.resize(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    bundle.y.samples[i] =
        (s.samples[i] + bundle.n.samples[i]) + bundle.d.samples[i];
  }
  bundle.chain = chain;
  return bundle;
}

MixtureBundle make_finetune_mixture(const Waveform& s, const Waveform& n,
                                    const Waveform& d_distorted) {
  if (s.size() != n.size() || s.size() != d_distorted.size()) {
    throw std::invalid_argument("make_finetune_mixture: length mismatch");
  }
  MixtureBundle bundle;
  bundle.s = s;
  bundle.n = n;
  bundle.d = d_distorted;
  bundle.y.sample_rate = s.sample_rate;
  bundle.y.samples.resize(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    bundle.y.samples[i] = (s.samples[i] + n.samples[i]) + d_distorted.samples[i];
  }
  return bundle;
}

Waveform distorted_playback(const PlaybackChain& chain, const Waveform& s_hat) {
  return apply_chain(chain, s_hat);
}

SceneParams sample_scene_params(uint64_t seed, const DatasetRanges& r) {
  auto check = [](double lo, double hi, const char* what) {
    if (!(lo <= hi)) {
      throw std::invalid_argument(std::string("sample_scene_params: empty range ") +
                                  what);
    }
  };
  check(r.delta_t_min, r.delta_t_max, "delta_t");
  check(r.spr_min, r.spr_max, "spr");
  check(r.snr_min, r.snr_max, "snr");
  check(r.rt60_min, r.rt60_max, "rt60");
  for (int i = 0; i < 3; ++i) check(r.room_min[i], r.room_max[i], "room");

  Rng rng(seed);
  SceneParams p;
  p.delta_t = rng.uniform(r.delta_t_min, r.delta_t_max);
  p.spr_db = rng.uniform(r.spr_min, r.spr_max);
  p.snr_db = rng.uniform(r.snr_min, r.snr_max);
  p.rt60 = rng.uniform(r.rt60_min, r.rt60_max);
  p.nl_kind = rng.uniform() < 0.5 ? NonlinearityKind::kHardClip
                                  : NonlinearityKind::kSigmoidMemoryless;

  p.room = {rng.uniform(r.room_min[0], r.room_max[0]),
            rng.uniform(r.room_min[1], r.room_max[1]),
            rng.uniform(r.room_min[2], r.room_max[2])};
  auto sample_pos = [&](double margin) {
    return Vec3{rng.uniform(margin, p.room[0] - margin),
                rng.uniform(margin, p.room[1] - margin),
                rng.uniform(margin, p.room[2] - margin)};
  };
  const double margin = std::min({r.wall_margin, p.room[0] / 4, p.room[1] / 4,
                                  p.room[2] / 4});
  p.source = sample_pos(margin);
  p.mic = sample_pos(margin);
  // Keep loudspeaker and microphone separated.
  for (int tries = 0; tries < 64 && distance(p.source, p.mic) < 0.5; ++tries) {
    p.mic = sample_pos(margin);
  }
  return p;
}

MixtureSpec sample_mixture_spec(uint64_t seed, const DatasetRanges& r) {
  const SceneParams p = sample_scene_params(seed, r);
  MixtureSpec spec;
  spec.delta_t = p.delta_t;
  spec.spr_db = p.spr_db;
  spec.snr_db = p.snr_db;
  spec.nl.kind = p.nl_kind;
  spec.rir = generate_rir(p.room, p.source, p.mic, p.rt60,
                          Rng::derive(seed, 0x726972));
  return spec;
}

}  // namespace howlbench
