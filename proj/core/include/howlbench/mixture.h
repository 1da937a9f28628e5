#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include "howlbench/dsp_ops.h"
#include "howlbench/nonlinearity.h"
#include "howlbench/rir.h"
#include "howlbench/waveform.h"

namespace howlbench {

inline constexpr double kNoNoise = std::numeric_limits<double>::infinity();

// Scene parameters for one mixture.
struct MixtureSpec {
  double spr_db = 0.0;        // signal-to-playback ratio
  double snr_db = 30.0;       // signal-to-noise ratio; kNoNoise disables noise
  double delta_t = 0.2;       // system delay, seconds
  double gain = 1.0;          // amplifier gain G (nonlinearity operating point)
  NonlinearitySpec nl;
  RoomImpulseResponse rir;
};

// The amplifier/loudspeaker/room chain in streaming form: the source stream
// is delayed, amplified, optionally clamped, distorted, convolved with the
// room response, then level-scaled. Block processing is fixed so offline and
// frame-recurrent computations of the same stream agree bit-exactly.
struct PlaybackChain {
  int delay_samples = 3200;
  float gain = 1.0f;
  ResolvedNonlinearity nl;
  std::vector<float> rir_taps;
  float playback_scale = 1.0f;
  float clamp = std::numeric_limits<float>::infinity();  // loudspeaker ceiling
  int block_size = 256;
};

class PlaybackStream {
 public:
  explicit PlaybackStream(const PlaybackChain& chain);

  // Emits playback (d) and loudspeaker drive (x) for the next block of
  // absolute sample indices. Requires the source stream to cover index
  // block_end - 1 - delay_samples, i.e. delay >= block size keeps the loop
  // causal at block granularity.
  void next_block(std::span<float> d_out, std::span<float> x_out);

  // Appends the next block of the source stream (the processor output).
  void push_source(std::span<const float> block);

  void reset();

 private:
  PlaybackChain chain_;
  PartitionedConvolver conv_;
  std::vector<float> source_;
  std::vector<float> feed_;
  size_t cursor_ = 0;  // absolute index of the next block to emit
};

// Offline application of the whole chain to a fully known source signal;
// output has the source's length.
Waveform apply_chain(const PlaybackChain& chain, const Waveform& source);

// d = NL[x] * h truncated to len(x).
Waveform make_playback(const Waveform& x, const NonlinearitySpec& nl,
                       const RoomImpulseResponse& rir);
Waveform make_playback(const Waveform& x, const ResolvedNonlinearity& nl,
                       const RoomImpulseResponse& rir);

struct MixtureBundle {
  Waveform y;  // microphone mixture
  Waveform s;  // target (teacher) signal
  Waveform n;  // scaled noise
  Waveform d;  // playback component
  std::optional<Waveform> r;  // reference signal, filled by callers
  MixtureSpec spec;
  PlaybackChain chain;  // resolved chain that produced d (scale included)
};

// Teacher-forced mixture: y = s + n + scaled playback of the delayed target.
// Playback is rescaled to hit spr_db and noise to hit snr_db, both measured
// over the playback-active region. Throws std::invalid_argument for silent
// targets ("degenerate target") or length mismatches. If `noise` is empty,
// white Gaussian noise is generated from `seed`.
MixtureBundle make_teacher_mixture(const Waveform& s, const Waveform& noise,
                                   const MixtureSpec& spec, uint64_t seed);

// Mixture with an externally produced (distorted) playback component:
// y' = s + d' + n. Lengths must match.
MixtureBundle make_finetune_mixture(const Waveform& s, const Waveform& n,
                                    const Waveform& d_distorted);

// Pipeline helper for the fine-tuning path: runs a processed signal through
// the recorded chain of an existing bundle.
Waveform distorted_playback(const PlaybackChain& chain, const Waveform& s_hat);

struct DatasetRanges {
  double delta_t_min = 0.1, delta_t_max = 0.5;
  double spr_min = -15.0, spr_max = 20.0;
  double snr_min = -10.0, snr_max = 40.0;
  double rt60_min = 0.0, rt60_max = 0.6;
  double room_min[3] = {3.0, 3.0, 2.4};
  double room_max[3] = {8.0, 7.0, 3.5};
  double wall_margin = 0.5;
};

// Scalars and geometry of a sampled scene, before the (comparatively
// expensive) impulse-response synthesis.
struct SceneParams {
  double delta_t = 0.2;
  double spr_db = 0.0;
  double snr_db = 30.0;
  double rt60 = 0.3;
  NonlinearityKind nl_kind = NonlinearityKind::kHardClip;
  Vec3 room{6.0, 5.0, 3.0};
  Vec3 source{2.0, 3.0, 1.5};
  Vec3 mic{3.5, 2.0, 1.2};
};

// Uniformly sampled scene parameters; deterministic per seed. Nonlinearity
// kind is drawn from {hard_clip, sigmoid_memoryless}.
SceneParams sample_scene_params(uint64_t seed, const DatasetRanges& ranges = {});

// Full spec: sampled parameters plus the generated room response.
MixtureSpec sample_mixture_spec(uint64_t seed, const DatasetRanges& ranges = {});

// Measured 10*log10(power(s)/power(other)) over [region_begin, end).
double level_ratio_db(const Waveform& s, const Waveform& other,
                      size_t region_begin);

}  // namespace howlbench
