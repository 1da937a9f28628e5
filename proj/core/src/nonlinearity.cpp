#include "howlbench/nonlinearity.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace howlbench {

float ResolvedNonlinearity::apply(float x) const {
  switch (kind) {
    case NonlinearityKind::kIdentity:
      return x;
    case NonlinearityKind::kHardClip:
      return std::clamp(x, -clip_level, clip_level);
    case NonlinearityKind::kSigmoidMemoryless:
      return sigmoid_ceiling * std::tanh(sigmoid_rate * x);
  }
  return x;
}

double ResolvedNonlinearity::slope_at_zero() const {
  switch (kind) {
    case NonlinearityKind::kIdentity:
      return 1.0;
    case NonlinearityKind::kHardClip:
      return 1.0;
    case NonlinearityKind::kSigmoidMemoryless:
      return double(sigmoid_ceiling) * sigmoid_rate;
  }
  return 1.0;
}

ResolvedNonlinearity resolve(const NonlinearitySpec& spec, float reference_peak) {
  ResolvedNonlinearity r;
  r.kind = spec.kind;
  r.sigmoid_ceiling = spec.sigmoid_ceiling;
  r.sigmoid_rate = spec.sigmoid_ceiling > 0.0f
                       ? spec.sigmoid_slope / spec.sigmoid_ceiling
                       : 0.0f;
  if (spec.kind == NonlinearityKind::kHardClip) {
    r.clip_level = spec.clip_threshold * std::max(reference_peak, 0.0f);
    if (r.clip_level <= 0.0f) r.clip_level = spec.clip_threshold;
  }
  return r;
}

Waveform apply_nonlinearity(const Waveform& x, const ResolvedNonlinearity& nl) {
  Waveform out;
  out.sample_rate = x.sample_rate;
  out.samples.resize(x.size());
  for (size_t i = 0; i < x.size(); ++i) out.samples[i] = nl.apply(x.samples[i]);
  return out;
}

Waveform apply_nonlinearity(const Waveform& x, const NonlinearitySpec& nl) {
  return apply_nonlinearity(x, resolve(nl, peak_abs(x.samples)));
}

NonlinearityKind nonlinearity_kind_from_string(const std::string& name) {
  if (name == "identity") return NonlinearityKind::kIdentity;
  if (name == "hard_clip") return NonlinearityKind::kHardClip;
  if (name == "sigmoid") return NonlinearityKind::kSigmoidMemoryless;
  if (name == "sigmoid_memoryless") return NonlinearityKind::kSigmoidMemoryless;
  throw std::invalid_argument("unknown nonlinearity kind: " + name);
}

std::string to_string(NonlinearityKind kind) {
  switch (kind) {
    case NonlinearityKind::kIdentity:
      return "identity";
    case NonlinearityKind::kHardClip:
      return "hard_clip";
    case NonlinearityKind::kSigmoidMemoryless:
      return "sigmoid_memoryless";
  }
  return "identity";
}

}  // namespace howlbench
