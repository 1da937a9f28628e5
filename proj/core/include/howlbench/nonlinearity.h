#pragma once

#include <string>

#include "howlbench/waveform.h"

namespace howlbench {

enum class NonlinearityKind {
  kIdentity,
  kHardClip,         // symmetric clipping at a fraction of the signal peak
  kSigmoidMemoryless // saturating tanh-shaped curve, unit small-signal slope
};

// Declarative spec. hard_clip's threshold is relative to the peak of the
// signal it is resolved against; the sigmoid is absolute.
struct NonlinearitySpec {
  NonlinearityKind kind = NonlinearityKind::kIdentity;
  float clip_threshold = 0.8f;   // fraction of max |x|
  float sigmoid_ceiling = 0.9f;  // saturation level
  float sigmoid_slope = 1.0f;    // derivative at zero
};

// Spec bound to an absolute operating point, usable sample-by-sample in a
// stream. NL(0) = 0 and the map is monotonically non-decreasing.
struct ResolvedNonlinearity {
  NonlinearityKind kind = NonlinearityKind::kIdentity;
  float clip_level = 1.0f;       // absolute, hard_clip only
  float sigmoid_ceiling = 0.9f;
  float sigmoid_rate = 1.0f;     // slope / ceiling

  float apply(float x) const;
  // Small-signal derivative at 0, used for loop-gain margins.
  double slope_at_zero() const;
};

// Binds relative parameters against the peak of `reference` (hard_clip);
// identity and sigmoid ignore the reference.
ResolvedNonlinearity resolve(const NonlinearitySpec& spec, float reference_peak);

// Whole-waveform map per the relative spec (resolves against x's own peak).
Waveform apply_nonlinearity(const Waveform& x, const NonlinearitySpec& nl);

Waveform apply_nonlinearity(const Waveform& x, const ResolvedNonlinearity& nl);

NonlinearityKind nonlinearity_kind_from_string(const std::string& name);
std::string to_string(NonlinearityKind kind);

}  // namespace howlbench
