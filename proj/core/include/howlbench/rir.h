#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "howlbench/waveform.h"

namespace howlbench {

inline constexpr double kSpeedOfSound = 343.0;  // m/s

using Vec3 = std::array<double, 3>;

struct RoomImpulseResponse {
  std::vector<float> taps;
  int sample_rate = kDefaultSampleRate;
  Vec3 room{6.0, 5.0, 3.0};
  Vec3 source{2.0, 3.0, 1.5};
  Vec3 mic{3.5, 2.0, 1.2};
  double rt60 = 0.3;
  uint64_t seed = 0;
};

double distance(const Vec3& a, const Vec3& b);

// Image-method room impulse response with integer-sample tap placement.
// Uniform wall reflectance derived from rt60 via the Eyring relation; late
// images get a seeded sub-sample jitter (the direct path never moves).
// Throws std::invalid_argument for rt60 < 0 or positions not strictly
// inside the room.
RoomImpulseResponse generate_rir(const Vec3& room, const Vec3& source,
                                 const Vec3& mic, double rt60, uint64_t seed,
                                 int sample_rate = kDefaultSampleRate);

// Index of the direct-path tap: round(distance/c * sample_rate).
int direct_path_index(const RoomImpulseResponse& rir);

}  // namespace howlbench
