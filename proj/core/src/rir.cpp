#include "howlbench/rir.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "howlbench/rng.h"

namespace howlbench {

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

int direct_path_index(const RoomImpulseResponse& rir) {
  return static_cast<int>(
      std::lround(distance(rir.source, rir.mic) / kSpeedOfSound * rir.sample_rate));
}

namespace {

void check_inside(const Vec3& p, const Vec3& room, const char* what) {
  for (int i = 0; i < 3; ++i) {
    if (!(p[i] > 0.0) || !(p[i] < room[i])) {
      throw std::invalid_argument(
          std::string("generate_rir: ") + what + " not strictly inside room");
    }
  }
}

}  // namespace

RoomImpulseResponse generate_rir(const Vec3& room, const Vec3& source,
                                 const Vec3& mic, double rt60, uint64_t seed,
                                 int sample_rate) {
  if (rt60 < 0.0) throw std::invalid_argument("generate_rir: rt60 < 0");
  for (int i = 0; i < 3; ++i) {
    if (!(room[i] > 0.0)) {
      throw std::invalid_argument("generate_rir: room dimensions must be positive");
    }
  }
  check_inside(source, room, "source");
  check_inside(mic, room, "mic");
  const double dist_direct = distance(source, mic);
  if (dist_direct < 1e-3) {
    throw std::invalid_argument("generate_rir: source and mic coincide");
  }

  RoomImpulseResponse rir;
  rir.sample_rate = sample_rate;
  rir.room = room;
  rir.source = source;
  rir.mic = mic;
  rir.rt60 = rt60;
  rir.seed = seed;

  // Uniform wall reflectance from the Eyring relation.
  double beta = 0.0;
  if (rt60 > 0.0) {
    const double volume = room[0] * room[1] * room[2];
    const double surface =
        2.0 * (room[0] * room[1] + room[0] * room[2] + room[1] * room[2]);
    const double alpha = 1.0 - std::exp(-0.161 * volume / (surface * rt60));
    beta = std::sqrt(std::max(0.0, 1.0 - alpha));
  }

  const int direct_idx =
      static_cast<int>(std::lround(dist_direct / kSpeedOfSound * sample_rate));
  const int tail_len = static_cast<int>(std::lround(1.25 * rt60 * sample_rate));
  const int len = direct_idx + std::max(tail_len, 1) + 64;
  std::vector<double> taps(len, 0.0);

  Rng rng(seed);
  const double max_dist = (len / double(sample_rate)) * kSpeedOfSound;
  std::array<int, 3> order;
  for (int i = 0; i < 3; ++i) {
    order[i] = beta > 0.0
                   ? static_cast<int>(std::ceil(max_dist / (2.0 * room[i]))) + 1
                   : 0;
  }

  // pow() dominates the image loop; reflections are small integers.
  const int max_reflections =
      2 * (order[0] + order[1] + order[2]) + 6;
  std::vector<double> beta_pow(max_reflections + 1, 1.0);
  for (int k = 1; k <= max_reflections; ++k) beta_pow[k] = beta_pow[k - 1] * beta;

  for (int mx = -order[0]; mx <= order[0]; ++mx) {
    for (int my = -order[1]; my <= order[1]; ++my) {
      for (int mz = -order[2]; mz <= order[2]; ++mz) {
        for (int p = 0; p < 8; ++p) {
          const int px = p & 1, py = (p >> 1) & 1, pz = (p >> 2) & 1;
          const Vec3 img{
              (1 - 2 * px) * source[0] + 2.0 * mx * room[0],
              (1 - 2 * py) * source[1] + 2.0 * my * room[1],
              (1 - 2 * pz) * source[2] + 2.0 * mz * room[2],
          };
          const double d = distance(img, mic);
          if (d < 1e-6 || d > max_dist) continue;
          const int reflections = std::abs(mx - px) + std::abs(mx) +
                                  std::abs(my - py) + std::abs(my) +
                                  std::abs(mz - pz) + std::abs(mz);
          if (reflections > 0 && beta <= 0.0) continue;
          const double gain = beta_pow[std::min(reflections, max_reflections)] / d;
          double delay_samples = d / kSpeedOfSound * sample_rate;
          if (reflections > 0) {
            // Sub-sample jitter decorrelates the integer-rounded late field.
            delay_samples += rng.uniform(-0.5, 0.5);
          }
          const int idx = static_cast<int>(std::lround(delay_samples));
          if (idx >= 0 && idx < len) taps[idx] += gain;
        }
      }
    }
  }

  rir.taps.resize(len);
  for (int i = 0; i < len; ++i) rir.taps[i] = static_cast<float>(taps[i]);
  return rir;
}

}  // namespace howlbench
