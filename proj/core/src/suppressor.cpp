#include "howlbench/suppressor.h"

#include <algorithm>

namespace howlbench {

void LimiterSuppressor::process(const FrameInput& in, std::span<float> out) {
  for (size_t i = 0; i < out.size(); ++i) {
    const float v = i < in.mic.size() ? in.mic[i] : 0.0f;
    out[i] = std::clamp(v, -ceiling_, ceiling_);
  }
}

void OracleSuppressor::process(const FrameInput&, std::span<float> out) {
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = cursor_ < target_.size() ? target_.samples[cursor_] : 0.0f;
    ++cursor_;
  }
}

}  // namespace howlbench
