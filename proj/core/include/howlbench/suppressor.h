#pragma once

#include <memory>
#include <span>
#include <string>

#include "howlbench/waveform.h"

namespace howlbench {

// One hop-sized step of the streaming loop, as seen by a suppressor.
struct FrameInput {
  std::span<const float> mic;          // current microphone block
  std::span<const float> loudspeaker;  // drive signal over the same indices
  std::span<const float> mic_history;  // all mic samples up to and including
                                       // the current block
  long frame_index = 0;
};

// Causal block processor: output block m may depend only on inputs up to
// block m. State persists across blocks within a session; reset() starts a
// new session. Instances are single-session and not thread-safe; independent
// instances may run in parallel.
class Suppressor {
 public:
  virtual ~Suppressor() = default;
  virtual void reset() = 0;
  virtual void process(const FrameInput& in, std::span<float> out) = 0;
  virtual std::string name() const = 0;
  // Samples of pure output latency (lookahead is always zero). Evaluation
  // aligns against the target using this.
  virtual int latency_samples() const { return 0; }
};

class PassthroughSuppressor : public Suppressor {
 public:
  void reset() override {}
  void process(const FrameInput& in, std::span<float> out) override {
    for (size_t i = 0; i < out.size(); ++i) {
      out[i] = i < in.mic.size() ? in.mic[i] : 0.0f;
    }
  }
  std::string name() const override { return "passthrough"; }
};

// Trivial gain-control baseline: hard sample clamp at a fixed ceiling.
class LimiterSuppressor : public Suppressor {
 public:
  explicit LimiterSuppressor(float ceiling = 0.25f) : ceiling_(ceiling) {}
  void reset() override {}
  void process(const FrameInput& in, std::span<float> out) override;
  std::string name() const override { return "limiter"; }

 private:
  float ceiling_;
};

// Emits a known target stream regardless of the microphone input. Used for
// loop-consistency checks and metric ceilings.
class OracleSuppressor : public Suppressor {
 public:
  explicit OracleSuppressor(Waveform target) : target_(std::move(target)) {}
  void reset() override { cursor_ = 0; }
  void process(const FrameInput& in, std::span<float> out) override;
  std::string name() const override { return "oracle"; }

 private:
  Waveform target_;
  size_t cursor_ = 0;
};

// Always-zero output (mutes the loudspeaker path).
class MuteSuppressor : public Suppressor {
 public:
  void reset() override {}
  void process(const FrameInput&, std::span<float> out) override {
    std::fill(out.begin(), out.end(), 0.0f);
  }
  std::string name() const override { return "mute"; }
};

}  // namespace howlbench
