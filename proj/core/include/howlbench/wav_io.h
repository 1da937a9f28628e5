#pragma once

#include <string>

#include "howlbench/waveform.h"

namespace howlbench {

enum class SampleFormat {
  kPcm16,    // 16-bit signed PCM
  kFloat32,  // IEEE float; bit-exact round trip
};

// Reads a mono RIFF WAV (PCM16 or float32). 16-bit samples are scaled by
// 1/32768. Throws std::runtime_error on malformed or unsupported files.
Waveform read_wav(const std::string& path);

// Writes a mono RIFF WAV. PCM16 clamps to [-1, 32767/32768].
void write_wav(const std::string& path, const Waveform& wave,
               SampleFormat format = SampleFormat::kFloat32);

}  // namespace howlbench
