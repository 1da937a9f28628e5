#pragma once

#include <cstdint>

#include "howlbench/waveform.h"

namespace howlbench {

// Deterministic test/source signals. The speech generator produces a
// harmonic-plus-noise signal with drifting pitch, moving formants and
// syllabic amplitude modulation; it is not speech, but it has speech-like
// spectro-temporal statistics (broadband, nonstationary peaks, short gaps).

Waveform synth_speech(double seconds, int sample_rate, uint64_t seed,
                      float peak = 0.5f);

Waveform white_noise(double seconds, int sample_rate, uint64_t seed,
                     float rms_level = 0.1f);

Waveform sine(double freq_hz, double seconds, int sample_rate,
              float amplitude = 0.5f);

// Sine whose amplitude grows exponentially from start_amp at the given rate.
Waveform growing_sine(double freq_hz, double seconds, int sample_rate,
                      float start_amp, double growth_db_per_s);

}  // namespace howlbench
