#pragma once

#include <optional>

#include "howlbench/waveform.h"

namespace howlbench {

struct DelayEstimate {
  double seconds = 0.0;
  double confidence = 0.0;  // peak z-score over the lag search range
};

// Estimates the loop delay (system delay plus acoustic flight time) by
// whitened cross-correlation (phase transform) between the most recent
// probe_window seconds of y and the history preceding it. Returns nullopt
// when no lag in [min_lag, max_lag] stands out ("delay not detected").
std::optional<DelayEstimate> estimate_delay(const Waveform& y,
                                            double probe_window_s = 1.5,
                                            double min_lag_s = 0.05,
                                            double max_lag_s = 0.6,
                                            double significance = 7.0);

}  // namespace howlbench
