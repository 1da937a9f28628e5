#pragma once

#include <complex>
#include <span>
#include <vector>

#include "howlbench/fft.h"
#include "howlbench/waveform.h"

namespace howlbench {

// Streaming uniformly-partitioned fast convolution (overlap-save). The kernel
// is split into block-sized partitions held in the frequency domain; process()
// consumes exactly one block and emits one block. Feeding the same sample
// stream in the same block order always produces bit-identical output, which
// is what keeps the offline and frame-recurrent playback paths in agreement.
class PartitionedConvolver {
 public:
  PartitionedConvolver(std::span<const float> kernel, int block_size);

  int block_size() const { return block_; }

  // in and out both hold block_size() samples; in may be shorter (zero pad).
  void process(std::span<const float> in, std::span<float> out);
  void reset();

 private:
  int block_;
  int num_partitions_;
  Fft fft_;                                          // size 2*block_
  std::vector<std::vector<std::complex<double>>> kernel_parts_;
  std::vector<std::vector<std::complex<double>>> input_history_;  // ring
  int history_pos_ = 0;
  std::vector<double> input_tail_;  // previous block (overlap-save front half)
  std::vector<std::complex<double>> scratch_;
  std::vector<std::complex<double>> acc_;
};

// Linear convolution of x with kernel h. By default the result is truncated
// to len(x) so block pipelines keep alignment; full_tail yields the complete
// len(x)+len(h)-1 output. Throws std::invalid_argument on an empty kernel.
Waveform convolve(const Waveform& x, std::span<const float> h,
                  bool full_tail = false);

// Integer-sample delay, output length preserved; k must be >= 0.
Waveform delay(const Waveform& x, size_t k);

}  // namespace howlbench
