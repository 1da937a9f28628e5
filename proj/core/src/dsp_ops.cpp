#include "howlbench/dsp_ops.h"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace howlbench {

PartitionedConvolver::PartitionedConvolver(std::span<const float> kernel,
                                           int block_size)
    : block_(block_size), fft_(2 * block_size) {
  if (kernel.empty()) {
    throw std::invalid_argument("PartitionedConvolver: empty kernel");
  }
  if (block_size <= 0 || !is_power_of_two(2 * block_size)) {
    throw std::invalid_argument("PartitionedConvolver: bad block size");
  }
  num_partitions_ =
      static_cast<int>((kernel.size() + block_ - 1) / block_);
  kernel_parts_.resize(num_partitions_);
  std::vector<std::complex<double>> buf(2 * block_);
  for (int p = 0; p < num_partitions_; ++p) {
    std::fill(buf.begin(), buf.end(), std::complex<double>(0.0, 0.0));
    const size_t base = static_cast<size_t>(p) * block_;
    const size_t len = std::min<size_t>(block_, kernel.size() - base);
    for (size_t i = 0; i < len; ++i) {
      buf[i] = std::complex<double>(kernel[base + i], 0.0);
    }
    fft_.forward(buf.data());
    kernel_parts_[p] = buf;
  }
  input_history_.assign(num_partitions_,
                        std::vector<std::complex<double>>(2 * block_));
  input_tail_.assign(block_, 0.0);
  scratch_.resize(2 * block_);
  acc_.resize(2 * block_);
}

void PartitionedConvolver::reset() {
  for (auto& h : input_history_) {
    std::fill(h.begin(), h.end(), std::complex<double>(0.0, 0.0));
  }
  std::fill(input_tail_.begin(), input_tail_.end(), 0.0);
  history_pos_ = 0;
}

void PartitionedConvolver::process(std::span<const float> in,
                                   std::span<float> out) {
  // Overlap-save frame: [previous block | current block].
  for (int i = 0; i < block_; ++i) {
    scratch_[i] = std::complex<double>(input_tail_[i], 0.0);
  }
  for (int i = 0; i < block_; ++i) {
    const double v = i < static_cast<int>(in.size()) ? in[i] : 0.0;
    scratch_[block_ + i] = std::complex<double>(v, 0.0);
    input_tail_[i] = v;
  }
  fft_.forward(scratch_.data());

  history_pos_ = (history_pos_ + num_partitions_ - 1) % num_partitions_;
  input_history_[history_pos_] = scratch_;

  std::fill(acc_.begin(), acc_.end(), std::complex<double>(0.0, 0.0));
  for (int p = 0; p < num_partitions_; ++p) {
    const auto& x = input_history_[(history_pos_ + p) % num_partitions_];
    const auto& k = kernel_parts_[p];
    for (int i = 0; i < 2 * block_; ++i) acc_[i] += x[i] * k[i];
  }
  fft_.inverse(acc_.data());
  const size_t n = std::min<size_t>(out.size(), block_);
  for (size_t i = 0; i < n; ++i) {
    out[i] = static_cast<float>(acc_[block_ + i].real());
  }
}

Waveform convolve(const Waveform& x, std::span<const float> h, bool full_tail) {
  if (h.empty()) throw std::invalid_argument("convolve: empty kernel");
  Waveform out;
  out.sample_rate = x.sample_rate;
  if (x.empty()) return out;

  const size_t out_len = full_tail ? x.size() + h.size() - 1 : x.size();
  out.samples.assign(out_len, 0.0f);

  constexpr int kBlock = 256;
  PartitionedConvolver conv(h, kBlock);
  std::vector<float> in_block(kBlock), out_block(kBlock);
  const size_t num_blocks = (out_len + kBlock - 1) / kBlock;
  for (size_t b = 0; b < num_blocks; ++b) {
    const size_t base = b * kBlock;
    for (int i = 0; i < kBlock; ++i) {
      const size_t idx = base + i;
      in_block[i] = idx < x.size() ? x.samples[idx] : 0.0f;
    }
    conv.process(in_block, out_block);
    const size_t n = std::min<size_t>(kBlock, out_len - base);
    std::memcpy(out.samples.data() + base, out_block.data(), n * sizeof(float));
  }
  return out;
}

Waveform delay(const Waveform& x, size_t k) {
  Waveform out;
  out.sample_rate = x.sample_rate;
  out.samples.assign(x.size(), 0.0f);
  if (k < x.size()) {
    std::memcpy(out.samples.data() + k, x.samples.data(),
                (x.size() - k) * sizeof(float));
  }
  return out;
}

}  // namespace howlbench
