#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>

#include "howlbench/dsp_ops.h"
#include "howlbench/fft.h"
#include "howlbench/stft.h"
#include "howlbench/synth.h"
#include "howlbench/wav_io.h"
#include "support.h"

using namespace howlbench;
using testsupport::direct_convolve;
using testsupport::direct_dft;
using testsupport::max_abs_diff;

TEST_CASE("window satisfies constant overlap-add at 50% overlap") {
  FrameParams p;
  auto w = make_window(p);
  // Sum of analysis*synthesis window across hops, away from the edges.
  std::vector<double> ola(p.frame_len * 4, 0.0);
  for (int t = 0; t * p.hop + p.frame_len <= static_cast<int>(ola.size()); ++t) {
    for (int i = 0; i < p.frame_len; ++i) ola[t * p.hop + i] += w[i] * w[i];
  }
  for (int i = p.frame_len; i < static_cast<int>(ola.size()) - p.frame_len; ++i) {
    CHECK(ola[i] == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("fft matches direct DFT") {
  auto x = testsupport::random_samples(512, 11);
  std::vector<double> xd(x.begin(), x.end());
  Fft fft(512);
  std::vector<std::complex<double>> got(257);
  fft.rfft(xd.data(), got.data());
  auto want = direct_dft(xd, 512);
  for (int k = 0; k < 257; ++k) {
    CHECK(std::abs(got[k] - want[k]) < 1e-9);
  }
}

TEST_CASE("stft of zero signal is zero with expected frame count") {
  Waveform w;
  w.samples.assign(16000, 0.0f);
  auto spec = stft(w, FrameParams{});
  CHECK(spec.num_bins == 257);
  CHECK(spec.num_frames == 61);  // (16000 - 512)/256 + 1
  for (const auto& v : spec.data) CHECK(std::abs(v) == 0.0f);
}

TEST_CASE("stft of empty signal is empty, not an error") {
  auto spec = stft(Waveform{}, FrameParams{});
  CHECK(spec.num_frames == 0);
  CHECK(istft(spec).empty());
}

TEST_CASE("stft rejects invalid frame parameters") {
  FrameParams p;
  p.hop = 1024;  // hop > frame_len
  CHECK_THROWS_AS(stft(Waveform{}, p), std::invalid_argument);
  FrameParams q;
  q.fft_size = 500;  // not a power of two
  CHECK_THROWS_AS(stft(Waveform{}, q), std::invalid_argument);
}

TEST_CASE("1 kHz sine concentrates at bin 32 and matches a direct DFT oracle") {
  // 1000 Hz / (16000/512) = bin 32 exactly.
  auto w = sine(1000.0, 1.0, 16000, 0.5f);
  FrameParams p;
  auto spec = stft(w, p);
  auto window = make_window(p);

  for (int t = 1; t + 1 < spec.num_frames; ++t) {
    int argmax = 0;
    float best = 0.0f;
    for (int f = 0; f < spec.num_bins; ++f) {
      const float mag = std::abs(spec.at(f, t));
      if (mag > best) {
        best = mag;
        argmax = f;
      }
    }
    CHECK(argmax == 32);
  }

  // Frame 3 against the brute-force DFT of the same windowed samples.
  const int t = 3;
  std::vector<double> frame(p.fft_size, 0.0);
  for (int i = 0; i < p.frame_len; ++i) {
    frame[i] = w.samples[t * p.hop + i] * window[i];
  }
  auto want = direct_dft(frame, p.fft_size);
  const double scale = stft_forward_scale(window);
  for (int k = 0; k < spec.num_bins; ++k) {
    const std::complex<double> got(spec.at(k, t).real(), spec.at(k, t).imag());
    CHECK(std::abs(got - want[k] * scale) < 1e-5);
  }
}

TEST_CASE("istft of zero spectrogram is zero") {
  Waveform w;
  w.samples.assign(8192, 0.0f);
  auto spec = stft(w, FrameParams{});
  auto back = istft(spec);
  for (float v : back.samples) CHECK(v == 0.0f);
}

TEST_CASE("istft of a single nonzero frame is a windowed burst at its offset") {
  FrameParams p;
  Spectrogram spec;
  spec.params = p;
  spec.num_bins = p.bins();
  spec.num_frames = 5;
  spec.data.assign(size_t(spec.num_frames) * spec.num_bins, {0.0f, 0.0f});

  // Put a bin-40 tone into frame 2 only.
  spec.at(40, 2) = {30.0f, -12.0f};
  auto out = istft(spec);

  // Inverse-DFT oracle for that frame: one-sided bin k contributes
  // 2*Re(S * exp(i 2 pi k n / N)) / N.
  auto window = make_window(p);
  std::vector<double> want(p.fft_size, 0.0);
  const std::complex<double> s(30.0, -12.0);
  const double unscale = 1.0 / stft_forward_scale(window);
  for (int n = 0; n < p.fft_size; ++n) {
    const double ang = 2.0 * M_PI * 40.0 * n / p.fft_size;
    want[n] = unscale * 2.0 *
              (s * std::complex<double>(std::cos(ang), std::sin(ang))).real() /
              p.fft_size;
  }
  const int start = 2 * p.hop;
  // Region where only frame 2 overlaps nothing else is interior anyway;
  // compare through the OLA normalization explicitly.
  for (int i = 0; i < p.frame_len; ++i) {
    double norm = 0.0;
    for (int t = 0; t < spec.num_frames; ++t) {
      const int off = start + i - t * p.hop;
      if (off >= 0 && off < p.frame_len) norm += window[off] * window[off];
    }
    const double expect = norm > 1e-8 ? want[i] * window[i] / norm : 0.0;
    CHECK(out.samples[start + i] == doctest::Approx(expect).epsilon(1e-5));
  }
  // Outside the burst frame everything is zero.
  for (int i = 0; i < start - p.hop; ++i) CHECK(out.samples[i] == 0.0f);
}

TEST_CASE("stft/istft round trip is exact over the interior") {
  for (uint64_t seed : {1u, 2u, 3u}) {
    auto w = synth_speech(2.0, 16000, seed);
    auto back = istft(stft(w, FrameParams{}));
    REQUIRE(back.size() >= w.size() - 512);
    double worst = 0.0;
    for (size_t i = 512; i + 512 < w.size(); ++i) {
      worst = std::max(worst, std::abs(double(back.samples[i]) - w.samples[i]));
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("stft linearity") {
  auto x = synth_speech(1.0, 16000, 5);
  auto y = white_noise(1.0, 16000, 6, 0.2f);
  const float a = 0.7f, b = -0.4f;
  Waveform mix;
  mix.samples.resize(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    mix.samples[i] = a * x.samples[i] + b * y.samples[i];
  }
  auto sx = stft(x, FrameParams{});
  auto sy = stft(y, FrameParams{});
  auto sm = stft(mix, FrameParams{});
  double worst = 0.0;
  for (size_t i = 0; i < sm.data.size(); ++i) {
    const auto want = a * sx.data[i] + b * sy.data[i];
    worst = std::max(worst, double(std::abs(sm.data[i] - want)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("convolve identity and unit-delay kernels") {
  Waveform x({1.0f, 2.0f, 3.0f}, 16000);
  auto y = convolve(x, std::vector<float>{1.0f});
  CHECK(y.samples == std::vector<float>{1.0f, 2.0f, 3.0f});

  auto z = convolve(x, std::vector<float>{0.0f, 1.0f});
  REQUIRE(z.size() == 3);
  CHECK(z.samples[0] == doctest::Approx(0.0f).epsilon(1e-7));
  CHECK(z.samples[1] == doctest::Approx(1.0f).epsilon(1e-7));
  CHECK(z.samples[2] == doctest::Approx(2.0f).epsilon(1e-7));
}

TEST_CASE("convolve matches the direct-sum oracle") {
  auto x = testsupport::random_samples(1000, 21);
  auto h = testsupport::random_samples(64, 22);
  Waveform wx(std::vector<float>(x), 16000);

  auto got = convolve(wx, h);
  auto want = direct_convolve(x, h, x.size());
  CHECK(max_abs_diff(got.samples, want) < 1e-6);

  auto full = convolve(wx, h, /*full_tail=*/true);
  auto want_full = direct_convolve(x, h, x.size() + h.size() - 1);
  REQUIRE(full.size() == x.size() + h.size() - 1);
  CHECK(max_abs_diff(full.samples, want_full) < 1e-6);
}

TEST_CASE("convolve rejects an empty kernel") {
  Waveform x({1.0f}, 16000);
  CHECK_THROWS_AS(convolve(x, std::vector<float>{}), std::invalid_argument);
}

TEST_CASE("delay basics") {
  Waveform x({1.0f, 0.0f, 0.0f, 0.0f}, 16000);
  CHECK(delay(x, 0).samples == x.samples);
  CHECK(delay(x, 2).samples == std::vector<float>{0.0f, 0.0f, 1.0f, 0.0f});
  CHECK(delay(x, 10).samples == std::vector<float>(4, 0.0f));

  // 0.1 s at 16 kHz moves the onset by exactly 1600 samples.
  auto s = synth_speech(1.0, 16000, 7);
  auto d = delay(s, 1600);
  for (size_t i = 0; i < 1600; ++i) CHECK(d.samples[i] == 0.0f);
  CHECK(d.samples[1600] == s.samples[0]);
}

TEST_CASE("convolve and delay commute (shift equivariance)") {
  auto x = testsupport::random_samples(2000, 31);
  auto h = testsupport::random_samples(40, 32);
  Waveform wx(std::vector<float>(x), 16000);
  const size_t k = 123;

  auto a = convolve(delay(wx, k), h);
  auto b = delay(convolve(wx, h), k);
  CHECK(max_abs_diff(a.samples, b.samples) < 1e-6);
}

TEST_CASE("partitioned convolver equals one-shot convolve block by block") {
  auto x = testsupport::random_samples(4096, 41);
  auto h = testsupport::random_samples(700, 42);  // multiple partitions
  PartitionedConvolver conv(h, 256);
  std::vector<float> streamed(x.size());
  std::vector<float> block(256);
  for (size_t base = 0; base < x.size(); base += 256) {
    conv.process(std::span<const float>(x).subspan(base, 256), block);
    std::copy(block.begin(), block.end(), streamed.begin() + base);
  }
  auto want = direct_convolve(x, h, x.size());
  CHECK(max_abs_diff(streamed, want) < 1e-6);
}

TEST_CASE("no NaN/Inf from stft/istft/convolve on finite input") {
  auto w = synth_speech(1.0, 16000, 55);
  auto spec = stft(w, FrameParams{});
  for (auto& v : spec.data) {
    CHECK(std::isfinite(v.real()));
    CHECK(std::isfinite(v.imag()));
  }
  auto back = istft(spec);
  CHECK(all_finite(back.samples));
  auto conv = convolve(w, testsupport::random_samples(100, 56));
  CHECK(all_finite(conv.samples));
}

TEST_CASE("wav round trip: float32 bit-exact, pcm16 quantized") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "howlbench_wav_test";
  fs::create_directories(dir);

  auto w = synth_speech(0.5, 16000, 77);
  const auto f32 = (dir / "f32.wav").string();
  write_wav(f32, w, SampleFormat::kFloat32);
  auto r32 = read_wav(f32);
  CHECK(r32.sample_rate == 16000);
  REQUIRE(r32.size() == w.size());
  CHECK(r32.samples == w.samples);

  const auto p16 = (dir / "p16.wav").string();
  write_wav(p16, w, SampleFormat::kPcm16);
  auto r16 = read_wav(p16);
  REQUIRE(r16.size() == w.size());
  CHECK(max_abs_diff(r16.samples, w.samples) <= 1.0 / 32768.0 + 1e-9);

  CHECK_THROWS_AS(read_wav((dir / "missing.wav").string()), std::runtime_error);
  fs::remove_all(dir);
}
