#include "howlbench/wav_io.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace howlbench {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;

uint32_t read_u32(const uint8_t* p) {
  return uint32_t(p[0]) | uint32_t(p[1]) << 8 | uint32_t(p[2]) << 16 |
         uint32_t(p[3]) << 24;
}

uint16_t read_u16(const uint8_t* p) { return uint16_t(p[0]) | uint16_t(p[1]) << 8; }

void put_u32(std::vector<uint8_t>& v, uint32_t x) {
  v.push_back(x & 0xff);
  v.push_back((x >> 8) & 0xff);
  v.push_back((x >> 16) & 0xff);
  v.push_back((x >> 24) & 0xff);
}

void put_u16(std::vector<uint8_t>& v, uint16_t x) {
  v.push_back(x & 0xff);
  v.push_back((x >> 8) & 0xff);
}

void put_tag(std::vector<uint8_t>& v, const char* tag) {
  v.insert(v.end(), tag, tag + 4);
}

}  // namespace

Waveform read_wav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("read_wav: cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                             std::istreambuf_iterator<char>());
  if (bytes.size() < 44 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw std::runtime_error("read_wav: not a RIFF WAV file: " + path);
  }

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  size_t data_off = 0, data_len = 0;
  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* tag = reinterpret_cast<const char*>(bytes.data() + pos);
    const uint32_t len = read_u32(bytes.data() + pos + 4);
    const size_t body = pos + 8;
    if (body + len > bytes.size()) break;
    if (std::memcmp(tag, "fmt ", 4) == 0 && len >= 16) {
      format = read_u16(bytes.data() + body);
      channels = read_u16(bytes.data() + body + 2);
      rate = read_u32(bytes.data() + body + 4);
      bits = read_u16(bytes.data() + body + 14);
    } else if (std::memcmp(tag, "data", 4) == 0) {
      data_off = body;
      data_len = len;
    }
    pos = body + len + (len & 1);  // chunks are word aligned
  }
  if (rate == 0 || data_off == 0) {
    throw std::runtime_error("read_wav: missing fmt/data chunk: " + path);
  }
  if (channels != 1) {
    throw std::runtime_error("read_wav: only mono supported: " + path);
  }

  Waveform wave;
  wave.sample_rate = static_cast<int>(rate);
  if (format == kFormatPcm && bits == 16) {
    const size_t n = data_len / 2;
    wave.samples.resize(n);
    for (size_t i = 0; i < n; ++i) {
      int16_t s = static_cast<int16_t>(read_u16(bytes.data() + data_off + 2 * i));
      wave.samples[i] = static_cast<float>(s) / 32768.0f;
    }
  } else if (format == kFormatFloat && bits == 32) {
    const size_t n = data_len / 4;
    wave.samples.resize(n);
    std::memcpy(wave.samples.data(), bytes.data() + data_off, n * 4);
  } else {
    throw std::runtime_error("read_wav: unsupported sample format in " + path);
  }
  return wave;
}

void write_wav(const std::string& path, const Waveform& wave,
               SampleFormat format) {
  const uint16_t bits = format == SampleFormat::kPcm16 ? 16 : 32;
  const uint16_t fmt_code =
      format == SampleFormat::kPcm16 ? kFormatPcm : kFormatFloat;
  const uint32_t bytes_per_sample = bits / 8;
  const uint32_t data_len =
      static_cast<uint32_t>(wave.size() * bytes_per_sample);

  std::vector<uint8_t> out;
  out.reserve(44 + data_len);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_len);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, fmt_code);
  put_u16(out, 1);  // mono
  put_u32(out, static_cast<uint32_t>(wave.sample_rate));
  put_u32(out, static_cast<uint32_t>(wave.sample_rate) * bytes_per_sample);
  put_u16(out, static_cast<uint16_t>(bytes_per_sample));
  put_u16(out, bits);
  put_tag(out, "data");
  put_u32(out, data_len);

  if (format == SampleFormat::kPcm16) {
    for (float v : wave.samples) {
      float clamped = std::clamp(v, -1.0f, 32767.0f / 32768.0f);
      int16_t s = static_cast<int16_t>(std::lrintf(clamped * 32768.0f));
      put_u16(out, static_cast<uint16_t>(s));
    }
  } else {
    const size_t base = out.size();
    out.resize(base + data_len);
    std::memcpy(out.data() + base, wave.samples.data(), data_len);
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("write_wav: cannot open " + path);
  f.write(reinterpret_cast<const char*>(out.data()),
          static_cast<std::streamsize>(out.size()));
  if (!f) throw std::runtime_error("write_wav: write failed: " + path);
}

}  // namespace howlbench
