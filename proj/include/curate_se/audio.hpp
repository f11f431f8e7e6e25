// Copyright 2026 The curate-se Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Audio buffers, WAV I/O, rational resampling and the clean-target
// high-pass.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "curate_se/dsp.hpp"
#include "curate_se/error.hpp"

namespace curate_se {

inline constexpr std::array<int, 7> kSupportedRates = {8000,  16000, 22050, 24000,
                                                       32000, 44100, 48000};

inline bool is_supported_rate(int hz) {
  return std::find(kSupportedRates.begin(), kSupportedRates.end(), hz) != kSupportedRates.end();
}

struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate_hz = 0;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration_s() const {
    return sample_rate_hz > 0 ? static_cast<double>(samples.size()) / sample_rate_hz : 0.0;
  }
  bool operator==(const AudioBuffer&) const = default;
};

// Throws unless the buffer is usable by the DSP kernels.
inline void check_dsp_input(const AudioBuffer& buffer, const char* what) {
  if (buffer.samples.empty()) throw ValidationError(std::string(what) + ": empty audio buffer");
  if (buffer.sample_rate_hz <= 0) throw ValidationError(std::string(what) + ": bad sample rate");
  for (double s : buffer.samples) {
    if (!std::isfinite(s)) throw ValidationError(std::string(what) + ": non-finite sample");
  }
}

enum class WavEncoding { kPcm16, kFloat32 };

namespace detail {

inline std::uint32_t read_le32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::uint16_t read_le16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

inline void put_le32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_le16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

}  // namespace detail

// Decodes a RIFF/WAVE image. Channels are averaged to mono.
inline AudioBuffer decode_wav(std::span<const std::uint8_t> bytes, const std::string& name = "wav") {
  using detail::read_le16;
  using detail::read_le32;
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw ValidationError(name + ": not a RIFF/WAVE file");
  }
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  const std::uint8_t* data = nullptr;
  std::size_t data_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::uint32_t size = read_le32(chunk + 4);
    const std::size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || body + size > bytes.size()) throw ValidationError(name + ": truncated fmt chunk");
      format = read_le16(chunk + 8);
      channels = read_le16(chunk + 10);
      rate = read_le32(chunk + 12);
      bits = read_le16(chunk + 22);
      if (format == 0xFFFE) {
        if (size < 26) throw ValidationError(name + ": truncated extensible fmt chunk");
        format = read_le16(chunk + 32);  // first two bytes of the sub-format GUID
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (body + size > bytes.size()) throw ValidationError(name + ": truncated data chunk");
      data = bytes.data() + body;
      data_size = size;
      break;
    }
    pos = body + size + (size & 1u);
  }
  if (!have_fmt) throw ValidationError(name + ": missing fmt chunk");
  if (data == nullptr) throw ValidationError(name + ": missing data chunk");
  if (channels == 0 || rate == 0) throw ValidationError(name + ": invalid fmt chunk");

  const bool pcm16 = format == 1 && bits == 16;
  const bool pcm24 = format == 1 && bits == 24;
  const bool f32 = format == 3 && bits == 32;
  if (!pcm16 && !pcm24 && !f32) {
    throw ValidationError(name + ": unsupported codec (format " + std::to_string(format) +
                          ", " + std::to_string(bits) + " bits)");
  }
  const std::size_t sample_bytes = bits / 8;
  const std::size_t frame_bytes = sample_bytes * channels;
  if (data_size % frame_bytes != 0) throw ValidationError(name + ": truncated sample frame");
  const std::size_t frames = data_size / frame_bytes;

  AudioBuffer out;
  out.sample_rate_hz = static_cast<int>(rate);
  out.samples.resize(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    double acc = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      const std::uint8_t* p = data + f * frame_bytes + c * sample_bytes;
      double v = 0.0;
      if (pcm16) {
        v = static_cast<std::int16_t>(read_le16(p)) / 32768.0;
      } else if (pcm24) {
        std::int32_t raw = p[0] | (p[1] << 8) | (p[2] << 16);
        if (raw & 0x800000) raw -= 0x1000000;
        v = raw / 8388608.0;
      } else {
        v = std::bit_cast<float>(read_le32(p));
      }
      acc += v;
    }
    out.samples[f] = channels == 1 ? acc : acc / channels;
  }
  return out;
}

inline AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return decode_wav(bytes, path.string());
}

inline std::int16_t to_pcm16(double s) {
  const double scaled = std::round(s * 32768.0);  // half away from zero
  return static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
}

inline std::string encode_wav(const AudioBuffer& buffer, WavEncoding encoding) {
  using detail::put_le16;
  using detail::put_le32;
  const std::uint16_t bits = encoding == WavEncoding::kPcm16 ? 16 : 32;
  const std::uint16_t format = encoding == WavEncoding::kPcm16 ? 1 : 3;
  const auto data_bytes = static_cast<std::uint32_t>(buffer.samples.size() * (bits / 8));
  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  put_le32(out, 36 + data_bytes);
  out += "WAVEfmt ";
  put_le32(out, 16);
  put_le16(out, format);
  put_le16(out, 1);
  put_le32(out, static_cast<std::uint32_t>(buffer.sample_rate_hz));
  put_le32(out, static_cast<std::uint32_t>(buffer.sample_rate_hz) * (bits / 8));
  put_le16(out, bits / 8);
  put_le16(out, bits);
  out += "data";
  put_le32(out, data_bytes);
  for (double s : buffer.samples) {
    if (encoding == WavEncoding::kPcm16) {
      put_le16(out, static_cast<std::uint16_t>(to_pcm16(s)));
    } else {
      put_le32(out, std::bit_cast<std::uint32_t>(static_cast<float>(s)));
    }
  }
  return out;
}

inline void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path,
                      WavEncoding encoding = WavEncoding::kFloat32) {
  for (double s : buffer.samples) {
    if (!std::isfinite(s)) throw ValidationError("write_wav: non-finite sample");
  }
  const std::string bytes = encode_wav(buffer, encoding);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

namespace detail {

// Kernel length in periods of the lower of the two rates.
inline constexpr int kResampleSpan = 128;
inline constexpr double kResampleAttenDb = 90.0;
inline constexpr double kResampleCutoff = 0.475;  // fraction of the lower rate

// Polyphase windowed-sinc resampling between arbitrary positive rates.
inline std::vector<double> resample_rational(std::span<const double> x, int from_hz, int to_hz) {
  if (from_hz == to_hz) return {x.begin(), x.end()};
  const int g = std::gcd(from_hz, to_hz);
  const std::int64_t up = to_hz / g;
  const std::int64_t down = from_hz / g;
  const std::int64_t ratio = std::max(up, down);
  const auto num_taps = static_cast<std::size_t>(kResampleSpan * ratio + 1);
  const double up_rate = static_cast<double>(up) * from_hz;
  const double cutoff = kResampleCutoff * std::min(from_hz, to_hz) / up_rate;
  auto taps = dsp::kaiser_lowpass(num_taps, cutoff, dsp::kaiser_beta(kResampleAttenDb));
  for (auto& t : taps) t *= static_cast<double>(up);

  const auto in_len = static_cast<std::int64_t>(x.size());
  const std::int64_t out_len = (in_len * up * 2 + down) / (2 * down);  // round half up
  if (in_len == 0) return {};
  const auto center = static_cast<std::int64_t>(num_taps - 1) / 2;
  const auto last_tap = static_cast<std::int64_t>(num_taps) - 1;
  // Odd-reflected margins, a whole number of output samples wide, keep the
  // kernel from seeing an artificial step at either end.
  const std::int64_t margin = down * ((center / up + 2 + down - 1) / down);
  const auto padded = dsp::pad_odd_reflect(x, static_cast<std::size_t>(margin), static_cast<std::size_t>(margin));
  const auto padded_len = static_cast<std::int64_t>(padded.size());
  const std::int64_t skip = margin * up / down;
  std::vector<double> y(static_cast<std::size_t>(out_len));
  for (std::int64_t n = 0; n < out_len; ++n) {
    const std::int64_t t = (n + skip) * down + center;
    // taps index t - k*up must lie in [0, last_tap]
    std::int64_t k_lo = t - last_tap <= 0 ? 0 : (t - last_tap + up - 1) / up;
    std::int64_t k_hi = std::min(t / up, padded_len - 1);
    double acc = 0.0;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) acc += padded[static_cast<std::size_t>(k)] * taps[static_cast<std::size_t>(t - k * up)];
    y[static_cast<std::size_t>(n)] = acc;
  }
  return y;
}

}  // namespace detail

// Resamples to one of the supported rates. Output length is
// round(n * target / source); same-rate requests return the input.
inline AudioBuffer resample(const AudioBuffer& buffer, int target_hz) {
  if (!is_supported_rate(target_hz)) {
    throw ValidationError("resample: unsupported target rate " + std::to_string(target_hz));
  }
  if (buffer.sample_rate_hz <= 0) throw ValidationError("resample: bad source rate");
  if (buffer.sample_rate_hz == target_hz) return buffer;
  return {detail::resample_rational(buffer.samples, buffer.sample_rate_hz, target_hz), target_hz};
}

inline constexpr double kHighpassCutoffHz = 75.0;

// Linear-phase FIR taps: 4801 at 48 kHz, scaled with the rate, always odd.
inline std::vector<double> highpass_taps(int sample_rate_hz) {
  auto n = static_cast<std::size_t>(std::lround(4800.0 * sample_rate_hz / 48000.0));
  n += (n % 2 == 0) ? 1 : 0;
  auto taps = dsp::kaiser_lowpass(n, kHighpassCutoffHz / sample_rate_hz, dsp::kaiser_beta(70.0));
  for (auto& t : taps) t = -t;
  taps[n / 2] += 1.0;
  return taps;
}

// Removes DC and infrasound below 75 Hz; output is sample-aligned with input.
inline AudioBuffer highpass_75(const AudioBuffer& buffer) {
  check_dsp_input(buffer, "highpass_75");
  if (buffer.sample_rate_hz < 8000) throw ValidationError("highpass_75: sample rate below 8 kHz");
  const auto taps = highpass_taps(buffer.sample_rate_hz);
  return {dsp::filter_same_reflect(buffer.samples, taps), buffer.sample_rate_hz};
}

}  // namespace curate_se
