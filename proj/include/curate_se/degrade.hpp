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

// Distortion kernels and the per-utterance dynamic simulation that turns
// a clean recording into an aligned (clean, degraded) pair.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <unistd.h>

#include "curate_se/audio.hpp"
#include "curate_se/config_text.hpp"
#include "curate_se/dsp.hpp"
#include "curate_se/error.hpp"
#include "curate_se/manifest.hpp"
#include "curate_se/rng.hpp"

namespace curate_se {

// Declaration order is the canonical application order.
enum class Distortion {
  kReverberation,
  kAdditiveNoise,
  kWindNoise,
  kBandwidthLimitation,
  kCodecLoss,
  kPacketLoss,
  kClipping,
};

inline constexpr std::array<Distortion, 7> kCanonicalOrder = {
    Distortion::kReverberation,       Distortion::kAdditiveNoise, Distortion::kWindNoise,
    Distortion::kBandwidthLimitation, Distortion::kCodecLoss,     Distortion::kPacketLoss,
    Distortion::kClipping,
};

inline std::string_view to_string(Distortion d) {
  switch (d) {
    case Distortion::kReverberation: return "reverberation";
    case Distortion::kAdditiveNoise: return "additive_noise";
    case Distortion::kWindNoise: return "wind_noise";
    case Distortion::kBandwidthLimitation: return "bandwidth_limitation";
    case Distortion::kCodecLoss: return "codec_loss";
    case Distortion::kPacketLoss: return "packet_loss";
    case Distortion::kClipping: return "clipping";
  }
  return "unknown";
}

inline Distortion parse_distortion(std::string_view name) {
  for (auto d : kCanonicalOrder) {
    if (to_string(d) == name) return d;
  }
  throw ValidationError("unknown distortion '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- kernels

// Loops or truncates noise to `length` samples at `rate_hz`.
inline std::vector<double> fit_noise(const AudioBuffer& noise, std::size_t length, int rate_hz) {
  check_dsp_input(noise, "noise");
  const auto src = noise.sample_rate_hz == rate_hz
                       ? noise.samples
                       : detail::resample_rational(noise.samples, noise.sample_rate_hz, rate_hz);
  if (src.empty()) throw ValidationError("noise: empty after resampling");
  std::vector<double> out(length);
  for (std::size_t i = 0; i < length; ++i) out[i] = src[i % src.size()];
  return out;
}

// Gain g with 10 log10(E_speech / E(g * noise)) = snr_db.
inline double snr_gain(std::span<const double> speech, std::span<const double> noise, double snr_db) {
  const double es = dsp::energy(speech);
  const double en = dsp::energy(noise);
  if (es <= 0.0) throw ValidationError("mix: zero-energy speech");
  if (en <= 0.0) throw ValidationError("mix: zero-energy noise");
  return std::sqrt(es / (en * std::pow(10.0, snr_db / 10.0)));
}

inline AudioBuffer mix_additive_noise(const AudioBuffer& speech, const AudioBuffer& noise, double snr_db) {
  check_dsp_input(speech, "mix_additive_noise");
  const auto fitted = fit_noise(noise, speech.size(), speech.sample_rate_hz);
  const double g = snr_gain(speech.samples, fitted, snr_db);
  AudioBuffer out = speech;
  for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] += g * fitted[i];
  return out;
}

// Shifts the largest-magnitude tap to index 0 and scales it to unit magnitude.
inline std::vector<double> normalize_rir(std::span<const double> rir) {
  std::size_t peak = 0;
  for (std::size_t i = 1; i < rir.size(); ++i) {
    if (std::abs(rir[i]) > std::abs(rir[peak])) peak = i;
  }
  const double scale = std::abs(rir[peak]);
  if (scale <= 0.0) throw ValidationError("apply_reverb: all-zero impulse response");
  std::vector<double> out(rir.begin() + static_cast<std::ptrdiff_t>(peak), rir.end());
  for (auto& v : out) v /= scale;
  return out;
}

inline AudioBuffer apply_reverb(const AudioBuffer& speech, const AudioBuffer& rir) {
  check_dsp_input(speech, "apply_reverb");
  if (rir.empty()) throw ValidationError("apply_reverb: empty impulse response");
  if (rir.sample_rate_hz != speech.sample_rate_hz) throw ValidationError("apply_reverb: sample rate mismatch");
  const auto kernel = normalize_rir(rir.samples);
  auto full = dsp::convolve(speech.samples, kernel);
  full.resize(speech.size());
  return {std::move(full), speech.sample_rate_hz};
}

// Saturates at +/- level.
inline AudioBuffer clip_at(const AudioBuffer& speech, double level) {
  AudioBuffer out = speech;
  for (auto& s : out.samples) s = std::clamp(s, -level, level);
  return out;
}

inline AudioBuffer apply_clipping(const AudioBuffer& speech, double clip_ratio) {
  check_dsp_input(speech, "apply_clipping");
  if (!(clip_ratio > 0.0 && clip_ratio <= 1.0)) throw ValidationError("apply_clipping: clip_ratio must be in (0, 1]");
  double peak = 0.0;
  for (double s : speech.samples) peak = std::max(peak, std::abs(s));
  if (peak <= 0.0) throw ValidationError("apply_clipping: silent input");
  return clip_at(speech, clip_ratio * peak);
}

// Down to 2 * target_hz and back; length and rate preserved.
inline AudioBuffer apply_bandwidth_limit(const AudioBuffer& speech, int target_hz) {
  check_dsp_input(speech, "apply_bandwidth_limit");
  if (target_hz <= 0 || 2 * target_hz >= speech.sample_rate_hz) {
    throw ValidationError("apply_bandwidth_limit: target " + std::to_string(target_hz) +
                          " Hz is not below Nyquist");
  }
  const auto low = detail::resample_rational(speech.samples, speech.sample_rate_hz, 2 * target_hz);
  auto back = detail::resample_rational(low, 2 * target_hz, speech.sample_rate_hz);
  back.resize(speech.size(), 0.0);
  return {std::move(back), speech.sample_rate_hz};
}

inline constexpr double kMulaw = 255.0;
inline constexpr int kMulawMagnitudeLevels = 127;  // sign bit + 7-bit magnitude

inline std::uint8_t mulaw_encode(double x) {
  const double mag = std::min(1.0, std::abs(x));
  const double y = std::log1p(kMulaw * mag) / std::log1p(kMulaw);
  const auto code = static_cast<int>(std::lround(y * kMulawMagnitudeLevels));
  return static_cast<std::uint8_t>((x < 0.0 ? 0x80 : 0x00) | code);
}

inline double mulaw_decode(std::uint8_t code) {
  const double y = static_cast<double>(code & 0x7f) / kMulawMagnitudeLevels;
  const double mag = (std::pow(1.0 + kMulaw, y) - 1.0) / kMulaw;
  return (code & 0x80) ? -mag : mag;
}

enum class CodecProfile { kMulaw8, kExternal };

namespace detail {

inline std::filesystem::path scratch_path(std::string_view tag) {
  static std::atomic<std::uint64_t> counter{0};
  const auto n = counter.fetch_add(1);
  return std::filesystem::temp_directory_path() /
         ("curate_se_" + std::to_string(::getpid()) + "_" + std::to_string(n) + "_" + std::string(tag));
}

// Pipes raw little-endian float32 samples through `command` (stdin to stdout).
inline std::vector<double> run_external_codec(std::span<const double> samples, const std::string& command) {
  if (command.empty()) throw ValidationError("codec_loss: external profile needs a command");
  const auto in_path = scratch_path("in.f32");
  const auto out_path = scratch_path("out.f32");
  {
    std::ofstream out(in_path, std::ios::binary);
    if (!out) throw IoError("codec_loss: cannot create " + in_path.string());
    for (double s : samples) {
      const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(s));
      const char bytes[4] = {static_cast<char>(bits & 0xff), static_cast<char>((bits >> 8) & 0xff),
                             static_cast<char>((bits >> 16) & 0xff), static_cast<char>((bits >> 24) & 0xff)};
      out.write(bytes, 4);
    }
  }
  const std::string shell = command + " < '" + in_path.string() + "' > '" + out_path.string() + "'";
  const int status = std::system(shell.c_str());
  std::filesystem::remove(in_path);
  if (status != 0) {
    std::filesystem::remove(out_path);
    throw ValidationError("codec_loss: external command failed (status " + std::to_string(status) + ")");
  }
  std::ifstream in(out_path, std::ios::binary);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();
  std::filesystem::remove(out_path);
  std::vector<double> result(samples.size(), 0.0);  // truncate or zero-pad to input length
  const std::size_t n = std::min(samples.size(), bytes.size() / 4);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t bits = bytes[4 * i] | (bytes[4 * i + 1] << 8) | (bytes[4 * i + 2] << 16) |
                               (static_cast<std::uint32_t>(bytes[4 * i + 3]) << 24);
    result[i] = std::bit_cast<float>(bits);
  }
  return result;
}

}  // namespace detail

inline constexpr int kTelephonyBandHz = 4000;

// mulaw8: 4 kHz band limit, then 8-bit mu-law companding round trip.
// external: samples piped through `command` as raw float32.
inline AudioBuffer apply_codec_loss(const AudioBuffer& speech, CodecProfile profile,
                                    const std::string& command = {}) {
  check_dsp_input(speech, "apply_codec_loss");
  if (profile == CodecProfile::kExternal) {
    return {detail::run_external_codec(speech.samples, command), speech.sample_rate_hz};
  }
  AudioBuffer out = 2 * kTelephonyBandHz < speech.sample_rate_hz ? apply_bandwidth_limit(speech, kTelephonyBandHz)
                                                                  : speech;
  for (auto& s : out.samples) s = mulaw_decode(mulaw_encode(s));
  return out;
}

inline std::size_t packet_samples(double packet_ms, int rate_hz) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(packet_ms * rate_hz / 1000.0)));
}

// Zeroes whole packets independently with probability loss_prob.
inline AudioBuffer apply_packet_loss(const AudioBuffer& speech, double packet_ms, double loss_prob,
                                     std::uint64_t seed) {
  check_dsp_input(speech, "apply_packet_loss");
  if (!(packet_ms > 0.0)) throw ValidationError("apply_packet_loss: packet_ms must be > 0");
  if (!(loss_prob >= 0.0 && loss_prob <= 1.0)) throw ValidationError("apply_packet_loss: loss_prob must be in [0, 1]");
  const std::size_t len = packet_samples(packet_ms, speech.sample_rate_hz);
  Rng rng(seed);
  AudioBuffer out = speech;
  for (std::size_t start = 0; start < out.size(); start += len) {
    if (rng.uniform01() < loss_prob) {
      std::fill(out.samples.begin() + static_cast<std::ptrdiff_t>(start),
                out.samples.begin() + static_cast<std::ptrdiff_t>(std::min(start + len, out.size())), 0.0);
    }
  }
  return out;
}

inline constexpr double kWindCutoffHz = 300.0;

// Leaky-integrated (Brownian) noise, low-passed at 300 Hz and amplitude
// modulated by a slow sinusoidal envelope with a seeded 0.5-2 Hz rate.
inline AudioBuffer synthesize_wind(std::size_t length, int rate_hz, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> brown(length);
  double state = 0.0;
  const double leak = 1.0 - 2.0 * std::numbers::pi * 5.0 / rate_hz;  // ~5 Hz corner
  for (auto& v : brown) {
    state = leak * state + rng.normal();
    v = state;
  }
  auto taps_n = static_cast<std::size_t>(rate_hz / 50);
  taps_n += (taps_n % 2 == 0) ? 1 : 0;
  const auto taps = dsp::kaiser_lowpass(taps_n, kWindCutoffHz / rate_hz, dsp::kaiser_beta(60.0));
  auto low = dsp::filter_same_reflect(brown, taps);
  double mean = 0.0;
  for (double v : low) mean += v;
  mean /= static_cast<double>(std::max<std::size_t>(low.size(), 1));
  const double mod_hz = rng.uniform(0.5, 2.0);
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double depth = rng.uniform(0.3, 0.9);
  for (std::size_t i = 0; i < low.size(); ++i) {
    const double t = static_cast<double>(i) / rate_hz;
    low[i] = (low[i] - mean) * (1.0 + depth * std::sin(2.0 * std::numbers::pi * mod_hz * t + phase));
  }
  return {std::move(low), rate_hz};
}

// Uses the wind recording when given, otherwise synthesizes one.
inline AudioBuffer apply_wind_noise(const AudioBuffer& speech, const std::optional<AudioBuffer>& wind,
                                    double snr_db, std::uint64_t seed) {
  check_dsp_input(speech, "apply_wind_noise");
  if (wind) return mix_additive_noise(speech, *wind, snr_db);
  return mix_additive_noise(speech, synthesize_wind(speech.size(), speech.sample_rate_hz, seed), snr_db);
}

// ------------------------------------------------------------- simulation

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const Range&) const = default;
};

struct DegradationSpec {
  std::vector<Distortion> enabled;
  Range snr_db{-5.0, 20.0};
  Range wind_snr_db{-5.0, 20.0};
  Range clip_ratio{0.1, 0.5};
  std::vector<int> bandwidths_hz{4000, 8000, 11025, 12000, 16000};
  double packet_ms = 20.0;
  Range loss_prob{0.05, 0.25};
  CodecProfile codec_profile = CodecProfile::kMulaw8;
  std::string codec_command;
  int min_distortions = 1;
  int max_distortions = 1;
  std::uint64_t seed = 0;

  void validate() const {
    if (enabled.empty()) throw ValidationError("degradation spec: no distortions enabled");
    for (const auto& [name, r] : {std::pair{"snr_db", snr_db}, std::pair{"wind_snr_db", wind_snr_db},
                                  std::pair{"clip_ratio", clip_ratio}, std::pair{"loss_prob", loss_prob}}) {
      if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
        throw ValidationError(std::string("degradation spec: range ") + name + " must be ordered");
      }
    }
    if (clip_ratio.lo <= 0.0 || clip_ratio.hi > 1.0) throw ValidationError("degradation spec: clip_ratio outside (0, 1]");
    if (loss_prob.lo < 0.0 || loss_prob.hi > 1.0) throw ValidationError("degradation spec: loss_prob outside [0, 1]");
    if (!(packet_ms > 0.0)) throw ValidationError("degradation spec: packet_ms must be > 0");
    if (min_distortions < 1 || max_distortions < min_distortions) {
      throw ValidationError("degradation spec: distortions_per_utterance must be an ordered range >= 1");
    }
    if (bandwidths_hz.empty()) throw ValidationError("degradation spec: no target bandwidths");
    if (codec_profile == CodecProfile::kExternal && codec_command.empty()) {
      throw ValidationError("degradation spec: external codec needs codec_command");
    }
  }
};

inline DegradationSpec parse_degradation_spec(const config_text::Document& doc) {
  DegradationSpec spec;
  const auto range = [](const config_text::Value& v, const std::string& key) {
    const auto& items = v.as_array(key);
    if (items.size() != 2) throw ValidationError(v.where(key) + "expected [lo, hi]");
    return Range{items[0].as_number(key), items[1].as_number(key)};
  };
  for (const auto& section : doc) {
    if (!section.name.empty() && section.name != "degradation") {
      throw ValidationError("degradation spec: unknown section [" + section.name + "]");
    }
    for (const auto& [key, v] : section.entries) {
      if (key == "enabled") {
        for (const auto& item : v.as_array(key)) spec.enabled.push_back(parse_distortion(item.as_string(key)));
      } else if (key == "snr_db") {
        spec.snr_db = range(v, key);
      } else if (key == "wind_snr_db") {
        spec.wind_snr_db = range(v, key);
      } else if (key == "clip_ratio") {
        spec.clip_ratio = range(v, key);
      } else if (key == "loss_prob") {
        spec.loss_prob = range(v, key);
      } else if (key == "bandwidths_hz") {
        spec.bandwidths_hz.clear();
        for (const auto& item : v.as_array(key)) spec.bandwidths_hz.push_back(static_cast<int>(item.as_u64(key)));
      } else if (key == "packet_ms") {
        spec.packet_ms = v.as_number(key);
      } else if (key == "codec_profile") {
        const auto& p = v.as_string(key);
        if (p == "mulaw8") {
          spec.codec_profile = CodecProfile::kMulaw8;
        } else if (p == "external") {
          spec.codec_profile = CodecProfile::kExternal;
        } else {
          throw ValidationError(v.where(key) + "unknown codec profile '" + p + "'");
        }
      } else if (key == "codec_command") {
        spec.codec_command = v.as_string(key);
      } else if (key == "distortions_per_utterance") {
        const auto r = range(v, key);
        spec.min_distortions = static_cast<int>(r.lo);
        spec.max_distortions = static_cast<int>(r.hi);
      } else if (key == "seed") {
        spec.seed = v.as_u64(key);
      } else {
        throw ValidationError("degradation spec: unknown key '" + key + "'");
      }
    }
  }
  std::sort(spec.enabled.begin(), spec.enabled.end());
  spec.enabled.erase(std::unique(spec.enabled.begin(), spec.enabled.end()), spec.enabled.end());
  spec.validate();
  return spec;
}

inline DegradationSpec load_degradation_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open degradation spec " + path.string());
  return parse_degradation_spec(config_text::parse(in));
}

struct AppliedDistortion {
  Distortion kind = Distortion::kAdditiveNoise;
  Json params = Json::object();
};

struct SimulatedPair {
  AudioBuffer clean;
  AudioBuffer degraded;
  std::vector<AppliedDistortion> applied;
  std::uint64_t seed_used = 0;
};

// Audio pools for the distortions that draw from recordings. Paths must
// already be resolved.
struct SimulationSources {
  std::vector<ScoreRecord> noise;
  std::vector<ScoreRecord> rir;
  std::vector<ScoreRecord> wind;  // empty: wind is synthesized
};

namespace detail {

inline AudioBuffer load_at_rate(const std::string& path, int rate_hz) {
  AudioBuffer a = read_wav(path);
  if (a.sample_rate_hz != rate_hz) a = {resample_rational(a.samples, a.sample_rate_hz, rate_hz), rate_hz};
  return a;
}

}  // namespace detail

// Applies a sampled subset of the enabled distortions to an already
// prepared clean buffer, in canonical order.
inline SimulatedPair simulate_buffer(const std::string& utterance_id, AudioBuffer clean, const DegradationSpec& spec,
                                     const SimulationSources& sources) {
  spec.validate();
  check_dsp_input(clean, "simulate");
  const int rate = clean.sample_rate_hz;
  SimulatedPair pair;
  pair.seed_used = derive_seed(spec.seed, utterance_id);
  Rng rng(pair.seed_used);

  std::vector<int> usable_bw;
  for (int bw : spec.bandwidths_hz) {
    if (bw > 0 && 2 * bw < rate) usable_bw.push_back(bw);
  }
  std::vector<Distortion> candidates;
  for (auto d : spec.enabled) {
    if (d == Distortion::kAdditiveNoise && sources.noise.empty()) {
      throw ValidationError(utterance_id + ": additive_noise enabled but noise manifest is empty");
    }
    if (d == Distortion::kReverberation && sources.rir.empty()) {
      throw ValidationError(utterance_id + ": reverberation enabled but RIR manifest is empty");
    }
    if (d == Distortion::kBandwidthLimitation && usable_bw.empty()) continue;
    candidates.push_back(d);
  }
  if (candidates.empty()) throw ValidationError(utterance_id + ": no applicable distortion at " + std::to_string(rate) + " Hz");
  const auto max_k = std::min<std::int64_t>(spec.max_distortions, static_cast<std::int64_t>(candidates.size()));
  const auto min_k = std::min<std::int64_t>(spec.min_distortions, max_k);
  const auto k = static_cast<std::size_t>(rng.between(min_k, max_k));
  auto drawn = candidates;
  rng.shuffle(drawn);
  drawn.resize(k);
  std::sort(drawn.begin(), drawn.end());

  AudioBuffer x = clean;
  for (auto d : drawn) {
    AppliedDistortion a;
    a.kind = d;
    try {
      switch (d) {
        case Distortion::kReverberation: {
          const auto& src = sources.rir[rng.below(sources.rir.size())];
          a.params["rir"] = src.utterance_id;
          x = apply_reverb(x, detail::load_at_rate(src.path, rate));
          break;
        }
        case Distortion::kAdditiveNoise: {
          const auto& src = sources.noise[rng.below(sources.noise.size())];
          const double snr = rng.uniform(spec.snr_db.lo, spec.snr_db.hi);
          a.params["noise"] = src.utterance_id;
          a.params["snr_db"] = snr;
          x = mix_additive_noise(x, detail::load_at_rate(src.path, rate), snr);
          break;
        }
        case Distortion::kWindNoise: {
          std::optional<AudioBuffer> wind;
          if (!sources.wind.empty()) {
            const auto& src = sources.wind[rng.below(sources.wind.size())];
            a.params["wind"] = src.utterance_id;
            wind = detail::load_at_rate(src.path, rate);
          }
          const double snr = rng.uniform(spec.wind_snr_db.lo, spec.wind_snr_db.hi);
          const std::uint64_t wind_seed = rng.next_u64();
          a.params["snr_db"] = snr;
          if (!wind) a.params["wind_seed"] = wind_seed;
          x = apply_wind_noise(x, wind, snr, wind_seed);
          break;
        }
        case Distortion::kBandwidthLimitation: {
          const int bw = usable_bw[rng.below(usable_bw.size())];
          a.params["bandwidth_hz"] = bw;
          x = apply_bandwidth_limit(x, bw);
          break;
        }
        case Distortion::kCodecLoss: {
          a.params["profile"] = spec.codec_profile == CodecProfile::kMulaw8 ? "mulaw8" : "external";
          x = apply_codec_loss(x, spec.codec_profile, spec.codec_command);
          break;
        }
        case Distortion::kPacketLoss: {
          const double p = rng.uniform(spec.loss_prob.lo, spec.loss_prob.hi);
          const std::uint64_t loss_seed = rng.next_u64();
          a.params["packet_ms"] = spec.packet_ms;
          a.params["loss_prob"] = p;
          a.params["loss_seed"] = loss_seed;
          x = apply_packet_loss(x, spec.packet_ms, p, loss_seed);
          break;
        }
        case Distortion::kClipping: {
          const double ratio = rng.uniform(spec.clip_ratio.lo, spec.clip_ratio.hi);
          a.params["clip_ratio"] = ratio;
          x = apply_clipping(x, ratio);
          break;
        }
      }
    } catch (const ValidationError& e) {
      throw ValidationError(utterance_id + ": " + std::string(to_string(d)) + ": " + e.what());
    } catch (const IoError& e) {
      throw IoError(utterance_id + ": " + std::string(to_string(d)) + ": " + e.what());
    }
    pair.applied.push_back(std::move(a));
  }
  pair.clean = std::move(clean);
  pair.degraded = std::move(x);
  return pair;
}

// Reads the record's audio, high-passes it at 75 Hz, and degrades it.
inline SimulatedPair simulate(const ScoreRecord& record, const DegradationSpec& spec, const SimulationSources& sources) {
  AudioBuffer audio;
  try {
    audio = read_wav(record.path);
  } catch (const ValidationError& e) {
    throw ValidationError(record.utterance_id + ": " + e.what());
  }
  return simulate_buffer(record.utterance_id, highpass_75(audio), spec, sources);
}

inline Json applied_to_json(const std::vector<AppliedDistortion>& applied) {
  Json out = Json::array();
  for (const auto& a : applied) out.push_back(Json{{"distortion", std::string(to_string(a.kind))}, {"params", a.params}});
  return out;
}

}  // namespace curate_se
