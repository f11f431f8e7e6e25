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

// Signal-level screening of "clean" recordings: clipping, infrasound,
// stationary noise floor and effective bandwidth.

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "curate_se/audio.hpp"
#include "curate_se/dsp.hpp"
#include "curate_se/error.hpp"

namespace curate_se::anomaly {

inline constexpr double kClipRelativeLevel = 0.999;
inline constexpr double kClipGate = 0.5;
inline constexpr double kInfraLowHz = 1.0;
inline constexpr double kInfraSplitHz = 75.0;
inline constexpr double kFloorFrameS = 0.032;
inline constexpr double kFloorHopS = 0.016;
inline constexpr double kFloorPercentile = 0.10;
inline constexpr double kFloorMinDbfs = -120.0;
inline constexpr double kBandwidthDropDb = 60.0;
inline constexpr double kBandwidthStepHz = 250.0;

struct AnomalyReport {
  double clipping_fraction = 0.0;
  double infrasound_ratio_db = 0.0;
  double noise_floor_dbfs = kFloorMinDbfs;
  double effective_bandwidth_hz = 0.0;
};

namespace detail {

inline void require_one_second(const AudioBuffer& buffer, const char* what) {
  check_dsp_input(buffer, what);
  if (buffer.samples.size() < static_cast<std::size_t>(buffer.sample_rate_hz)) {
    throw ValidationError(std::string(what) + ": buffer shorter than 1 s");
  }
}

}  // namespace detail

// Fraction of samples within 0.1% of the peak, gated on peak >= 0.5.
inline double detect_clipping(const AudioBuffer& buffer) {
  if (buffer.samples.empty()) throw ValidationError("detect_clipping: empty buffer");
  double peak = 0.0;
  for (double s : buffer.samples) peak = std::max(peak, std::abs(s));
  if (peak < kClipGate) return 0.0;
  const double level = kClipRelativeLevel * peak;
  const auto n = std::count_if(buffer.samples.begin(), buffer.samples.end(),
                               [level](double s) { return std::abs(s) >= level; });
  return static_cast<double>(n) / static_cast<double>(buffer.samples.size());
}

// Mean PSD in [1, 75] Hz over mean PSD above 75 Hz, in dB.
inline double detect_infrasound(const AudioBuffer& buffer) {
  detail::require_one_second(buffer, "detect_infrasound");
  if (buffer.sample_rate_hz < 8000) throw ValidationError("detect_infrasound: sample rate below 8 kHz");
  const std::size_t segment =
      std::min(dsp::prev_pow2(buffer.samples.size()), dsp::next_pow2(static_cast<std::size_t>(buffer.sample_rate_hz)));
  const auto psd = dsp::welch(buffer.samples, buffer.sample_rate_hz, segment);
  double low = 0.0, high = 0.0;
  std::size_t n_low = 0, n_high = 0;
  for (std::size_t k = 1; k < psd.density.size(); ++k) {
    const double f = static_cast<double>(k) * psd.bin_hz;
    if (f >= kInfraLowHz && f <= kInfraSplitHz) {
      low += psd.density[k];
      ++n_low;
    } else if (f > kInfraSplitHz) {
      high += psd.density[k];
      ++n_high;
    }
  }
  low /= static_cast<double>(std::max<std::size_t>(n_low, 1));
  high /= static_cast<double>(std::max<std::size_t>(n_high, 1));
  constexpr double kTiny = 1e-300;
  return 10.0 * std::log10((low + kTiny) / (high + kTiny));
}

// 10th percentile (linear interpolation) of 32 ms frame RMS, in dBFS.
inline double estimate_noise_floor(const AudioBuffer& buffer) {
  detail::require_one_second(buffer, "estimate_noise_floor");
  const auto frame = static_cast<std::size_t>(std::lround(kFloorFrameS * buffer.sample_rate_hz));
  const auto hop = static_cast<std::size_t>(std::lround(kFloorHopS * buffer.sample_rate_hz));
  std::vector<double> levels;
  for (std::size_t s = 0; s + frame <= buffer.samples.size(); s += hop) {
    levels.push_back(dsp::rms(std::span<const double>(buffer.samples).subspan(s, frame)));
  }
  std::sort(levels.begin(), levels.end());
  const double pos = kFloorPercentile * static_cast<double>(levels.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, levels.size() - 1);
  const double value = levels[lo] + (pos - static_cast<double>(lo)) * (levels[hi] - levels[lo]);
  if (value <= 0.0) return kFloorMinDbfs;
  return std::max(kFloorMinDbfs, 20.0 * std::log10(value));
}

// Upper edge of the highest 250 Hz block [f - 250, f) whose mean PSD lies
// within 60 dB of the peak bin. Blocks sit on a fixed grid f = 250 k, the
// last one capped at Nyquist.
inline double estimate_effective_bandwidth(const AudioBuffer& buffer) {
  detail::require_one_second(buffer, "estimate_effective_bandwidth");
  const std::size_t segment = dsp::next_pow2(static_cast<std::size_t>(buffer.sample_rate_hz / 8));
  const auto psd = dsp::welch(buffer.samples, buffer.sample_rate_hz, segment);
  const double peak = *std::max_element(psd.density.begin(), psd.density.end());
  if (peak <= 0.0) return 0.0;
  const double threshold = peak * std::pow(10.0, -kBandwidthDropDb / 10.0);
  const double nyquist = buffer.sample_rate_hz / 2.0;
  const auto blocks = static_cast<std::size_t>(std::ceil(nyquist / kBandwidthStepHz));
  for (std::size_t b = blocks; b >= 1; --b) {
    const double hi = std::min(nyquist, static_cast<double>(b) * kBandwidthStepHz);
    const double lo = static_cast<double>(b - 1) * kBandwidthStepHz;
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < psd.density.size(); ++k) {
      const double f = static_cast<double>(k) * psd.bin_hz;
      const bool last = b == blocks;
      if (f >= lo && (f < hi || (last && f <= hi))) {
        sum += psd.density[k];
        ++n;
      }
    }
    if (n > 0 && sum / static_cast<double>(n) > threshold) return hi;
  }
  return 0.0;
}

inline AnomalyReport analyze(const AudioBuffer& buffer) {
  AnomalyReport r;
  r.clipping_fraction = detect_clipping(buffer);
  r.infrasound_ratio_db = detect_infrasound(buffer);
  r.noise_floor_dbfs = estimate_noise_floor(buffer);
  r.effective_bandwidth_hz = estimate_effective_bandwidth(buffer);
  return r;
}

}  // namespace curate_se::anomaly
