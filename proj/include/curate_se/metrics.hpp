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

// Intrusive metrics: SDR, SI-SDR, ESTOI, LSD and plain SNR.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "curate_se/audio.hpp"
#include "curate_se/dsp.hpp"
#include "curate_se/error.hpp"

namespace curate_se::metrics {

// Stand-in for +inf (and -1e9 for -inf) in serialized outputs.
inline constexpr double kInfSentinelDb = 1e9;
inline constexpr double kResidualFloor = 1e-30;

inline double serializable(double v) {
  if (v == std::numeric_limits<double>::infinity()) return kInfSentinelDb;
  if (v == -std::numeric_limits<double>::infinity()) return -kInfSentinelDb;
  return v;
}

namespace detail {

inline void require_same_length(std::span<const double> a, std::span<const double> b, const char* what) {
  if (a.size() != b.size()) {
    throw ValidationError(std::string(what) + ": length mismatch (" + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }
  if (a.empty()) throw ValidationError(std::string(what) + ": empty signal");
}

inline double ratio_db(double num, double den) {
  if (den < kResidualFloor) return std::numeric_limits<double>::infinity();
  if (num <= 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(num / den);
}

}  // namespace detail

// 10 log10(|r|^2 / |r - e|^2); +inf when the residual vanishes.
inline double sdr(std::span<const double> reference, std::span<const double> estimate) {
  detail::require_same_length(reference, estimate, "sdr");
  double ref = 0.0, res = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    ref += reference[i] * reference[i];
    const double d = reference[i] - estimate[i];
    res += d * d;
  }
  return detail::ratio_db(ref, res);
}

// Scale-invariant SDR: the estimate is projected onto the reference.
inline double si_sdr(std::span<const double> reference, std::span<const double> estimate) {
  detail::require_same_length(reference, estimate, "si_sdr");
  double rr = 0.0, er = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    rr += reference[i] * reference[i];
    er += estimate[i] * reference[i];
  }
  if (rr <= 0.0) throw ValidationError("si_sdr: zero reference");
  const double alpha = er / rr;
  double target = 0.0, res = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double t = alpha * reference[i];
    target += t * t;
    const double d = estimate[i] - t;
    res += d * d;
  }
  return detail::ratio_db(target, res);
}

inline double measured_snr(std::span<const double> clean, std::span<const double> noise) {
  detail::require_same_length(clean, noise, "measured_snr");
  const double en = dsp::energy(noise);
  if (en <= 0.0) throw ValidationError("measured_snr: zero-energy noise");
  return 10.0 * std::log10(dsp::energy(clean) / en);
}

inline constexpr std::size_t kLsdWindow = 2048;
inline constexpr std::size_t kLsdHop = 512;
inline constexpr double kLsdEpsilon = 1e-8;

// Mean over frames of the RMS (over bins) dB difference of power spectra.
inline double lsd(std::span<const double> reference, std::span<const double> estimate) {
  detail::require_same_length(reference, estimate, "lsd");
  if (reference.size() < kLsdWindow) throw ValidationError("lsd: signal shorter than one 2048-sample frame");
  const auto window = dsp::hann(kLsdWindow);
  const std::size_t frames = 1 + (reference.size() - kLsdWindow) / kLsdHop;
  std::vector<double> fr(kLsdWindow), fe(kLsdWindow);
  double total = 0.0;
  for (std::size_t f = 0; f < frames; ++f) {
    const std::size_t start = f * kLsdHop;
    for (std::size_t i = 0; i < kLsdWindow; ++i) {
      fr[i] = reference[start + i] * window[i];
      fe[i] = estimate[start + i] * window[i];
    }
    const auto pr = dsp::power_spectrum(fr, kLsdWindow);
    const auto pe = dsp::power_spectrum(fe, kLsdWindow);
    double acc = 0.0;
    for (std::size_t k = 0; k < pr.size(); ++k) {
      const double d = 10.0 * (std::log10(pr[k] + kLsdEpsilon) - std::log10(pe[k] + kLsdEpsilon));
      acc += d * d;
    }
    total += std::sqrt(acc / static_cast<double>(pr.size()));
  }
  return total / static_cast<double>(frames);
}

namespace estoi_detail {

inline constexpr int kRate = 10000;
inline constexpr std::size_t kFrame = 256;
inline constexpr std::size_t kHop = 128;
inline constexpr std::size_t kFft = 512;
inline constexpr std::size_t kBands = 15;
inline constexpr double kMinFreq = 150.0;
inline constexpr std::size_t kSegment = 30;
inline constexpr double kDynRange = 40.0;
inline constexpr double kEps = std::numeric_limits<double>::epsilon();

// Drops frames more than 40 dB below the loudest reference frame from both
// signals and overlap-adds the rest.
inline void remove_silent_frames(std::vector<double>& x, std::vector<double>& y) {
  const auto w = dsp::hann_interior(kFrame);
  std::vector<std::size_t> starts;
  for (std::size_t s = 0; s + kFrame < x.size(); s += kHop) starts.push_back(s);
  std::vector<double> energies(starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i) {
    double e = 0.0;
    for (std::size_t k = 0; k < kFrame; ++k) {
      const double v = w[k] * x[starts[i] + k];
      e += v * v;
    }
    energies[i] = 20.0 * std::log10(std::sqrt(e) + kEps);
  }
  if (starts.empty()) {
    x.clear();
    y.clear();
    return;
  }
  const double peak = *std::max_element(energies.begin(), energies.end());
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    if (peak - kDynRange - energies[i] < 0.0) kept.push_back(starts[i]);
  }
  const std::size_t out_len = kept.empty() ? 0 : (kept.size() - 1) * kHop + kFrame;
  std::vector<double> xs(out_len, 0.0), ys(out_len, 0.0);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t k = 0; k < kFrame; ++k) {
      xs[i * kHop + k] += w[k] * x[kept[i] + k];
      ys[i * kHop + k] += w[k] * y[kept[i] + k];
    }
  }
  x = std::move(xs);
  y = std::move(ys);
}

// Band index ranges [lo, hi) over the kFft/2+1 bins.
inline std::vector<std::pair<std::size_t, std::size_t>> third_octave_bands() {
  const std::size_t bins = kFft / 2 + 1;
  const auto nearest = [&](double hz) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * kRate / static_cast<double>(kFft);
      const double d = (f - hz) * (f - hz);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    return best;
  };
  std::vector<std::pair<std::size_t, std::size_t>> bands;
  for (std::size_t b = 0; b < kBands; ++b) {
    const double k = static_cast<double>(b);
    const double lo = kMinFreq * std::pow(2.0, (2.0 * k - 1.0) / 6.0);
    const double hi = kMinFreq * std::pow(2.0, (2.0 * k + 1.0) / 6.0);
    bands.emplace_back(nearest(lo), nearest(hi));
  }
  return bands;
}

// One-third-octave magnitude envelopes, [band][frame].
inline std::vector<std::vector<double>> band_envelopes(const std::vector<double>& x) {
  const auto w = dsp::hann_interior(kFrame);
  const auto bands = third_octave_bands();
  std::vector<std::vector<double>> out(kBands);
  std::vector<double> frame(kFrame);
  for (std::size_t s = 0; s + kFrame < x.size(); s += kHop) {
    for (std::size_t k = 0; k < kFrame; ++k) frame[k] = w[k] * x[s + k];
    const auto p = dsp::power_spectrum(frame, kFft);
    for (std::size_t b = 0; b < kBands; ++b) {
      double acc = 0.0;
      for (std::size_t k = bands[b].first; k < bands[b].second; ++k) acc += p[k];
      out[b].push_back(std::sqrt(acc));
    }
  }
  return out;
}

// Mean-removes and unit-normalizes v in place.
inline void standardize(std::span<double> v) {
  double mean = 0.0;
  for (double a : v) mean += a;
  mean /= static_cast<double>(v.size());
  double norm = 0.0;
  for (double& a : v) {
    a -= mean;
    norm += a * a;
  }
  norm = std::sqrt(norm) + kEps;
  for (double& a : v) a /= norm;
}

}  // namespace estoi_detail

// Extended STOI: correlation of row- and column-normalized 30-frame
// one-third-octave envelope segments at 10 kHz, silent frames removed.
// Returns the raw average; callers report it clipped to [0, 1].
inline double estoi_raw(const AudioBuffer& reference, const AudioBuffer& estimate) {
  namespace ed = estoi_detail;
  detail::require_same_length(reference.samples, estimate.samples, "estoi");
  if (reference.sample_rate_hz != estimate.sample_rate_hz) throw ValidationError("estoi: sample rate mismatch");
  if (reference.duration_s() < 0.5) throw ValidationError("estoi: signal shorter than 0.5 s");
  auto x = ::curate_se::detail::resample_rational(reference.samples, reference.sample_rate_hz, ed::kRate);
  auto y = ::curate_se::detail::resample_rational(estimate.samples, estimate.sample_rate_hz, ed::kRate);
  if (dsp::energy(x) <= 0.0) throw ValidationError("estoi: all-silent reference");
  ed::remove_silent_frames(x, y);
  const auto xe = ed::band_envelopes(x);
  const auto ye = ed::band_envelopes(y);
  const std::size_t frames = xe[0].size();
  if (frames < ed::kSegment) throw ValidationError("estoi: too few non-silent frames");

  double total = 0.0;
  std::size_t segments = 0;
  std::vector<double> xs(ed::kBands * ed::kSegment), ys(xs.size());  // row-major [band][t]
  std::vector<double> col_x(ed::kBands), col_y(ed::kBands);
  for (std::size_t m = ed::kSegment; m <= frames; ++m) {
    for (std::size_t b = 0; b < ed::kBands; ++b) {
      for (std::size_t t = 0; t < ed::kSegment; ++t) {
        xs[b * ed::kSegment + t] = xe[b][m - ed::kSegment + t];
        ys[b * ed::kSegment + t] = ye[b][m - ed::kSegment + t];
      }
      ed::standardize(std::span<double>(xs).subspan(b * ed::kSegment, ed::kSegment));
      ed::standardize(std::span<double>(ys).subspan(b * ed::kSegment, ed::kSegment));
    }
    for (std::size_t t = 0; t < ed::kSegment; ++t) {
      for (std::size_t b = 0; b < ed::kBands; ++b) {
        col_x[b] = xs[b * ed::kSegment + t];
        col_y[b] = ys[b * ed::kSegment + t];
      }
      ed::standardize(col_x);
      ed::standardize(col_y);
      double dot = 0.0;
      for (std::size_t b = 0; b < ed::kBands; ++b) dot += col_x[b] * col_y[b];
      total += dot;
    }
    ++segments;
  }
  return total / static_cast<double>(segments * ed::kSegment);
}

inline double estoi(const AudioBuffer& reference, const AudioBuffer& estimate) {
  return std::clamp(estoi_raw(reference, estimate), 0.0, 1.0);
}

struct EvalResult {
  std::string utterance_id;
  double sdr_db = 0.0;
  double si_sdr_db = 0.0;
  double estoi = 0.0;
  double lsd = 0.0;
};

inline EvalResult evaluate_pair(const std::string& id, const AudioBuffer& reference, const AudioBuffer& estimate) {
  if (reference.sample_rate_hz != estimate.sample_rate_hz) throw ValidationError(id + ": sample rate mismatch");
  EvalResult r;
  r.utterance_id = id;
  r.sdr_db = sdr(reference.samples, estimate.samples);
  r.si_sdr_db = si_sdr(reference.samples, estimate.samples);
  r.estoi = estoi(reference, estimate);
  r.lsd = lsd(reference.samples, estimate.samples);
  return r;
}

}  // namespace curate_se::metrics
