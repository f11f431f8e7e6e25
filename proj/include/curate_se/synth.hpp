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

// Synthetic fixtures: score manifests with correlated quality scores,
// speech-like audio, noise, impulse responses, and a manifest whose
// per-dataset hours follow the Track1 duration table.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "curate_se/audio.hpp"
#include "curate_se/manifest.hpp"
#include "curate_se/rng.hpp"

namespace curate_se::synth {

inline std::string numbered(const std::string& prefix, std::size_t i, int width = 6) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%0*zu", width, i);
  return prefix + buf;
}

struct ScoreFixtureOptions {
  std::vector<std::string> datasets = {"librivox", "libritts", "vctk", "ears", "mls_hq", "commonvoice", "wsj"};
  double min_duration_s = 2.0;
  double max_duration_s = 12.0;
  int sample_rate_hz = 16000;
  bool extra_metrics = true;  // DNSMOS_PRO, VQSCORE, DISTILL_MOS
  std::string path_prefix = "audio/";
};

// Scores share a latent quality factor, so filtering on the threshold
// metrics also shifts the metrics it does not use.
inline std::vector<ScoreRecord> score_manifest(std::size_t n, std::uint64_t seed,
                                               const ScoreFixtureOptions& options = {}) {
  Rng rng(seed);
  std::vector<ScoreRecord> out;
  out.reserve(n);
  const auto mos = [&](double q, double centre) { return std::clamp(centre + 0.55 * q + 0.35 * rng.normal(), 1.0, 5.0); };
  for (std::size_t i = 0; i < n; ++i) {
    ScoreRecord r;
    r.utterance_id = numbered("utt", i);
    r.dataset = options.datasets[rng.below(options.datasets.size())];
    r.path = options.path_prefix + r.utterance_id + ".wav";
    r.duration_s = std::round(rng.uniform(options.min_duration_s, options.max_duration_s) * 1000.0) / 1000.0;
    r.sample_rate_hz = options.sample_rate_hz;
    const double q = rng.normal();
    r.scores["DNSMOS"] = mos(q, 3.1);
    r.scores["SIGMOS"] = mos(q, 3.1);
    r.scores["UTMOS"] = mos(q, 3.0);
    r.scores["NISQA"] = mos(q, 3.8);
    r.scores["SQUIM_SDR"] = 18.0 + 6.0 * q + 3.0 * rng.normal();
    if (options.extra_metrics) {
      r.scores["DNSMOS_PRO"] = mos(q, 3.3);
      r.scores["VQSCORE"] = 0.65 + 0.05 * q + 0.02 * rng.normal();
      r.scores["DISTILL_MOS"] = mos(q, 3.5);
    }
    out.push_back(std::move(r));
  }
  return out;
}

// The threshold table used for filtering, as config text.
inline std::string reference_threshold_config(double budget_hours = 700.0, std::uint64_t seed = 42) {
  return "excluded_datasets = [\"wsj\"]\n"
         "strict_missing = true\n\n"
         "[thresholds.Default]\nDNSMOS = 3.0\nSIGMOS = 3.0\nUTMOS = 3.0\nNISQA = 4.0\nSQUIM_SDR = 20\n\n"
         "[thresholds.EARS]\nDNSMOS = 2.5\nSIGMOS = 2.5\nUTMOS = 2.5\nNISQA = 3.0\nSQUIM_SDR = 0.0\n\n"
         "[thresholds.commonvoice_zh]\nDNSMOS = 3.0\nSIGMOS = 3.0\nUTMOS = 3.0\nNISQA = 4.0\nSQUIM_SDR = 0.0\n\n"
         "[ranking]\nmetrics = [\"DNSMOS\", \"NISQA\", \"SIGMOS\", \"SQUIM_SDR\", \"UTMOS\"]\n\n"
         "[selection]\nbudget_hours = " +
         std::to_string(budget_hours) + "\nseed = " + std::to_string(seed) + "\n";
}

struct DatasetHours {
  std::string dataset;
  int full_hours = 0;
  int kept_hours = 0;  // 0 with excluded = true for datasets not used
  bool excluded = false;
};

inline const std::vector<DatasetHours>& duration_table() {
  static const std::vector<DatasetHours> table = {
      {"librivox", 350, 150, false}, {"libritts", 200, 109, false},  {"vctk", 80, 44, false},
      {"ears", 107, 16, false},      {"mls_hq", 450, 129, false},    {"commonvoice", 1300, 250, false},
      {"wsj", 85, 0, true},
  };
  return table;
}

// Half-hour records; per dataset, exactly 2 * kept_hours of them clear every
// threshold of their row and the rest miss exactly one metric.
inline std::vector<ScoreRecord> duration_fixture(const CurationConfig& config, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ScoreRecord> out;
  std::size_t next_id = 0;
  for (const auto& row : duration_table()) {
    const auto& thresholds = config.thresholds_for(row.dataset);
    const int n_full = 2 * row.full_hours;
    const int n_kept = 2 * row.kept_hours;
    for (int i = 0; i < n_full; ++i) {
      ScoreRecord r;
      r.utterance_id = numbered(row.dataset + "_", next_id++, 7);
      r.dataset = row.dataset;
      r.path = "audio/" + r.utterance_id + ".wav";
      r.duration_s = 1800.0;
      r.sample_rate_hz = 48000;
      for (const auto& [metric, minimum] : thresholds) r.scores[metric] = minimum + rng.uniform(0.0, 1.0);
      if (i >= n_kept && !thresholds.empty()) {
        auto it = thresholds.begin();
        std::advance(it, static_cast<std::ptrdiff_t>(rng.below(thresholds.size())));
        r.scores[it->first] = it->second - rng.uniform(0.01, 1.0);
      }
      out.push_back(std::move(r));
    }
  }
  // interleave datasets so order carries no information
  rng.shuffle(out);
  return out;
}

// Voiced harmonic source with syllable-rate gating and pauses, peak 0.5.
inline AudioBuffer speech_like(double duration_s, int rate_hz, std::uint64_t seed) {
  Rng rng(seed);
  const auto n = static_cast<std::size_t>(std::lround(duration_s * rate_hz));
  std::vector<double> x(n, 0.0);
  const double f0 = rng.uniform(100.0, 220.0);
  const double vibrato_hz = rng.uniform(3.0, 6.0);
  const double syllable_hz = rng.uniform(3.0, 5.0);
  const double top = std::min(4000.0, 0.45 * rate_hz);
  std::vector<double> harmonic_amp;
  for (int k = 1; k * f0 < top; ++k) harmonic_amp.push_back(rng.uniform(0.5, 1.0) / k);
  std::vector<double> phases(harmonic_amp.size(), 0.0);
  double theta = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate_hz;
    const double f = f0 * (1.0 + 0.05 * std::sin(2.0 * std::numbers::pi * vibrato_hz * t));
    theta += 2.0 * std::numbers::pi * f / rate_hz;
    double v = 0.0;
    for (std::size_t k = 0; k < harmonic_amp.size(); ++k) v += harmonic_amp[k] * std::sin(static_cast<double>(k + 1) * theta);
    const double gate = std::pow(std::max(0.0, std::sin(std::numbers::pi * syllable_hz * t)), 2.0);
    x[i] = v * gate + 0.01 * rng.normal() * gate;
  }
  // pauses: silence roughly every second, 150 ms long
  for (double start = 0.8; start + 0.15 < duration_s; start += rng.uniform(0.8, 1.4)) {
    const auto a = static_cast<std::size_t>(start * rate_hz);
    const auto b = std::min(n, static_cast<std::size_t>((start + 0.15) * rate_hz));
    for (std::size_t i = a; i < b; ++i) x[i] *= 0.001;
  }
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  if (peak > 0.0) {
    for (auto& v : x) v *= 0.5 / peak;
  }
  return {std::move(x), rate_hz};
}

// Gaussian white noise, optionally one-pole colored.
inline AudioBuffer noise(double duration_s, int rate_hz, std::uint64_t seed, double rms = 0.1, double color = 0.0) {
  Rng rng(seed);
  const auto n = static_cast<std::size_t>(std::lround(duration_s * rate_hz));
  std::vector<double> x(n);
  double state = 0.0;
  for (auto& v : x) {
    state = color * state + rng.normal();
    v = state;
  }
  const double current = dsp::rms(x);
  for (auto& v : x) v *= rms / current;
  return {std::move(x), rate_hz};
}

// Direct path after a short random delay followed by an exponentially
// decaying diffuse tail that stays below the direct tap.
inline AudioBuffer impulse_response(int rate_hz, std::uint64_t seed, double rt60_s = 0.3) {
  Rng rng(seed);
  const auto delay = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(rate_hz / 200)));
  const auto tail = static_cast<std::size_t>(rt60_s * rate_hz);
  std::vector<double> h(delay + 1 + tail, 0.0);
  h[delay] = 1.0;
  const double decay = std::log(1000.0) / static_cast<double>(tail);  // -60 dB at rt60
  for (std::size_t i = 1; i <= tail; ++i) {
    h[delay + i] = 0.2 * rng.normal() * std::exp(-decay * static_cast<double>(i)) / 3.0;
  }
  return {std::move(h), rate_hz};
}

struct CorpusPaths {
  std::filesystem::path speech_manifest;
  std::filesystem::path noise_manifest;
  std::filesystem::path rir_manifest;
};

// Writes a small corpus: speech WAVs with synthetic scores, noise WAVs and
// RIR WAVs, each with a manifest. Manifest paths are relative to `dir`.
inline CorpusPaths write_corpus(const std::filesystem::path& dir, std::size_t n_speech, std::uint64_t seed,
                                int rate_hz = 16000, std::size_t n_noise = 4, std::size_t n_rir = 3) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "speech");
  fs::create_directories(dir / "noise");
  fs::create_directories(dir / "rir");
  ScoreFixtureOptions opts;
  opts.sample_rate_hz = rate_hz;
  opts.min_duration_s = 2.0;
  opts.max_duration_s = 4.0;
  opts.path_prefix = "speech/";
  auto speech = score_manifest(n_speech, seed, opts);
  for (auto& r : speech) {
    const auto audio = speech_like(r.duration_s, rate_hz, derive_seed(seed, r.utterance_id));
    r.duration_s = audio.duration_s();
    write_wav(audio, dir / r.path, WavEncoding::kPcm16);
  }
  std::vector<ScoreRecord> noises, rirs;
  for (std::size_t i = 0; i < n_noise; ++i) {
    ScoreRecord r;
    r.utterance_id = numbered("noise", i, 3);
    r.dataset = "noise";
    r.path = "noise/" + r.utterance_id + ".wav";
    const auto audio = noise(3.0, rate_hz, derive_seed(seed + 1, r.utterance_id), 0.1, 0.3 * static_cast<double>(i % 3));
    r.duration_s = audio.duration_s();
    r.sample_rate_hz = rate_hz;
    write_wav(audio, dir / r.path, WavEncoding::kFloat32);
    noises.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < n_rir; ++i) {
    ScoreRecord r;
    r.utterance_id = numbered("rir", i, 3);
    r.dataset = "rir";
    r.path = "rir/" + r.utterance_id + ".wav";
    const auto audio = impulse_response(rate_hz, derive_seed(seed + 2, r.utterance_id), 0.2 + 0.1 * static_cast<double>(i));
    r.duration_s = audio.duration_s();
    r.sample_rate_hz = rate_hz;
    write_wav(audio, dir / r.path, WavEncoding::kFloat32);
    rirs.push_back(std::move(r));
  }
  CorpusPaths paths{dir / "speech.jsonl", dir / "noise.jsonl", dir / "rir.jsonl"};
  save_score_manifest(speech, paths.speech_manifest);
  save_score_manifest(noises, paths.noise_manifest);
  save_score_manifest(rirs, paths.rir_manifest);
  return paths;
}

}  // namespace curate_se::synth
