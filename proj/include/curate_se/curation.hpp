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

// Two-stage curation: per-dataset threshold filtering, then z-scored
// overall-score ranking with duration-budgeted selection. The uniform
// random baseline shares the same budget accounting.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curate_se/error.hpp"
#include "curate_se/manifest.hpp"
#include "curate_se/rng.hpp"

namespace curate_se {

struct Violation {
  std::string metric;
  double threshold = 0.0;
  std::optional<double> observed;  // empty when the score is missing

  bool operator==(const Violation&) const = default;
};

struct Rejection {
  ScoreRecord record;
  std::vector<Violation> reasons;
};

struct FilterOutcome {
  std::vector<ScoreRecord> kept;
  std::vector<Rejection> rejected;
  std::size_t excluded_dataset_count = 0;
};

// A record passes when its dataset is not excluded and every metric of its
// threshold row is present (or skipped, when strict_missing is off) and at
// least the threshold.
inline FilterOutcome threshold_filter(const std::vector<ScoreRecord>& records, const CurationConfig& config) {
  config.validate();
  FilterOutcome out;
  for (const auto& r : records) {
    if (config.is_excluded(r.dataset)) {
      ++out.excluded_dataset_count;
      continue;
    }
    std::vector<Violation> reasons;
    for (const auto& [metric, minimum] : config.thresholds_for(r.dataset)) {
      const auto value = r.score(metric);
      if (!value) {
        if (config.strict_missing) reasons.push_back({metric, minimum, std::nullopt});
      } else if (*value < minimum) {
        reasons.push_back({metric, minimum, *value});
      }
    }
    if (reasons.empty()) {
      out.kept.push_back(r);
    } else {
      out.rejected.push_back({r, std::move(reasons)});
    }
  }
  return out;
}

struct MetricStats {
  double mean = 0.0;
  double stddev = 0.0;  // population
};

struct NormalizedScores {
  // utterance_id -> metric -> z-score
  std::map<std::string, std::map<std::string, double>> values;
  std::map<std::string, MetricStats> stats;
  std::size_t dropped = 0;  // records lacking a ranking metric
};

inline constexpr double kDegenerateStd = 1e-12;

// Per-metric z-scores with population statistics over the given records.
inline NormalizedScores normalize_scores(const std::vector<ScoreRecord>& records,
                                         const std::vector<std::string>& ranking_metrics) {
  if (records.empty()) throw ValidationError("normalize_scores: empty input");
  if (ranking_metrics.empty()) throw ValidationError("normalize_scores: no ranking metrics");
  NormalizedScores out;
  std::vector<const ScoreRecord*> usable;
  for (const auto& r : records) {
    const bool complete = std::all_of(ranking_metrics.begin(), ranking_metrics.end(),
                                      [&](const std::string& m) { return r.scores.count(m) > 0; });
    if (complete) {
      usable.push_back(&r);
    } else {
      ++out.dropped;
    }
  }
  if (usable.empty()) throw ValidationError("normalize_scores: no record carries every ranking metric");
  const auto n = static_cast<double>(usable.size());
  for (const auto& metric : ranking_metrics) {
    double sum = 0.0;
    for (const auto* r : usable) sum += r->scores.at(metric);
    const double mean = sum / n;
    double sq = 0.0;
    for (const auto* r : usable) {
      const double d = r->scores.at(metric) - mean;
      sq += d * d;
    }
    const double stddev = std::sqrt(sq / n);
    out.stats[metric] = {mean, stddev};
    for (const auto* r : usable) {
      out.values[r->utterance_id][metric] =
          stddev < kDegenerateStd ? 0.0 : (r->scores.at(metric) - mean) / stddev;
    }
  }
  return out;
}

inline std::map<std::string, double> aggregate_overall(
    const std::map<std::string, std::map<std::string, double>>& normalized) {
  std::map<std::string, double> overall;
  for (const auto& [id, per_metric] : normalized) {
    double sum = 0.0;
    for (const auto& [metric, z] : per_metric) sum += z;
    overall[id] = sum;
  }
  return overall;
}

enum class SelectionMethod { kTopRanked, kUniformRandom };

inline const char* to_string(SelectionMethod m) {
  return m == SelectionMethod::kTopRanked ? "top_ranked" : "uniform_random";
}

struct SubsetManifest {
  std::vector<ScoreRecord> records;
  SelectionMethod method = SelectionMethod::kTopRanked;
  double budget_hours = 0.0;
  double achieved_hours = 0.0;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> ranking_metrics;
  bool budget_exceeds_available = false;

  bool operator==(const SubsetManifest&) const = default;
};

namespace detail {

// Takes records in order until the next one would overshoot the budget.
inline void fill_budget(const std::vector<const ScoreRecord*>& ordered, double budget_hours, SubsetManifest& out) {
  if (!(budget_hours > 0.0)) throw ValidationError("budget_hours must be > 0");
  const double budget_s = budget_hours * 3600.0;
  double total_s = 0.0;
  for (const auto* r : ordered) total_s += r->duration_s;
  double used_s = 0.0;
  for (const auto* r : ordered) {
    if (used_s + r->duration_s > budget_s) break;
    used_s += r->duration_s;
    out.records.push_back(*r);
  }
  out.budget_hours = budget_hours;
  out.achieved_hours = used_s / 3600.0;
  out.budget_exceeds_available = total_s <= budget_s;
}

}  // namespace detail

// Highest overall score first; ties by utterance_id ascending.
inline SubsetManifest rank_and_select(const std::vector<ScoreRecord>& records,
                                      const std::map<std::string, double>& overall, double budget_hours,
                                      std::vector<std::string> ranking_metrics = {}) {
  std::vector<std::pair<double, const ScoreRecord*>> keyed;
  keyed.reserve(records.size());
  for (const auto& r : records) {
    const auto it = overall.find(r.utterance_id);
    if (it == overall.end()) throw ValidationError("rank_and_select: no overall score for " + r.utterance_id);
    keyed.emplace_back(it->second, &r);
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second->utterance_id < b.second->utterance_id;
  });
  std::vector<const ScoreRecord*> ordered;
  ordered.reserve(keyed.size());
  for (const auto& [score, r] : keyed) ordered.push_back(r);
  SubsetManifest out;
  out.method = SelectionMethod::kTopRanked;
  out.ranking_metrics = std::move(ranking_metrics);
  detail::fill_budget(ordered, budget_hours, out);
  return out;
}

// Seeded Fisher-Yates over records sorted by utterance_id, then the same
// budget fill as rank_and_select.
inline SubsetManifest uniform_sample(const std::vector<ScoreRecord>& records, double budget_hours,
                                     std::uint64_t seed) {
  std::vector<const ScoreRecord*> ordered;
  ordered.reserve(records.size());
  for (const auto& r : records) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(),
            [](const ScoreRecord* a, const ScoreRecord* b) { return a->utterance_id < b->utterance_id; });
  Rng rng(seed);
  rng.shuffle(ordered);
  SubsetManifest out;
  out.method = SelectionMethod::kUniformRandom;
  out.seed = seed;
  detail::fill_budget(ordered, budget_hours, out);
  return out;
}

// Full curation for the top-ranked route: filter, z-score over the kept
// set, sum, rank, fill budget.
inline SubsetManifest select_top_ranked(const std::vector<ScoreRecord>& records, const CurationConfig& config,
                                        double budget_hours) {
  const auto filtered = threshold_filter(records, config);
  if (filtered.kept.empty()) throw ValidationError("select: no records survive threshold filtering");
  const auto normalized = normalize_scores(filtered.kept, config.ranking_metrics);
  const auto overall = aggregate_overall(normalized.values);
  std::vector<ScoreRecord> rankable;
  for (const auto& r : filtered.kept) {
    if (overall.count(r.utterance_id)) rankable.push_back(r);
  }
  return rank_and_select(rankable, overall, budget_hours, config.ranking_metrics);
}

inline std::map<std::string, double> summarize_by_dataset(const std::vector<ScoreRecord>& records) {
  std::map<std::string, double> seconds;
  for (const auto& r : records) seconds[r.dataset] += r.duration_s;
  for (auto& [tag, s] : seconds) s /= 3600.0;
  return seconds;
}

}  // namespace curate_se
