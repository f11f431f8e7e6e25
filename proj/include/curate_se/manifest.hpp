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

// Score manifests (JSON Lines) and the curation config.

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "curate_se/audio.hpp"
#include "curate_se/config_text.hpp"
#include "curate_se/error.hpp"

namespace curate_se {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// Canonical names of the threshold-filtering metrics.
inline const std::vector<std::string>& tbf_metrics() {
  static const std::vector<std::string> names = {"DNSMOS", "NISQA", "SIGMOS", "SQUIM_SDR", "UTMOS"};
  return names;
}

struct ScoreRecord {
  std::string utterance_id;
  std::string path;
  std::string dataset;
  double duration_s = 0.0;
  int sample_rate_hz = 0;
  std::map<std::string, double> scores;

  std::optional<double> score(const std::string& metric) const {
    const auto it = scores.find(metric);
    if (it == scores.end()) return std::nullopt;
    return it->second;
  }

  bool operator==(const ScoreRecord&) const = default;
};

struct ManifestParseOptions {
  bool strict = false;  // fail on duplicate ids instead of keeping the first
};

struct Manifest {
  std::vector<ScoreRecord> records;
  std::size_t duplicate_warnings = 0;
  std::optional<Json> provenance;  // header line of subset manifests
};

inline ScoreRecord record_from_json(const Json& j, std::size_t line) {
  const auto fail = [line](const std::string& msg) -> ValidationError {
    return ValidationError("manifest line " + std::to_string(line) + ": " + msg);
  };
  if (!j.is_object()) throw fail("not a JSON object");
  for (const char* key : {"utterance_id", "path", "dataset", "duration_s", "sample_rate_hz", "scores"}) {
    if (!j.contains(key)) throw fail(std::string("missing key '") + key + "'");
  }
  ScoreRecord r;
  if (!j["utterance_id"].is_string() || j["utterance_id"].get_ref<const std::string&>().empty()) {
    throw fail("utterance_id must be a non-empty string");
  }
  if (!j["path"].is_string()) throw fail("path must be a string");
  if (!j["dataset"].is_string()) throw fail("dataset must be a string");
  if (!j["duration_s"].is_number()) throw fail("duration_s must be a number");
  if (!j["sample_rate_hz"].is_number_integer()) throw fail("sample_rate_hz must be an integer");
  if (!j["scores"].is_object()) throw fail("scores must be an object");
  r.utterance_id = j["utterance_id"].get<std::string>();
  r.path = j["path"].get<std::string>();
  r.dataset = j["dataset"].get<std::string>();
  r.duration_s = j["duration_s"].get<double>();
  if (!std::isfinite(r.duration_s) || r.duration_s <= 0.0) throw fail("duration_s must be > 0");
  const auto rate = j["sample_rate_hz"].get<std::int64_t>();
  if (!is_supported_rate(static_cast<int>(rate)) || rate != static_cast<int>(rate)) {
    throw fail("unknown sample rate " + std::to_string(rate));
  }
  r.sample_rate_hz = static_cast<int>(rate);
  for (const auto& [name, value] : j["scores"].items()) {
    if (!value.is_number()) throw fail("score '" + name + "' is not a number");
    const double v = value.get<double>();
    if (!std::isfinite(v)) throw fail("score '" + name + "' is not finite");
    r.scores.emplace(name, v);
  }
  return r;
}

inline OrderedJson record_to_json(const ScoreRecord& r) {
  OrderedJson j;
  j["utterance_id"] = r.utterance_id;
  j["path"] = r.path;
  j["dataset"] = r.dataset;
  j["duration_s"] = r.duration_s;
  j["sample_rate_hz"] = r.sample_rate_hz;
  OrderedJson scores = OrderedJson::object();
  for (const auto& [name, value] : r.scores) scores[name] = value;
  j["scores"] = std::move(scores);
  return j;
}

// Reads one record per line. Blank lines are skipped; an optional
// {"provenance": {...}} object may precede the records.
inline Manifest parse_score_manifest(std::istream& in, const ManifestParseOptions& options = {}) {
  Manifest out;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception& e) {  // syntax errors and number overflow
      throw ValidationError("manifest line " + std::to_string(line_no) + ": malformed JSON: " + e.what());
    }
    if (!any && j.is_object() && j.contains("provenance")) {
      out.provenance = j["provenance"];
      any = true;
      continue;
    }
    any = true;
    ScoreRecord r;
    try {
      r = record_from_json(j, line_no);
    } catch (const Json::exception& e) {
      throw ValidationError("manifest line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!seen.insert(r.utterance_id).second) {
      if (options.strict) {
        throw ValidationError("manifest line " + std::to_string(line_no) + ": duplicate utterance_id '" +
                              r.utterance_id + "'");
      }
      ++out.duplicate_warnings;
      continue;
    }
    out.records.push_back(std::move(r));
  }
  if (in.bad()) throw IoError("manifest read failed");
  return out;
}

inline Manifest load_score_manifest(const std::filesystem::path& path, const ManifestParseOptions& options = {}) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  try {
    return parse_score_manifest(in, options);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

// Writes records with a fixed key order. Returns the number of bytes written.
inline std::size_t write_score_manifest(const std::vector<ScoreRecord>& records, std::ostream& out,
                                        const std::optional<Json>& provenance = std::nullopt) {
  std::size_t bytes = 0;
  const auto emit = [&](const std::string& line) {
    out << line << '\n';
    bytes += line.size() + 1;
  };
  if (provenance) {
    OrderedJson header;
    header["provenance"] = OrderedJson::parse(provenance->dump());
    emit(header.dump());
  }
  for (const auto& r : records) {
    for (const auto& [name, v] : r.scores) {
      if (!std::isfinite(v)) throw ValidationError("record " + r.utterance_id + ": non-finite score " + name);
    }
    emit(record_to_json(r).dump());
  }
  if (!out) throw IoError("manifest write failed");
  return bytes;
}

inline void save_score_manifest(const std::vector<ScoreRecord>& records, const std::filesystem::path& path,
                                const std::optional<Json>& provenance = std::nullopt) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  write_score_manifest(records, out, provenance);
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

inline std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline constexpr std::string_view kDefaultRow = "Default";

struct CurationConfig {
  // dataset tag -> metric -> minimum value; must hold a "Default" row.
  std::map<std::string, std::map<std::string, double>> thresholds;
  std::set<std::string> excluded_datasets;
  std::vector<std::string> ranking_metrics = tbf_metrics();
  double budget_hours = 700.0;
  std::uint64_t seed = 0;
  bool strict_missing = false;

  // Row for a dataset tag (case-insensitive), falling back to Default.
  const std::map<std::string, double>& thresholds_for(std::string_view dataset) const {
    const std::string key = lowercase(dataset);
    for (const auto& [tag, row] : thresholds) {
      if (tag != kDefaultRow && lowercase(tag) == key) return row;
    }
    const auto it = thresholds.find(std::string(kDefaultRow));
    if (it == thresholds.end()) throw ValidationError("curation config has no Default threshold row");
    return it->second;
  }

  bool is_excluded(std::string_view dataset) const {
    const std::string key = lowercase(dataset);
    return std::any_of(excluded_datasets.begin(), excluded_datasets.end(),
                       [&](const std::string& tag) { return lowercase(tag) == key; });
  }

  void validate() const {
    if (!thresholds.count(std::string(kDefaultRow))) throw ValidationError("curation config: missing [thresholds.Default]");
    for (const auto& [tag, row] : thresholds) {
      for (const auto& [metric, v] : row) {
        if (!std::isfinite(v)) throw ValidationError("curation config: non-finite threshold " + tag + "." + metric);
      }
    }
    if (ranking_metrics.empty()) throw ValidationError("curation config: ranking metrics empty");
    if (!(budget_hours > 0.0) || !std::isfinite(budget_hours)) {
      throw ValidationError("curation config: budget_hours must be > 0");
    }
  }
};

// Sections: [thresholds.<tag>] metric = min, [thresholds.Default],
// [ranking] metrics = [...], [selection] budget_hours / seed; top-level
// excluded_datasets = [...] and strict_missing = bool. With `strict`,
// unknown keys and sections are errors.
inline CurationConfig parse_curation_config(const config_text::Document& doc, bool strict = true) {
  CurationConfig cfg;
  const auto unknown = [strict](const std::string& what) {
    if (strict) throw ValidationError("curation config: unknown " + what);
  };
  for (const auto& section : doc) {
    const auto parts = config_text::split_section(section.name);
    if (section.name.empty()) {
      for (const auto& [key, v] : section.entries) {
        if (key == "excluded_datasets") {
          for (const auto& item : v.as_array(key)) cfg.excluded_datasets.insert(item.as_string(key));
        } else if (key == "strict_missing") {
          cfg.strict_missing = v.as_bool(key);
        } else {
          unknown("key '" + key + "'");
        }
      }
    } else if (parts.size() == 2 && parts[0] == "thresholds") {
      auto& row = cfg.thresholds[parts[1]];
      for (const auto& [metric, v] : section.entries) row[metric] = v.as_number(metric);
    } else if (section.name == "ranking") {
      for (const auto& [key, v] : section.entries) {
        if (key == "metrics") {
          cfg.ranking_metrics.clear();
          for (const auto& item : v.as_array(key)) cfg.ranking_metrics.push_back(item.as_string(key));
        } else {
          unknown("key 'ranking." + key + "'");
        }
      }
    } else if (section.name == "selection") {
      for (const auto& [key, v] : section.entries) {
        if (key == "budget_hours") {
          cfg.budget_hours = v.as_number(key);
        } else if (key == "seed") {
          cfg.seed = v.as_u64(key);
        } else if (key == "excluded_datasets") {
          for (const auto& item : v.as_array(key)) cfg.excluded_datasets.insert(item.as_string(key));
        } else if (key == "strict_missing") {
          cfg.strict_missing = v.as_bool(key);
        } else {
          unknown("key 'selection." + key + "'");
        }
      }
    } else {
      unknown("section [" + section.name + "]");
    }
  }
  cfg.validate();
  return cfg;
}

inline CurationConfig parse_curation_config(const std::string& text, bool strict = true) {
  return parse_curation_config(config_text::parse_string(text), strict);
}

inline CurationConfig load_curation_config(const std::filesystem::path& path, bool strict = true) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  return parse_curation_config(config_text::parse(in), strict);
}

}  // namespace curate_se
