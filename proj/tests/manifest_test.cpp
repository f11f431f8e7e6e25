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

#include <gtest/gtest.h>

#include <sstream>

#include "curate_se/curation.hpp"
#include "curate_se/manifest.hpp"
#include "curate_se/rng.hpp"
#include "curate_se/synth.hpp"

namespace curate_se {
namespace {

constexpr const char* kLine =
    R"({"utterance_id":"a","dataset":"vctk","duration_s":3.2,"sample_rate_hz":48000,"path":"a.wav","scores":{"DNSMOS":3.1}})";

TEST(ParseScoreManifest, MapsFields) {
  std::istringstream in(std::string(kLine) + "\n");
  const auto m = parse_score_manifest(in);
  ASSERT_EQ(m.records.size(), 1u);
  const auto& r = m.records[0];
  EXPECT_EQ(r.utterance_id, "a");
  EXPECT_EQ(r.dataset, "vctk");
  EXPECT_EQ(r.path, "a.wav");
  EXPECT_DOUBLE_EQ(r.duration_s, 3.2);
  EXPECT_EQ(r.sample_rate_hz, 48000);
  EXPECT_DOUBLE_EQ(r.scores.at("DNSMOS"), 3.1);
}

TEST(ParseScoreManifest, EmptyStream) {
  std::istringstream in("");
  const auto m = parse_score_manifest(in);
  EXPECT_TRUE(m.records.empty());
  EXPECT_EQ(m.duplicate_warnings, 0u);
}

TEST(ParseScoreManifest, DuplicateKeepsFirst) {
  const std::string second =
      R"({"utterance_id":"a","dataset":"ears","duration_s":1.0,"sample_rate_hz":16000,"path":"b.wav","scores":{}})";
  std::istringstream in(std::string(kLine) + "\n" + second + "\n");
  const auto m = parse_score_manifest(in, {.strict = false});
  ASSERT_EQ(m.records.size(), 1u);
  EXPECT_EQ(m.records[0].dataset, "vctk");
  EXPECT_EQ(m.duplicate_warnings, 1u);

  std::istringstream again(std::string(kLine) + "\n" + second + "\n");
  EXPECT_THROW(parse_score_manifest(again, {.strict = true}), ValidationError);
}

TEST(ParseScoreManifest, ReportsLineNumbers) {
  std::istringstream in(std::string(kLine) + "\n{not json\n");
  try {
    parse_score_manifest(in);
    FAIL() << "expected an error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(ParseScoreManifest, RejectsBadValues) {
  const auto parse = [](const std::string& line) {
    std::istringstream in(line);
    return parse_score_manifest(in);
  };
  EXPECT_THROW(parse(R"({"utterance_id":"a","dataset":"x","duration_s":1,"sample_rate_hz":11025,"path":"a","scores":{}})"),
               ValidationError);
  EXPECT_THROW(parse(R"({"utterance_id":"a","dataset":"x","duration_s":0,"sample_rate_hz":16000,"path":"a","scores":{}})"),
               ValidationError);
  EXPECT_THROW(parse(R"({"utterance_id":"a","dataset":"x","duration_s":1,"sample_rate_hz":16000,"path":"a","scores":{"M":1e999}})"),
               ValidationError);
  EXPECT_THROW(parse(R"({"utterance_id":"a","dataset":"x","duration_s":1,"sample_rate_hz":16000,"path":"a","scores":{"M":"high"}})"),
               ValidationError);
  EXPECT_THROW(parse(R"({"utterance_id":"a","dataset":"x","duration_s":1,"sample_rate_hz":16000,"scores":{}})"),
               ValidationError);
}

TEST(WriteScoreManifest, EmptyListWritesNothing) {
  std::ostringstream out;
  EXPECT_EQ(write_score_manifest({}, out), 0u);
  EXPECT_TRUE(out.str().empty());
}

TEST(WriteScoreManifest, AllMetricsOnOneLine) {
  ScoreRecord r{"u", "u.wav", "ears", 2.0, 48000, {}};
  for (const char* m : {"DNSMOS", "NISQA", "SIGMOS", "SQUIM_SDR", "UTMOS", "DNSMOS_PRO", "VQSCORE", "DISTILL_MOS"}) {
    r.scores[m] = 3.0;
  }
  std::ostringstream out;
  const auto bytes = write_score_manifest({r}, out);
  const auto text = out.str();
  EXPECT_EQ(bytes, text.size());
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
  for (const auto& [m, v] : r.scores) EXPECT_NE(text.find("\"" + m + "\""), std::string::npos) << m;
  EXPECT_EQ(text.find("{\"utterance_id\""), 0u);  // fixed key order starts with the id
}

// parse(write(x)) == x over random record lists, including awkward doubles.
TEST(ScoreManifestProperty, RoundTripIdentity) {
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<ScoreRecord> records;
    const auto n = rng.below(40);
    for (std::uint64_t i = 0; i < n; ++i) {
      ScoreRecord r;
      r.utterance_id = "id/" + std::to_string(trial) + "/" + std::to_string(i) + "\"q\\";
      r.path = "dir with space/é.wav";
      r.dataset = trial % 2 ? "EARS" : "commonvoice_zh";
      r.duration_s = rng.uniform(1e-3, 1e4);
      r.sample_rate_hz = kSupportedRates[rng.below(kSupportedRates.size())];
      const auto m = rng.below(9);
      for (std::uint64_t k = 0; k < m; ++k) r.scores["M" + std::to_string(k)] = rng.normal() * std::pow(10.0, rng.between(-12, 12));
      records.push_back(std::move(r));
    }
    std::ostringstream out;
    write_score_manifest(records, out);
    std::istringstream in(out.str());
    const auto parsed = parse_score_manifest(in, {.strict = true});
    ASSERT_EQ(parsed.records, records);

    std::ostringstream again;
    write_score_manifest(parsed.records, again);
    EXPECT_EQ(again.str(), out.str());  // byte stable
  }
}

TEST(ScoreManifestProperty, DatasetHoursMatchDurations) {
  const auto records = synth::score_manifest(2000, 3);
  std::map<std::string, double> seconds;
  for (const auto& r : records) seconds[r.dataset] += r.duration_s;
  std::ostringstream out;
  write_score_manifest(records, out);
  std::istringstream in(out.str());
  const auto hours = summarize_by_dataset(parse_score_manifest(in).records);
  ASSERT_EQ(hours.size(), seconds.size());
  for (const auto& [tag, s] : seconds) EXPECT_NEAR(hours.at(tag), s / 3600.0, 1e-6) << tag;
}

TEST(ScoreManifest, ProvenanceHeaderRoundTrip) {
  Json prov{{"method", "uniform_random"}, {"seed", 42}};
  std::ostringstream out;
  write_score_manifest({ScoreRecord{"a", "a.wav", "x", 1.0, 16000, {}}}, out, prov);
  std::istringstream in(out.str());
  const auto m = parse_score_manifest(in);
  ASSERT_TRUE(m.provenance.has_value());
  EXPECT_EQ((*m.provenance)["seed"], 42);
  EXPECT_EQ(m.records.size(), 1u);
}

constexpr const char* kReferenceConfig = R"(
excluded_datasets = ["wsj"]

[thresholds.Default]
DNSMOS = 3.0
SIGMOS = 3.0
UTMOS = 3.0
NISQA = 4.0
SQUIM_SDR = 20

[thresholds.EARS]
DNSMOS = 2.5
SIGMOS = 2.5
UTMOS = 2.5
NISQA = 3.0
SQUIM_SDR = 0.0

[thresholds.commonvoice_zh]   # Common Voice (ZH)
DNSMOS = 3.0
SIGMOS = 3.0
UTMOS = 3.0
NISQA = 4.0
SQUIM_SDR = 0.0

[ranking]
metrics = ["DNSMOS", "NISQA", "SIGMOS", "SQUIM_SDR", "UTMOS"]

[selection]
budget_hours = 700
seed = 18446744073709551615
)";

TEST(LoadCurationConfig, ThresholdTable) {
  const auto cfg = parse_curation_config(kReferenceConfig);
  EXPECT_EQ(cfg.thresholds.at("Default").at("DNSMOS"), 3.0);
  EXPECT_EQ(cfg.thresholds.at("EARS").at("DNSMOS"), 2.5);
  EXPECT_EQ(cfg.thresholds.at("Default").at("SQUIM_SDR"), 20.0);
  EXPECT_EQ(cfg.thresholds.at("EARS").at("SQUIM_SDR"), 0.0);
  EXPECT_EQ(cfg.thresholds.at("commonvoice_zh").at("NISQA"), 4.0);
  EXPECT_EQ(cfg.seed, 18446744073709551615ULL);
  EXPECT_EQ(cfg.budget_hours, 700.0);
  EXPECT_TRUE(cfg.is_excluded("WSJ"));
  // unlisted datasets resolve to Default; tags match case-insensitively
  EXPECT_EQ(&cfg.thresholds_for("librivox"), &cfg.thresholds.at("Default"));
  EXPECT_EQ(&cfg.thresholds_for("ears"), &cfg.thresholds.at("EARS"));
}

TEST(LoadCurationConfig, MultiLineArray) {
  const auto cfg = parse_curation_config(
      "excluded_datasets = [\"wsj\",  # news\n  \"a]b\",\n]\n[thresholds.Default]\nDNSMOS = 3\n");
  EXPECT_EQ(cfg.excluded_datasets, (std::set<std::string>{"wsj", "a]b"}));
  EXPECT_THROW(parse_curation_config("excluded_datasets = [\"wsj\",\n[thresholds.Default]\nDNSMOS = 3\n"),
               ValidationError);
}

TEST(LoadCurationConfig, Errors) {
  EXPECT_THROW(parse_curation_config("[thresholds.EARS]\nDNSMOS = 2.5\n"), ValidationError);
  EXPECT_THROW(parse_curation_config("[thresholds.Default]\nDNSMOS = 3\n[selection]\nbudget_hours = -1\n"),
               ValidationError);
  EXPECT_THROW(parse_curation_config("[thresholds.Default]\nDNSMOS = 3\n[selection]\nbudgets = 1\n"), ValidationError);
  EXPECT_THROW(parse_curation_config("[thresholds.Default]\nDNSMOS = 3\n[ranking]\nmetrics = []\n"), ValidationError);
  EXPECT_THROW(parse_curation_config("[thresholds.Default]\nDNSMOS = abc\n"), ValidationError);
  EXPECT_THROW(parse_curation_config("[thresholds.Default]\nDNSMOS = 3\n[bogus]\n"), ValidationError);
  // unknown keys are tolerated outside strict mode
  EXPECT_NO_THROW(parse_curation_config("[thresholds.Default]\nDNSMOS = 3\n[selection]\nbudgets = 1\n", false));
}

}  // namespace
}  // namespace curate_se
