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

// Acceptance suite: one PASS/FAIL line per top-level criterion. Exits
// non-zero when any criterion fails.

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "curate_se/cli.hpp"
#include "curate_se/curate_se.hpp"
#include "curate_se/synth.hpp"
#include "oracles.hpp"

namespace {

using namespace curate_se;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) { return report::fmt(v); }

// ------------------------------------------------------------------ filter

// Hand-coded copy of the reference threshold table.
struct Row {
  double dnsmos, sigmos, utmos, nisqa, squim;
};

bool brute_force_keep(const ScoreRecord& r) {
  std::string tag = r.dataset;
  for (auto& c : tag) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (tag == "wsj") return false;
  Row row{3.0, 3.0, 3.0, 4.0, 20.0};
  if (tag == "ears") row = {2.5, 2.5, 2.5, 3.0, 0.0};
  if (tag == "commonvoice_zh") row = {3.0, 3.0, 3.0, 4.0, 0.0};
  const std::pair<const char*, double> checks[] = {
      {"DNSMOS", row.dnsmos}, {"SIGMOS", row.sigmos}, {"UTMOS", row.utmos}, {"NISQA", row.nisqa}, {"SQUIM_SDR", row.squim}};
  for (const auto& [metric, minimum] : checks) {
    const auto it = r.scores.find(metric);
    if (it == r.scores.end() || it->second < minimum) return false;
  }
  return true;
}

Outcome filter_oracle() {
  Rng rng(20240901);
  const std::vector<std::string> tags = {"librivox", "EARS", "ears", "vctk", "commonvoice_zh", "WSJ", "mls_hq"};
  std::vector<ScoreRecord> records;
  for (int i = 0; i < 10000; ++i) {
    ScoreRecord r;
    r.utterance_id = synth::numbered("row", static_cast<std::size_t>(i));
    r.dataset = tags[rng.below(tags.size())];
    r.path = r.utterance_id + ".wav";
    r.duration_s = rng.uniform(1.0, 20.0);
    r.sample_rate_hz = 48000;
    for (const auto& m : tbf_metrics()) {
      if (rng.uniform01() < 0.01) continue;  // occasional missing score
      r.scores[m] = m == "SQUIM_SDR" ? rng.uniform(-10.0, 35.0) : rng.uniform(1.0, 5.0);
    }
    // exact boundary values now and then
    if (rng.uniform01() < 0.05) r.scores["DNSMOS"] = 3.0;
    records.push_back(std::move(r));
  }
  const auto cfg = parse_curation_config(synth::reference_threshold_config());
  const auto t0 = Clock::now();
  const auto out = threshold_filter(records, cfg);
  const double elapsed = seconds_since(t0);

  std::vector<std::string> expect_kept, expect_dropped, got_kept, got_dropped;
  for (const auto& r : records) {
    (brute_force_keep(r) ? expect_kept : expect_dropped).push_back(r.utterance_id);
  }
  for (const auto& r : out.kept) got_kept.push_back(r.utterance_id);
  for (const auto& r : out.rejected) got_dropped.push_back(r.record.utterance_id);
  std::size_t excluded = 0;
  for (const auto& r : records) excluded += lowercase(r.dataset) == "wsj";
  // rejected + excluded together are the brute-force drops
  std::set<std::string> dropped(got_dropped.begin(), got_dropped.end());
  for (const auto& r : records) {
    if (lowercase(r.dataset) == "wsj") dropped.insert(r.utterance_id);
  }
  const bool equal = got_kept == expect_kept &&
                     dropped == std::set<std::string>(expect_dropped.begin(), expect_dropped.end()) &&
                     out.excluded_dataset_count == excluded;
  return {equal && elapsed < 1.0, "kept " + std::to_string(got_kept.size()) + "/10000, oracle " +
                                       std::to_string(expect_kept.size()) + ", " + fmt(elapsed) + " s"};
}

// ------------------------------------------------------------------ median

Outcome median_property() {
  Rng rng(77);
  int violations = 0, nonempty = 0;
  for (int t = 0; t < 100; ++t) {
    const auto records = synth::score_manifest(50 + rng.below(500), rng.next_u64());
    const auto& metric = tbf_metrics()[rng.below(tbf_metrics().size())];
    std::vector<double> values;
    for (const auto& r : records) values.push_back(r.scores.at(metric));
    CurationConfig cfg;
    // threshold drawn from the observed range so some rows are removed
    cfg.thresholds["Default"] = {{metric, values[rng.below(values.size())]}};
    const auto kept = threshold_filter(records, cfg).kept;
    if (kept.empty()) continue;
    ++nonempty;
    const auto rows = report::compare_distributions(records, kept, {metric}, {metric});
    std::vector<double> kept_values;
    for (const auto& r : kept) kept_values.push_back(r.scores.at(metric));
    const bool ok = rows.size() == 1 && rows[0].median_filtered >= rows[0].median_full &&
                    rows[0].median_full == oracle::median(values) &&
                    rows[0].median_filtered == oracle::median(kept_values);
    violations += ok ? 0 : 1;
  }
  return {violations == 0 && nonempty == 100,
          std::to_string(nonempty) + " manifests, " + std::to_string(violations) + " violations"};
}

// ----------------------------------------------------------------- nesting

Outcome nesting() {
  synth::ScoreFixtureOptions opts;
  opts.min_duration_s = 120.0;
  opts.max_duration_s = 360.0;
  const auto records = synth::score_manifest(1000, 31, opts);
  const auto cfg = parse_curation_config(synth::reference_threshold_config());
  std::vector<std::set<std::string>> sets;
  std::ostringstream detail;
  bool saturated = false;
  for (double h : {1.0, 3.5, 7.0}) {
    const auto s = select_top_ranked(records, cfg, h);
    saturated |= s.budget_exceeds_available;
    std::set<std::string> ids;
    for (const auto& r : s.records) ids.insert(r.utterance_id);
    detail << fmt(h) << "h:" << ids.size() << " ";
    sets.push_back(std::move(ids));
  }
  const bool nested = std::includes(sets[1].begin(), sets[1].end(), sets[0].begin(), sets[0].end()) &&
                      std::includes(sets[2].begin(), sets[2].end(), sets[1].begin(), sets[1].end());
  detail << (saturated ? "(budget saturated)" : "(all budgets binding)");
  return {nested && !saturated && sets[0].size() < sets[1].size() && sets[1].size() < sets[2].size(), detail.str()};
}

// ----------------------------------------------------------- normalization

Outcome normalization() {
  const auto cfg = parse_curation_config(synth::reference_threshold_config());
  auto kept = threshold_filter(synth::score_manifest(5000, 12), cfg).kept;
  const auto n = normalize_scores(kept, cfg.ranking_metrics);
  double worst_mu = 0.0, worst_sigma = 0.0;
  for (const auto& m : cfg.ranking_metrics) {
    double s = 0.0;
    for (const auto& [id, per] : n.values) s += per.at(m);
    const double mu = s / static_cast<double>(n.values.size());
    double q = 0.0;
    for (const auto& [id, per] : n.values) q += (per.at(m) - mu) * (per.at(m) - mu);
    worst_mu = std::max(worst_mu, std::abs(mu));
    worst_sigma = std::max(worst_sigma, std::abs(std::sqrt(q / static_cast<double>(n.values.size())) - 1.0));
  }
  for (auto& r : kept) r.scores["CONST"] = 3.25;
  const auto c = normalize_scores(kept, {"CONST"});
  bool zeros = true;
  for (const auto& [id, per] : c.values) zeros &= per.at("CONST") == 0.0;
  return {worst_mu <= 1e-9 && worst_sigma <= 1e-9 && zeros,
          std::to_string(kept.size()) + " kept, max|mu| " + fmt(worst_mu) + ", max|sigma-1| " + fmt(worst_sigma) +
              (zeros ? ", constant -> 0" : ", constant metric NOT zero")};
}

// ------------------------------------------------------------------ mixing

Outcome mixing() {
  Rng rng(5150);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int rate = kSupportedRates[rng.below(kSupportedRates.size())];
    const auto speech = synth::speech_like(rng.uniform(1.0, 3.0), rate, rng.next_u64());
    const auto noise = synth::noise(rng.uniform(0.5, 3.0), rate, rng.next_u64(), rng.uniform(0.01, 0.5), rng.uniform(0.0, 0.9));
    const double snr = rng.uniform(-5.0, 20.0);
    const auto mixed = mix_additive_noise(speech, noise, snr);
    std::vector<double> residual(speech.size());
    for (std::size_t k = 0; k < residual.size(); ++k) residual[k] = mixed.samples[k] - speech.samples[k];
    worst = std::max(worst, std::abs(metrics::measured_snr(speech.samples, residual) - snr));
  }
  return {worst <= 0.01, "50 triples, max |error| " + fmt(worst) + " dB"};
}

// ----------------------------------------------------------------- metrics

Outcome metric_correctness() {
  using V = std::vector<double>;
  std::ostringstream d;
  bool ok = true;
  const double hand = metrics::si_sdr(V{1.0, 0.0}, V{1.0, 0.1});
  ok &= std::abs(hand - 20.0) <= 1e-6;
  d << "si_sdr " << fmt(hand);

  const auto r = oracle::white(8000, 1);
  auto e = oracle::white(8000, 2);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = r[i] + 0.4 * e[i];
  double scale_dev = 0.0;
  for (double a : {0.1, 3.7}) {
    V s = e;
    for (auto& v : s) v *= a;
    scale_dev = std::max(scale_dev, std::abs(metrics::si_sdr(r, s) - metrics::si_sdr(r, e)));
  }
  ok &= scale_dev <= 1e-6;
  d << "; scale dev " << fmt(scale_dev);

  const double self = metrics::lsd(r, r);
  V twice = r;
  for (auto& v : twice) v *= 2.0;
  const double doubled = metrics::lsd(r, twice);
  ok &= self == 0.0 && std::abs(doubled - 20.0 * std::log10(2.0)) <= 1e-3;
  d << "; lsd " << fmt(self) << "/" << fmt(doubled);

  const auto x = synth::speech_like(3.0, 16000, 3);
  const double same = metrics::estoi(x, x);
  ok &= std::abs(same - 1.0) <= 1e-6;
  const auto n = oracle::white(x.size(), 4);
  const double ex = oracle::energy(x.samples), en = oracle::energy(n);
  d << "; estoi " << fmt(same) << " then";
  double prev = 2.0;
  for (double snr : {20.0, 10.0, 0.0, -10.0}) {
    const double g = std::sqrt(ex / (en * std::pow(10.0, snr / 10.0)));
    AudioBuffer y = x;
    for (std::size_t i = 0; i < y.size(); ++i) y.samples[i] += g * n[i];
    const double v = metrics::estoi(x, y);
    ok &= v < prev;
    prev = v;
    d << ' ' << std::setprecision(3) << v;
  }
  return {ok, d.str()};
}

// --------------------------------------------------------------- high-pass

Outcome highpass() {
  const int rate = 48000;
  const AudioBuffer low{oracle::tone(10, 1.0, 4.0, rate), rate};
  const AudioBuffer mid{oracle::tone(1000, 1.0, 1.0, rate), rate};
  const auto yl = highpass_75(low);
  const auto ym = highpass_75(mid);
  const double atten = -oracle::db(oracle::energy(yl.samples) / oracle::energy(low.samples));
  const double amp = oracle::tone_amplitude(ym.samples, 1000, rate, rate / 4, 3 * rate / 4);
  const double dev = std::abs(20.0 * std::log10(amp));
  return {atten >= 60.0 && dev <= 1.0, "10 Hz: -" + fmt(std::round(atten * 100) / 100) + " dB, 1 kHz: " +
                                           fmt(std::round(dev * 1e4) / 1e4) + " dB deviation"};
}

// ------------------------------------------------------------ determinism

std::map<std::string, std::string> tree_bytes(const std::filesystem::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file() || entry.path().filename() == "runlog.json") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    files[std::filesystem::relative(entry.path(), root).string()] =
        std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return files;
}

int run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  if (code != 0) std::cerr << "  " << args.front() << ": " << err.str();
  return code;
}

Outcome determinism(const std::filesystem::path& root) {
  const auto corpus = synth::write_corpus(root / "corpus", 20, 2024);
  const auto spec = root / "spec.toml";
  std::ofstream(spec) << "enabled = [\"reverberation\", \"additive_noise\", \"wind_noise\", \"bandwidth_limitation\",\n"
                         "           \"codec_loss\", \"packet_loss\", \"clipping\"]\n"
                         "distortions_per_utterance = [1, 3]\n";
  std::map<std::string, std::map<std::string, std::string>> trees;
  const std::vector<std::pair<std::string, std::string>> runs = {{"w1a", "1"}, {"w1b", "1"}, {"w8", "8"}};
  for (const auto& [name, workers] : runs) {
    const int code = run_cli({"simulate", "--speech-manifest", corpus.speech_manifest.string(), "--noise-manifest",
                              corpus.noise_manifest.string(), "--rir-manifest", corpus.rir_manifest.string(),
                              "--spec", spec.string(), "--seed", "99", "--out-dir", (root / name).string(),
                              "--workers", workers});
    if (code != 0) return {false, "simulate exited " + std::to_string(code)};
    trees[name] = tree_bytes(root / name);
  }
  const bool same = trees["w1a"] == trees["w1b"] && trees["w1a"] == trees["w8"];
  return {same && trees["w1a"].size() == 41,
          std::to_string(trees["w1a"].size()) + " files compared over 3 runs (workers 1, 1, 8)"};
}

// -------------------------------------------------------- duration table

Outcome duration_accounting() {
  const auto cfg = parse_curation_config(synth::reference_threshold_config());
  const auto records = synth::duration_fixture(cfg, 5);
  const auto full = summarize_by_dataset(records);
  const auto kept = summarize_by_dataset(threshold_filter(records, cfg).kept);
  bool ok = true;
  double total = 0.0;
  std::ostringstream d;
  for (const auto& row : synth::duration_table()) {
    const double got = kept.count(row.dataset) ? kept.at(row.dataset) : 0.0;
    ok &= full.at(row.dataset) == row.full_hours && got == row.kept_hours;
    total += got;
    d << row.dataset << ' ' << row.full_hours << "->" << fmt(got) << ", ";
  }
  ok &= total == 698.0;
  d << "total " << fmt(total) << " h";
  return {ok, d.str()};
}

// ------------------------------------------------------------- end to end

Outcome end_to_end(const std::filesystem::path& root) {
  const auto t0 = Clock::now();
  const auto corpus = synth::write_corpus(root / "corpus", 50, 42);
  const auto s = [&](const std::string& rel) { return (root / rel).string(); };
  {
    // lenient thresholds so a useful share of the small corpus survives
    std::ofstream(s("cfg.toml")) << "excluded_datasets = [\"wsj\"]\n"
                                    "[thresholds.Default]\nDNSMOS = 2.6\nSIGMOS = 2.6\nUTMOS = 2.5\n"
                                    "[ranking]\nmetrics = [\"DNSMOS\", \"NISQA\", \"SIGMOS\", \"SQUIM_SDR\", \"UTMOS\"]\n"
                                    "[selection]\nbudget_hours = 0.02\nseed = 42\n";
    std::ofstream(s("spec.toml")) << "enabled = [\"reverberation\", \"additive_noise\", \"clipping\", \"packet_loss\"]\n"
                                     "distortions_per_utterance = [1, 2]\n";
  }
  const std::vector<std::vector<std::string>> steps = {
      {"filter", "--manifest", corpus.speech_manifest.string(), "--config", s("cfg.toml"), "--out-kept",
       s("curated/kept.jsonl"), "--out-rejected", s("curated/rejected.jsonl")},
      {"select", "--manifest", s("curated/kept.jsonl"), "--config", s("cfg.toml"), "--method", "top", "--out",
       s("curated/top.jsonl")},
      {"select", "--manifest", s("curated/kept.jsonl"), "--config", s("cfg.toml"), "--method", "uniform", "--seed",
       "42", "--out", s("curated/uniform.jsonl")},
      {"report", "compare", "--full", corpus.speech_manifest.string(), "--filtered", s("curated/kept.jsonl"),
       "--config", s("cfg.toml"), "--out", s("report/compare.csv")},
  };
  for (const auto& args : steps) {
    if (run_cli(args) != 0) return {false, args[0] + " failed"};
  }
  // the selected manifests point at the corpus audio relative to it
  for (const std::string method : {"top", "uniform"}) {
    auto m = load_score_manifest(s("curated/" + method + ".jsonl"));
    for (auto& r : m.records) r.path = (root / "corpus" / r.path).string();
    save_score_manifest(m.records, s("curated/" + method + "_abs.jsonl"), m.provenance);
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"simulate", "--speech-manifest", s("curated/" + method + "_abs.jsonl"), "--noise-manifest",
              corpus.noise_manifest.string(), "--rir-manifest", corpus.rir_manifest.string(), "--spec", s("spec.toml"),
              "--seed", "42", "--out-dir", s("sim_" + method)},
             {"evaluate", "--pairs", s("sim_" + method + "/pairs.jsonl"), "--out", s("eval/" + method + ".jsonl")}}) {
      if (run_cli(args) != 0) return {false, args[0] + " (" + method + ") failed"};
    }
  }
  if (run_cli({"report", "scaling", "--group", "0.02:top_ranked:" + s("eval/top.jsonl"), "--group",
               "0.02:uniform_random:" + s("eval/uniform.jsonl"), "--out", s("report/scaling.json"), "--out-format",
               "json"}) != 0) {
    return {false, "report scaling failed"};
  }
  const double elapsed = seconds_since(t0);

  // everything produced must parse back
  const auto top = load_score_manifest(s("curated/top.jsonl"));
  const auto uni = load_score_manifest(s("curated/uniform.jsonl"));
  const auto eval_top = cli::load_eval(s("eval/top.jsonl"));
  const auto eval_uni = cli::load_eval(s("eval/uniform.jsonl"));
  std::ifstream cmp(s("report/compare.csv"));
  std::string line;
  std::size_t cmp_rows = 0;
  while (std::getline(cmp, line)) ++cmp_rows;
  std::ifstream sc(s("report/scaling.json"));
  const auto scaling = Json::parse(sc);
  const bool ok = !top.records.empty() && !uni.records.empty() && eval_top.size() == top.records.size() &&
                  eval_uni.size() == uni.records.size() && cmp_rows == 9 && scaling["rows"].size() == 2 &&
                  scaling["series"]["estoi"].size() == 2 && (*uni.provenance)["seed"] == 42 && elapsed < 60.0;
  return {ok, "top " + std::to_string(top.records.size()) + " / uniform " + std::to_string(uni.records.size()) +
                  " utterances, " + std::to_string(eval_top.size() + eval_uni.size()) + " eval rows, " +
                  fmt(std::round(elapsed * 100) / 100) + " s"};
}

}  // namespace

int main() {
  oracle::TempDir scratch("acceptance");
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"filter matches brute-force oracle on 10k rows in < 1 s", filter_oracle},
      {"single-metric filter never lowers that metric's median", median_property},
      {"top-ranked subsets nest across 1 / 3.5 / 7 h budgets", nesting},
      {"z-scores have zero mean and unit std; constant metric maps to 0", normalization},
      {"mixed SNR matches request within 0.01 dB", mixing},
      {"si_sdr / lsd / estoi reference values", metric_correctness},
      {"75 Hz high-pass: >= 60 dB at 10 Hz, <= 1 dB at 1 kHz", highpass},
      {"simulation is byte-identical across runs and worker counts", [&] { return determinism(scratch.path / "det"); }},
      {"duration fixture reproduces per-dataset kept hours exactly", duration_accounting},
      {"end-to-end pipeline on 50 files in < 60 s", [&] { return end_to_end(scratch.path / "e2e"); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << " -- " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
