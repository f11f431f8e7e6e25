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

// Command-line entry point: score-ingest, detect, filter, select,
// simulate, evaluate, report. Every command leaves a runlog.json next to
// its outputs.

#pragma once

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "curate_se/anomaly.hpp"
#include "curate_se/audio.hpp"
#include "curate_se/curation.hpp"
#include "curate_se/degrade.hpp"
#include "curate_se/digest.hpp"
#include "curate_se/error.hpp"
#include "curate_se/manifest.hpp"
#include "curate_se/metrics.hpp"
#include "curate_se/parallel.hpp"
#include "curate_se/report.hpp"

namespace curate_se::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kValidation = 1, kIo = 2, kUsage = 64 };

namespace fs = std::filesystem;

struct RunLog {
  std::vector<std::string> command_line;
  std::string config_digest;
  std::map<std::string, std::string> input_digests;
  std::vector<std::uint64_t> seeds;
  double wall_time_s = 0.0;

  void add_input(const fs::path& p) { input_digests[p.string()] = sha256_file(p); }

  void write(const fs::path& dir) const {
    Json j;
    j["tool"] = "curate-se";
    j["version"] = std::string(kVersion);
    j["command_line"] = command_line;
    j["config_digest"] = config_digest;
    j["input_digests"] = input_digests;
    j["seeds"] = seeds;
    j["wall_time_s"] = wall_time_s;
    std::ofstream out(dir / "runlog.json", std::ios::trunc);
    if (!out) throw IoError("cannot write runlog in " + dir.string());
    out << j.dump(2) << '\n';
  }
};

inline fs::path parent_dir(const fs::path& file) {
  const auto p = file.parent_path();
  return p.empty() ? fs::path(".") : p;
}

inline void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

inline std::string resolve(const fs::path& base, const std::string& path) {
  const fs::path p(path);
  return p.is_absolute() ? p.string() : (base / p).string();
}

inline std::vector<ScoreRecord> with_resolved_paths(std::vector<ScoreRecord> records, const fs::path& base) {
  for (auto& r : records) r.path = resolve(base, r.path);
  return records;
}

inline std::string safe_name(const std::string& id) {
  std::string out = id;
  for (auto& c : out) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    if (!ok) c = '_';
  }
  return out;
}

inline void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw IoError("cannot create " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

inline std::size_t default_workers() {
  if (const char* env = std::getenv("CURATE_SE_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

inline Json eval_to_json(const metrics::EvalResult& r) {
  OrderedJson j;
  j["utterance_id"] = r.utterance_id;
  j["sdr_db"] = metrics::serializable(r.sdr_db);
  j["si_sdr_db"] = metrics::serializable(r.si_sdr_db);
  j["estoi"] = r.estoi;
  j["lsd"] = r.lsd;
  return Json::parse(j.dump());
}

inline std::vector<metrics::EvalResult> load_eval(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<metrics::EvalResult> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = Json::parse(line);
      out.push_back({j.at("utterance_id").get<std::string>(), j.at("sdr_db").get<double>(),
                     j.at("si_sdr_db").get<double>(), j.at("estoi").get<double>(), j.at("lsd").get<double>()});
    } catch (const Json::exception& e) {
      throw ValidationError(path.string() + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

// ------------------------------------------------------------ commands

struct Context {
  std::vector<std::string> argv;
  std::ostream& out;
  std::ostream& err;
  RunLog log;
};

struct ScoreIngestArgs {
  std::string manifest, out;
  bool strict = false;
};

inline void run_score_ingest(const ScoreIngestArgs& a, Context& ctx) {
  const auto m = load_score_manifest(a.manifest, {a.strict});
  if (m.duplicate_warnings > 0) ctx.err << "warning: " << m.duplicate_warnings << " duplicate utterance_id rows skipped\n";
  ensure_dir(parent_dir(a.out));
  save_score_manifest(m.records, a.out, m.provenance);
  ctx.log.add_input(a.manifest);
  ctx.out << "ingested " << m.records.size() << " records\n";
}

struct DetectArgs {
  std::string manifest, out;
  std::size_t workers = 1;
};

inline void run_detect(const DetectArgs& a, Context& ctx) {
  const auto m = load_score_manifest(a.manifest);
  const auto base = parent_dir(a.manifest);
  std::vector<ScoreRecord> records = m.records;
  parallel_for(records.size(), a.workers, [&](std::size_t i) {
    const auto audio = read_wav(resolve(base, records[i].path));
    const auto rep = anomaly::analyze(audio);
    auto& s = records[i].scores;
    s["CLIP_FRAC"] = rep.clipping_fraction;
    s["INFRA_DB"] = rep.infrasound_ratio_db;
    s["FLOOR_DBFS"] = rep.noise_floor_dbfs;
    s["BW_HZ"] = rep.effective_bandwidth_hz;
  });
  ensure_dir(parent_dir(a.out));
  save_score_manifest(records, a.out, m.provenance);
  ctx.log.add_input(a.manifest);
  ctx.out << "analyzed " << records.size() << " files\n";
}

struct FilterArgs {
  std::string manifest, config, out_kept, out_rejected;
};

inline void run_filter(const FilterArgs& a, Context& ctx) {
  const auto cfg = load_curation_config(a.config);
  const auto m = load_score_manifest(a.manifest);
  const auto outcome = threshold_filter(m.records, cfg);
  ensure_dir(parent_dir(a.out_kept));
  ensure_dir(parent_dir(a.out_rejected));
  save_score_manifest(outcome.kept, a.out_kept);
  std::ofstream rej(a.out_rejected, std::ios::trunc);
  if (!rej) throw IoError("cannot create " + a.out_rejected);
  for (const auto& r : outcome.rejected) {
    OrderedJson j = record_to_json(r.record);
    OrderedJson reasons = OrderedJson::array();
    for (const auto& v : r.reasons) {
      OrderedJson reason;
      reason["metric"] = v.metric;
      reason["threshold"] = v.threshold;
      reason["observed"] = v.observed ? OrderedJson(*v.observed) : OrderedJson("missing");
      reasons.push_back(reason);
    }
    j["reasons"] = reasons;
    rej << j.dump() << '\n';
  }
  if (!rej) throw IoError("write failed: " + a.out_rejected);
  ctx.log.config_digest = sha256_file(a.config);
  ctx.log.add_input(a.manifest);
  const auto kept_hours = summarize_by_dataset(outcome.kept);
  ctx.out << "kept " << outcome.kept.size() << ", rejected " << outcome.rejected.size() << ", excluded "
          << outcome.excluded_dataset_count << '\n';
  for (const auto& [tag, h] : kept_hours) ctx.out << "  " << tag << ": " << report::fmt(h) << " h kept\n";
}

struct SelectArgs {
  std::string manifest, config, method, out;
  std::optional<double> budget_hours;
  std::optional<std::uint64_t> seed;
};

inline void run_select(const SelectArgs& a, Context& ctx) {
  const auto cfg = load_curation_config(a.config);
  const auto m = load_score_manifest(a.manifest);
  const double budget = a.budget_hours.value_or(cfg.budget_hours);
  const std::uint64_t seed = a.seed.value_or(cfg.seed);
  const std::string config_digest = sha256_file(a.config);
  SubsetManifest subset;
  if (a.method == "top") {
    subset = select_top_ranked(m.records, cfg, budget);
  } else if (a.method == "uniform") {
    subset = uniform_sample(m.records, budget, seed);
  } else {
    throw ValidationError("select: --method must be top or uniform");
  }
  Json prov;
  prov["method"] = to_string(subset.method);
  prov["budget_hours"] = subset.budget_hours;
  prov["achieved_hours"] = subset.achieved_hours;
  prov["seed"] = subset.seed ? Json(*subset.seed) : Json(nullptr);
  prov["rng"] = std::string(kRngName);
  prov["ranking_metrics"] = subset.ranking_metrics;
  prov["config_digest"] = config_digest;
  prov["budget_exceeds_available"] = subset.budget_exceeds_available;
  ensure_dir(parent_dir(a.out));
  save_score_manifest(subset.records, a.out, prov);
  ctx.log.config_digest = config_digest;
  ctx.log.add_input(a.manifest);
  if (subset.seed) ctx.log.seeds.push_back(*subset.seed);
  ctx.out << to_string(subset.method) << ": " << subset.records.size() << " records, "
          << report::fmt(subset.achieved_hours) << " h of " << report::fmt(budget) << " h\n";
  if (subset.budget_exceeds_available) ctx.err << "warning: budget exceeds available hours; all records selected\n";
}

struct SimulateArgs {
  std::string speech_manifest, noise_manifest, rir_manifest, wind_manifest, spec, out_dir;
  std::optional<std::uint64_t> seed;
  std::size_t workers = 1;
};

inline void run_simulate(const SimulateArgs& a, Context& ctx) {
  auto spec = load_degradation_spec(a.spec);
  if (a.seed) spec.seed = *a.seed;
  const auto speech_m = load_score_manifest(a.speech_manifest);
  const auto speech = with_resolved_paths(speech_m.records, parent_dir(a.speech_manifest));
  SimulationSources sources;
  const auto load_pool = [&](const std::string& path) -> std::vector<ScoreRecord> {
    if (path.empty()) return {};
    ctx.log.add_input(path);
    return with_resolved_paths(load_score_manifest(path).records, parent_dir(path));
  };
  sources.noise = load_pool(a.noise_manifest);
  sources.rir = load_pool(a.rir_manifest);
  sources.wind = load_pool(a.wind_manifest);

  const fs::path out_dir(a.out_dir);
  ensure_dir(out_dir / "clean");
  ensure_dir(out_dir / "degraded");
  std::set<std::string> names;
  for (const auto& r : speech) {
    if (!names.insert(safe_name(r.utterance_id)).second) {
      throw ValidationError("simulate: utterance ids collide after file-name sanitizing: " + r.utterance_id);
    }
  }
  std::vector<std::string> rows(speech.size());
  parallel_for(speech.size(), a.workers, [&](std::size_t i) {
    const auto& r = speech[i];
    const auto pair = simulate(r, spec, sources);
    const std::string name = safe_name(r.utterance_id) + ".wav";
    write_wav(pair.clean, out_dir / "clean" / name, WavEncoding::kFloat32);
    write_wav(pair.degraded, out_dir / "degraded" / name, WavEncoding::kFloat32);
    OrderedJson row;
    row["utterance_id"] = r.utterance_id;
    row["clean_path"] = "clean/" + name;
    row["degraded_path"] = "degraded/" + name;
    row["applied"] = OrderedJson::parse(applied_to_json(pair.applied).dump());
    row["seed"] = pair.seed_used;
    rows[i] = row.dump();
  });
  std::ofstream pairs(out_dir / "pairs.jsonl", std::ios::trunc);
  if (!pairs) throw IoError("cannot create " + (out_dir / "pairs.jsonl").string());
  for (const auto& row : rows) pairs << row << '\n';
  if (!pairs) throw IoError("write failed: pairs.jsonl");
  ctx.log.add_input(a.speech_manifest);
  ctx.log.config_digest = sha256_file(a.spec);
  ctx.log.seeds.push_back(spec.seed);
  ctx.out << "simulated " << speech.size() << " pairs\n";
}

struct EvaluateArgs {
  std::string pairs, out, enhanced_dir;
  std::size_t workers = 1;
};

inline void run_evaluate(const EvaluateArgs& a, Context& ctx) {
  std::ifstream in(a.pairs);
  if (!in) throw IoError("cannot open " + a.pairs);
  const auto base = parent_dir(a.pairs);
  struct Row {
    std::string id, clean, estimate;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = Json::parse(line);
      Row r{j.at("utterance_id").get<std::string>(), resolve(base, j.at("clean_path").get<std::string>()),
            resolve(base, j.at("degraded_path").get<std::string>())};
      if (j.contains("enhanced_path")) r.estimate = resolve(base, j["enhanced_path"].get<std::string>());
      if (!a.enhanced_dir.empty()) r.estimate = (fs::path(a.enhanced_dir) / (safe_name(r.id) + ".wav")).string();
      rows.push_back(std::move(r));
    } catch (const Json::exception& e) {
      throw ValidationError(a.pairs + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  std::vector<metrics::EvalResult> results(rows.size());
  parallel_for(rows.size(), a.workers, [&](std::size_t i) {
    const auto ref = read_wav(rows[i].clean);
    const auto est = read_wav(rows[i].estimate);
    if (ref.size() != est.size()) throw ValidationError(rows[i].id + ": clean and estimate lengths differ");
    results[i] = metrics::evaluate_pair(rows[i].id, ref, est);
  });
  ensure_dir(parent_dir(a.out));
  std::ofstream out(a.out, std::ios::trunc);
  if (!out) throw IoError("cannot create " + a.out);
  for (const auto& r : results) out << eval_to_json(r).dump() << '\n';
  if (!out) throw IoError("write failed: " + a.out);
  ctx.log.add_input(a.pairs);
  ctx.out << "evaluated " << results.size() << " pairs\n";
}

struct ReportArgs {
  std::string kind;
  std::string manifest, metric, full, filtered, config, out, format = "csv";
  std::vector<std::string> metrics_list, groups;
  int bins = report::kDefaultBins;
};

// --group HOURS:METHOD:EVAL_JSONL
inline report::EvalGroup parse_group(const std::string& spec) {
  const auto first = spec.find(':');
  const auto second = first == std::string::npos ? first : spec.find(':', first + 1);
  if (second == std::string::npos) throw ValidationError("--group expects HOURS:METHOD:EVAL, got " + spec);
  report::EvalGroup g;
  char* end = nullptr;
  const std::string hours = spec.substr(0, first);
  g.size_hours = std::strtod(hours.c_str(), &end);
  if (end == hours.c_str() || *end != '\0') throw ValidationError("--group: bad hours in " + spec);
  g.method = spec.substr(first + 1, second - first - 1);
  g.results = load_eval(spec.substr(second + 1));
  return g;
}

inline void run_report(const ReportArgs& a, Context& ctx) {
  std::string text;
  const auto& f = a.format;
  if (a.kind == "histogram") {
    const auto m = load_score_manifest(a.manifest);
    ctx.log.add_input(a.manifest);
    const auto h = report::histogram(m.records, a.metric, a.bins);
    if (f == "json") {
      text = report::histogram_json(h).dump(2) + "\n";
    } else if (f == "csv") {
      text = report::histogram_csv(h);
    } else {
      text = report::histogram_svg(h);
    }
  } else if (a.kind == "compare") {
    const auto full = load_score_manifest(a.full).records;
    const auto filtered = load_score_manifest(a.filtered).records;
    ctx.log.add_input(a.full);
    ctx.log.add_input(a.filtered);
    std::set<std::string> used(tbf_metrics().begin(), tbf_metrics().end());
    if (!a.config.empty()) {
      const auto cfg = load_curation_config(a.config);
      ctx.log.config_digest = sha256_file(a.config);
      used.clear();
      for (const auto& [tag, row] : cfg.thresholds) {
        for (const auto& [metric, v] : row) used.insert(metric);
      }
    }
    const auto metric_names = a.metrics_list.empty() ? report::all_metrics(full) : a.metrics_list;
    const auto rows = report::compare_distributions(full, filtered, metric_names, used);
    if (f == "svg") throw ValidationError("report compare: svg output not supported; use csv or json");
    text = f == "json" ? report::compare_json(rows).dump(2) + "\n" : report::compare_csv(rows);
  } else {
    std::vector<report::EvalGroup> groups;
    for (const auto& g : a.groups) {
      groups.push_back(parse_group(g));
      ctx.log.add_input(g.substr(g.find(':', g.find(':') + 1) + 1));
    }
    const auto metric_names = a.metrics_list.empty() ? report::eval_metric_names() : a.metrics_list;
    const auto table = report::scaling_table(groups, metric_names);
    if (f == "json") {
      text = report::scaling_json(table).dump(2) + "\n";
    } else if (f == "csv") {
      text = report::scaling_csv(table);
    } else {
      text = report::scaling_svg(table);
    }
  }
  ensure_dir(parent_dir(a.out));
  write_text(a.out, text);
}

// ------------------------------------------------------------ dispatch

inline int dispatch(const std::vector<std::string>& args, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  const auto started = std::chrono::steady_clock::now();
  CLI::App app{"curate-se: speech-enhancement data curation and degradation toolkit", "curate_se"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  const std::size_t workers_default = default_workers();
  const auto add_workers = [&](CLI::App* sub, std::size_t& target) {
    target = workers_default;
    sub->add_option("--workers", target, "Worker threads (default: $CURATE_SE_WORKERS or 1)")
        ->check(CLI::PositiveNumber);
  };

  ScoreIngestArgs ingest;
  auto* c_ingest = app.add_subcommand("score-ingest", "Validate and canonicalize a scorer manifest");
  c_ingest->add_option("--manifest", ingest.manifest, "Input JSON Lines manifest")->required();
  c_ingest->add_option("--out", ingest.out, "Canonical output manifest")->required();
  c_ingest->add_flag("--strict", ingest.strict, "Fail on duplicate utterance ids");

  DetectArgs detect;
  auto* c_detect = app.add_subcommand("detect", "Append signal-level anomaly features to a manifest");
  c_detect->add_option("--manifest", detect.manifest)->required();
  c_detect->add_option("--out", detect.out)->required();
  add_workers(c_detect, detect.workers);

  FilterArgs filter;
  auto* c_filter = app.add_subcommand("filter", "Threshold-based filtering");
  c_filter->add_option("--manifest", filter.manifest)->required();
  c_filter->add_option("--config", filter.config)->required();
  c_filter->add_option("--out-kept", filter.out_kept)->required();
  c_filter->add_option("--out-rejected", filter.out_rejected)->required();

  SelectArgs select;
  auto* c_select = app.add_subcommand("select", "Duration-budgeted subset selection");
  c_select->add_option("--manifest", select.manifest)->required();
  c_select->add_option("--config", select.config)->required();
  c_select->add_option("--method", select.method)->required()->check(CLI::IsMember({"top", "uniform"}));
  c_select->add_option("--budget-hours", select.budget_hours)->check(CLI::PositiveNumber);
  c_select->add_option("--seed", select.seed);
  c_select->add_option("--out", select.out)->required();

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Generate clean/degraded training pairs");
  c_sim->add_option("--speech-manifest", sim.speech_manifest)->required();
  c_sim->add_option("--noise-manifest", sim.noise_manifest);
  c_sim->add_option("--rir-manifest", sim.rir_manifest);
  c_sim->add_option("--wind-manifest", sim.wind_manifest);
  c_sim->add_option("--spec", sim.spec)->required();
  c_sim->add_option("--seed", sim.seed);
  c_sim->add_option("--out-dir", sim.out_dir)->required();
  add_workers(c_sim, sim.workers);

  EvaluateArgs eval;
  auto* c_eval = app.add_subcommand("evaluate", "Intrusive metrics over a pair manifest");
  c_eval->add_option("--pairs", eval.pairs)->required();
  c_eval->add_option("--out", eval.out)->required();
  c_eval->add_option("--enhanced-dir", eval.enhanced_dir, "Score <dir>/<id>.wav instead of the degraded audio");
  add_workers(c_eval, eval.workers);

  ReportArgs rep;
  auto* c_report = app.add_subcommand("report", "Histograms, median-shift and scaling tables");
  c_report->require_subcommand(1);
  auto* r_hist = c_report->add_subcommand("histogram", "Per-metric histogram");
  r_hist->add_option("--manifest", rep.manifest)->required();
  r_hist->add_option("--metric", rep.metric)->required();
  r_hist->add_option("--bins", rep.bins)->check(CLI::PositiveNumber);
  auto* r_cmp = c_report->add_subcommand("compare", "Median shift between full and filtered manifests");
  r_cmp->add_option("--full", rep.full)->required();
  r_cmp->add_option("--filtered", rep.filtered)->required();
  r_cmp->add_option("--config", rep.config, "Curation config naming the threshold metrics");
  r_cmp->add_option("--metrics", rep.metrics_list)->delimiter(',');
  auto* r_scale = c_report->add_subcommand("scaling", "Mean metrics per (subset size, method)");
  r_scale->add_option("--group", rep.groups, "HOURS:METHOD:EVAL_JSONL")->required();
  r_scale->add_option("--metrics", rep.metrics_list)->delimiter(',');
  for (auto* sub : {r_hist, r_cmp, r_scale}) {
    sub->add_option("--out", rep.out)->required();
    sub->add_option("--out-format", rep.format)->check(CLI::IsMember({"csv", "json", "svg"}));
  }

  std::vector<const char*> raw;
  raw.push_back("curate_se");
  for (const auto& a : args) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  Context ctx{args, out, err, {}};
  ctx.log.command_line = args;
  fs::path log_dir;
  try {
    if (c_ingest->parsed()) {
      run_score_ingest(ingest, ctx);
      log_dir = parent_dir(ingest.out);
    } else if (c_detect->parsed()) {
      run_detect(detect, ctx);
      log_dir = parent_dir(detect.out);
    } else if (c_filter->parsed()) {
      run_filter(filter, ctx);
      log_dir = parent_dir(filter.out_kept);
    } else if (c_select->parsed()) {
      run_select(select, ctx);
      log_dir = parent_dir(select.out);
    } else if (c_sim->parsed()) {
      run_simulate(sim, ctx);
      log_dir = sim.out_dir;
    } else if (c_eval->parsed()) {
      run_evaluate(eval, ctx);
      log_dir = parent_dir(eval.out);
    } else {
      rep.kind = r_hist->parsed() ? "histogram" : r_cmp->parsed() ? "compare" : "scaling";
      run_report(rep, ctx);
      log_dir = parent_dir(rep.out);
    }
    ctx.log.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    ctx.log.write(log_dir);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const fs::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kOk;
}

}  // namespace curate_se::cli
