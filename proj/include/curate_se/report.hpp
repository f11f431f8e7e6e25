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

// Distribution and scaling reports: histograms, before/after median
// tables and per-(size, method) metric means, as CSV, JSON or SVG.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "curate_se/error.hpp"
#include "curate_se/manifest.hpp"
#include "curate_se/metrics.hpp"

namespace curate_se::report {

inline constexpr int kDefaultBins = 50;

// Shortest round-trip decimal form, as used in every table.
inline std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline double median(std::vector<double> values) {
  if (values.empty()) throw ValidationError("median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

struct Histogram {
  std::string metric;
  std::vector<double> edges;
  std::vector<std::size_t> counts;
  double median = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t n = 0;
};

inline std::vector<double> metric_values(const std::vector<ScoreRecord>& records, const std::string& metric) {
  std::vector<double> v;
  for (const auto& r : records) {
    if (const auto s = r.score(metric)) v.push_back(*s);
  }
  return v;
}

// Uniform bins over [min, max]; interior edges belong to the right bin and
// the maximum to the last bin. A constant metric gets a unit-wide range.
inline Histogram histogram(const std::vector<ScoreRecord>& records, const std::string& metric, int bins = kDefaultBins) {
  if (bins < 1) throw ValidationError("histogram: bins must be >= 1");
  const auto values = metric_values(records, metric);
  if (values.empty()) throw ValidationError("histogram: metric '" + metric + "' absent from all records");
  Histogram h;
  h.metric = metric;
  h.n = values.size();
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it, hi = *hi_it;
  if (hi <= lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / bins;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) h.edges[static_cast<std::size_t>(i)] = lo + width * i;
  h.edges.back() = hi;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    // upper_bound puts a value equal to an interior edge in the bin to its right
    auto it = std::upper_bound(h.edges.begin(), h.edges.end(), v);
    auto idx = static_cast<std::size_t>(std::distance(h.edges.begin(), it));
    idx = std::clamp<std::size_t>(idx, 1, static_cast<std::size_t>(bins)) - 1;
    ++h.counts[idx];
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  h.mean = sum / static_cast<double>(h.n);
  double sq = 0.0;
  for (double v : values) sq += (v - h.mean) * (v - h.mean);
  h.stddev = std::sqrt(sq / static_cast<double>(h.n));
  h.median = median(values);
  return h;
}

inline Json histogram_json(const Histogram& h) {
  return Json{{"metric", h.metric}, {"edges", h.edges},  {"counts", h.counts}, {"median", h.median},
              {"mean", h.mean},     {"std", h.stddev},  {"n", h.n}};
}

inline std::string histogram_csv(const Histogram& h) {
  std::ostringstream out;
  out << "metric,bin_lo,bin_hi,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out << h.metric << ',' << fmt(h.edges[i]) << ',' << fmt(h.edges[i + 1]) << ',' << h.counts[i] << '\n';
  }
  return out.str();
}

struct MedianShift {
  std::string metric;
  double median_full = 0.0;
  double median_filtered = 0.0;
  double delta = 0.0;
  bool used_in_tbf = false;
};

// Medians of each metric before and after filtering. Metrics outside
// `threshold_metrics` are flagged as not used for filtering.
inline std::vector<MedianShift> compare_distributions(const std::vector<ScoreRecord>& full,
                                                      const std::vector<ScoreRecord>& filtered,
                                                      const std::vector<std::string>& metrics,
                                                      const std::set<std::string>& threshold_metrics) {
  if (full.empty() || filtered.empty()) throw ValidationError("compare_distributions: empty input");
  std::vector<MedianShift> rows;
  for (const auto& m : metrics) {
    const auto a = metric_values(full, m);
    const auto b = metric_values(filtered, m);
    if (a.empty() || b.empty()) continue;
    MedianShift row;
    row.metric = m;
    row.median_full = median(a);
    row.median_filtered = median(b);
    row.delta = row.median_filtered - row.median_full;
    row.used_in_tbf = threshold_metrics.count(m) > 0;
    rows.push_back(row);
  }
  return rows;
}

// Every metric name present in any record, sorted.
inline std::vector<std::string> all_metrics(const std::vector<ScoreRecord>& records) {
  std::set<std::string> names;
  for (const auto& r : records) {
    for (const auto& [m, v] : r.scores) names.insert(m);
  }
  return {names.begin(), names.end()};
}

inline std::string compare_csv(const std::vector<MedianShift>& rows) {
  std::ostringstream out;
  out << "metric,median_full,median_filtered,delta,used_in_tbf\n";
  for (const auto& r : rows) {
    out << r.metric << ',' << fmt(r.median_full) << ',' << fmt(r.median_filtered) << ',' << fmt(r.delta) << ','
        << (r.used_in_tbf ? "true" : "false") << '\n';
  }
  return out.str();
}

inline Json compare_json(const std::vector<MedianShift>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back({{"metric", r.metric},
                   {"median_full", r.median_full},
                   {"median_filtered", r.median_filtered},
                   {"delta", r.delta},
                   {"used_in_tbf", r.used_in_tbf}});
  }
  return out;
}

inline const std::vector<std::string>& eval_metric_names() {
  static const std::vector<std::string> names = {"sdr_db", "si_sdr_db", "estoi", "lsd"};
  return names;
}

inline double eval_value(const metrics::EvalResult& r, const std::string& metric) {
  if (metric == "sdr_db") return r.sdr_db;
  if (metric == "si_sdr_db") return r.si_sdr_db;
  if (metric == "estoi") return r.estoi;
  if (metric == "lsd") return r.lsd;
  throw ValidationError("unknown evaluation metric '" + metric + "'");
}

struct EvalGroup {
  double size_hours = 0.0;
  std::string method;
  std::vector<metrics::EvalResult> results;
};

struct ScalingRow {
  double size_hours = 0.0;
  std::string method;
  std::size_t n = 0;
  std::map<std::string, double> means;
};

struct ScalingTable {
  std::vector<std::string> metrics;
  std::vector<ScalingRow> rows;  // sorted by (method, size_hours)
};

inline ScalingTable scaling_table(const std::vector<EvalGroup>& groups, const std::vector<std::string>& metric_names) {
  if (groups.empty()) throw ValidationError("scaling_table: no groups");
  ScalingTable t;
  t.metrics = metric_names;
  for (const auto& g : groups) {
    if (g.results.empty()) throw ValidationError("scaling_table: empty group " + g.method + "@" + fmt(g.size_hours));
    ScalingRow row;
    row.size_hours = g.size_hours;
    row.method = g.method;
    row.n = g.results.size();
    for (const auto& m : metric_names) {
      double sum = 0.0;
      for (const auto& r : g.results) sum += eval_value(r, m);
      row.means[m] = sum / static_cast<double>(g.results.size());
    }
    t.rows.push_back(std::move(row));
  }
  std::sort(t.rows.begin(), t.rows.end(), [](const ScalingRow& a, const ScalingRow& b) {
    if (a.method != b.method) return a.method < b.method;
    return a.size_hours < b.size_hours;
  });
  return t;
}

inline std::string scaling_csv(const ScalingTable& t) {
  std::ostringstream out;
  out << "size_hours,method,n";
  for (const auto& m : t.metrics) out << ',' << m;
  out << '\n';
  for (const auto& r : t.rows) {
    out << fmt(r.size_hours) << ',' << r.method << ',' << r.n;
    for (const auto& m : t.metrics) out << ',' << fmt(r.means.at(m));
    out << '\n';
  }
  return out.str();
}

// Plot-ready form: per metric, one series per method with x = hours.
inline Json scaling_json(const ScalingTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json means = Json::object();
    for (const auto& m : t.metrics) means[m] = r.means.at(m);
    rows.push_back({{"size_hours", r.size_hours}, {"method", r.method}, {"n", r.n}, {"means", means}});
  }
  Json series = Json::object();
  for (const auto& m : t.metrics) {
    Json per_method = Json::object();
    for (const auto& r : t.rows) {
      auto& s = per_method[r.method];
      if (s.is_null()) s = Json{{"x", Json::array()}, {"y", Json::array()}};
      s["x"].push_back(r.size_hours);
      s["y"].push_back(r.means.at(m));
    }
    series[m] = per_method;
  }
  return Json{{"metrics", t.metrics}, {"rows", rows}, {"series", series}};
}

namespace svg {

inline const char* color(std::size_t i) {
  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd"};
  return palette[i % 5];
}

inline std::string header(int w, int h) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 "
      << w << ' ' << h << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return out.str();
}

}  // namespace svg

inline std::string histogram_svg(const Histogram& h) {
  constexpr int kW = 640, kH = 360, kPad = 40;
  std::ostringstream out;
  out << svg::header(kW, kH);
  out << "<text x=\"" << kPad << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << h.metric
      << " (n=" << h.n << ", median=" << fmt(h.median) << ")</text>\n";
  const std::size_t peak = std::max<std::size_t>(1, *std::max_element(h.counts.begin(), h.counts.end()));
  const double bw = static_cast<double>(kW - 2 * kPad) / static_cast<double>(h.counts.size());
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double bar = static_cast<double>(kH - 2 * kPad) * static_cast<double>(h.counts[i]) / static_cast<double>(peak);
    out << "<rect x=\"" << fmt(kPad + bw * static_cast<double>(i)) << "\" y=\"" << fmt(kH - kPad - bar)
        << "\" width=\"" << fmt(bw) << "\" height=\"" << fmt(bar) << "\" fill=\"" << svg::color(0) << "\"/>\n";
  }
  const double span = h.edges.back() - h.edges.front();
  const double mx = kPad + (kW - 2 * kPad) * (h.median - h.edges.front()) / span;
  out << "<line x1=\"" << fmt(mx) << "\" y1=\"" << kPad << "\" x2=\"" << fmt(mx) << "\" y2=\"" << kH - kPad
      << "\" stroke=\"black\" stroke-dasharray=\"4\"/>\n";
  out << "<text x=\"" << kPad << "\" y=\"" << kH - 12 << "\" font-family=\"sans-serif\" font-size=\"11\">"
      << fmt(h.edges.front()) << "</text>\n";
  out << "<text x=\"" << kW - kPad << "\" y=\"" << kH - 12
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(h.edges.back()) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

// One panel per metric, one polyline per method.
inline std::string scaling_svg(const ScalingTable& t) {
  constexpr int kPanelW = 320, kPanelH = 240, kPad = 36;
  const int width = kPanelW * static_cast<int>(std::max<std::size_t>(1, t.metrics.size()));
  std::ostringstream out;
  out << svg::header(width, kPanelH);
  std::vector<std::string> methods;
  for (const auto& r : t.rows) {
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) methods.push_back(r.method);
  }
  double xmin = t.rows.front().size_hours, xmax = xmin;
  for (const auto& r : t.rows) {
    xmin = std::min(xmin, r.size_hours);
    xmax = std::max(xmax, r.size_hours);
  }
  if (xmax <= xmin) xmax = xmin + 1.0;
  for (std::size_t p = 0; p < t.metrics.size(); ++p) {
    const auto& m = t.metrics[p];
    double ymin = t.rows.front().means.at(m), ymax = ymin;
    for (const auto& r : t.rows) {
      ymin = std::min(ymin, r.means.at(m));
      ymax = std::max(ymax, r.means.at(m));
    }
    if (ymax <= ymin) {
      ymin -= 0.5;
      ymax += 0.5;
    }
    const double x0 = kPanelW * static_cast<double>(p) + kPad;
    const double pw = kPanelW - 2.0 * kPad, ph = kPanelH - 2.0 * kPad;
    out << "<text x=\"" << fmt(x0) << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"13\">" << m << "</text>\n";
    out << "<rect x=\"" << fmt(x0) << "\" y=\"" << kPad << "\" width=\"" << fmt(pw) << "\" height=\"" << fmt(ph)
        << "\" fill=\"none\" stroke=\"#999\"/>\n";
    for (std::size_t s = 0; s < methods.size(); ++s) {
      std::ostringstream pts;
      for (const auto& r : t.rows) {
        if (r.method != methods[s]) continue;
        const double x = x0 + pw * (r.size_hours - xmin) / (xmax - xmin);
        const double y = kPad + ph * (1.0 - (r.means.at(m) - ymin) / (ymax - ymin));
        pts << fmt(x) << ',' << fmt(y) << ' ';
        out << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"3\" fill=\"" << svg::color(s) << "\"/>\n";
      }
      out << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << svg::color(s) << "\"/>\n";
      if (p == 0) {
        out << "<text x=\"" << fmt(x0 + 4) << "\" y=\"" << kPad + 14 + 14 * static_cast<int>(s)
            << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << svg::color(s) << "\">" << methods[s]
            << "</text>\n";
      }
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace curate_se::report
