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

#include "curate_se/metrics.hpp"
#include "curate_se/synth.hpp"
#include "oracles.hpp"

namespace curate_se::metrics {
namespace {

using V = std::vector<double>;

TEST(Sdr, Examples) {
  const V r = {1.0, -2.0, 0.5, 3.0};
  EXPECT_EQ(sdr(r, r), std::numeric_limits<double>::infinity());
  EXPECT_EQ(serializable(sdr(r, r)), kInfSentinelDb);
  EXPECT_NEAR(sdr(r, V(4, 0.0)), 0.0, 1e-12);
  EXPECT_THROW(sdr(r, V(3, 0.0)), ValidationError);
}

TEST(Sdr, OrthogonalResidual) {
  // residual orthogonal to r with 1/100 of its energy
  const V r = {1.0, 1.0, 1.0, 1.0};
  const double a = std::sqrt(4.0 / 100.0 / 4.0);
  const V e = {1.0 + a, 1.0 - a, 1.0 + a, 1.0 - a};
  EXPECT_NEAR(sdr(r, e), 20.0, 0.01);
}

TEST(Sdr, NotScaleInvariant) {
  const auto r = oracle::white(1000, 1);
  auto e = oracle::white(1000, 2);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = r[i] + 0.3 * e[i];
  V e2 = e;
  for (auto& v : e2) v *= 2.0;
  EXPECT_NE(sdr(r, e2), sdr(r, e));
}

TEST(SiSdr, HandComputed) {
  EXPECT_NEAR(si_sdr(V{1.0, 0.0}, V{1.0, 0.1}), 20.0, 1e-6);
  const V r = {0.5, -0.25, 1.0};
  EXPECT_EQ(si_sdr(r, r), std::numeric_limits<double>::infinity());
  EXPECT_THROW(si_sdr(V{0.0, 0.0}, V{1.0, 0.0}), ValidationError);
}

TEST(SiSdr, ScaleInvariant) {
  const auto r = oracle::white(4000, 3);
  auto e = oracle::white(4000, 4);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = r[i] + 0.5 * e[i];
  const double base = si_sdr(r, e);
  for (double alpha : {0.1, 3.7}) {
    V s = e;
    for (auto& v : s) v *= alpha;
    EXPECT_NEAR(si_sdr(r, s), base, 1e-6);
  }
}

TEST(Lsd, IdentityScalingSymmetry) {
  const auto a = oracle::white(8192, 5);
  EXPECT_EQ(lsd(a, a), 0.0);
  V b = a;
  for (auto& v : b) v *= 2.0;
  EXPECT_NEAR(lsd(a, b), 20.0 * std::log10(2.0), 1e-3);
  const auto c = oracle::white(8192, 6);
  EXPECT_EQ(lsd(a, c), lsd(c, a));
  EXPECT_THROW(lsd(V(1000, 1.0), V(1000, 1.0)), ValidationError);
  EXPECT_THROW(lsd(a, V(100, 1.0)), ValidationError);
}

TEST(LsdProperty, CircularShiftByWholeHops) {
  // Content padded by silence at both ends, so a circular shift by whole
  // hops only relabels frames.
  const std::size_t n = 512 * 64, pad = 2048 + 17 * 512;
  const auto na = oracle::white(n, 7);
  const auto nb = oracle::white(n, 8, 0.5);
  V a(n, 0.0), b(n, 0.0);
  for (std::size_t i = 2048; i < n - pad; ++i) {
    a[i] = na[i];
    b[i] = na[i] + nb[i];
  }
  const double base = lsd(a, b);
  EXPECT_GT(base, 0.5);
  for (std::size_t hops : {1u, 5u, 17u}) {
    V as(n), bs(n);
    for (std::size_t i = 0; i < n; ++i) {
      as[(i + hops * 512) % n] = a[i];
      bs[(i + hops * 512) % n] = b[i];
    }
    EXPECT_NEAR(lsd(as, bs), base, 1e-3) << hops;
  }
}

TEST(MeasuredSnr, Examples) {
  const auto c = oracle::white(1000, 9);
  auto n = c;
  std::reverse(n.begin(), n.end());
  EXPECT_NEAR(measured_snr(c, n), 0.0, 1e-12);
  for (auto& v : n) v *= 0.1;
  EXPECT_NEAR(measured_snr(c, n), 20.0, 1e-9);
  EXPECT_THROW(measured_snr(c, V(1000, 0.0)), ValidationError);
}

AudioBuffer speech(std::uint64_t seed, double seconds = 3.0) { return synth::speech_like(seconds, 16000, seed); }

TEST(Estoi, Identity) {
  const auto x = speech(1);
  EXPECT_NEAR(estoi(x, x), 1.0, 1e-6);
}

TEST(Estoi, GainInvariant) {
  const auto x = speech(2);
  auto y = x;
  const auto n = oracle::white(y.size(), 3, 0.05);
  for (std::size_t i = 0; i < y.size(); ++i) y.samples[i] += n[i];
  const double base = estoi(x, y);
  auto y2 = y;
  for (auto& v : y2.samples) v *= 3.0;
  auto x2 = x;
  for (auto& v : x2.samples) v *= 0.25;
  EXPECT_NEAR(estoi(x, y2), base, 1e-6);
  EXPECT_NEAR(estoi(x2, y), base, 1e-6);
}

TEST(Estoi, IndependentNoiseNearZero) {
  double sum = 0.0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto x = speech(10 + s);
    const AudioBuffer n{oracle::white(x.size(), 20 + s, 0.1), 16000};
    sum += estoi_raw(x, n);
  }
  EXPECT_LE(std::abs(sum / 5.0), 0.1);
}

TEST(Estoi, MonotoneInSnr) {
  const auto x = speech(4);
  const auto n = oracle::white(x.size(), 5);
  const double ex = oracle::energy(x.samples), en = oracle::energy(n);
  double prev = 2.0;
  for (double snr : {20.0, 10.0, 0.0, -10.0}) {
    const double g = std::sqrt(ex / (en * std::pow(10.0, snr / 10.0)));
    AudioBuffer y = x;
    for (std::size_t i = 0; i < y.size(); ++i) y.samples[i] += g * n[i];
    const double v = estoi(x, y);
    EXPECT_LT(v, prev) << snr;
    prev = v;
  }
}

TEST(Estoi, Errors) {
  const AudioBuffer shortb{V(4000, 0.1), 16000};
  EXPECT_THROW(estoi(shortb, shortb), ValidationError);
  const AudioBuffer silent{V(16000, 0.0), 16000};
  EXPECT_THROW(estoi(silent, silent), ValidationError);
  EXPECT_THROW(estoi(speech(1), speech(1, 2.0)), ValidationError);
}

TEST(EvaluatePair, Fields) {
  const auto x = speech(6);
  const auto r = evaluate_pair("u", x, x);
  EXPECT_EQ(r.utterance_id, "u");
  EXPECT_EQ(r.sdr_db, std::numeric_limits<double>::infinity());
  EXPECT_EQ(r.lsd, 0.0);
  EXPECT_NEAR(r.estoi, 1.0, 1e-6);
}

}  // namespace
}  // namespace curate_se::metrics
