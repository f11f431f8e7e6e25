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

// Shared signal-processing kernels: FFT, windows, FIR design, convolution
// and averaged periodograms.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace curate_se::dsp {

using Complex = std::complex<double>;

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

inline std::size_t prev_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p * 2 <= n) p <<= 1;
  return p;
}

// In-place iterative radix-2 FFT. The inverse transform is scaled by 1/n.
inline void fft(std::span<Complex> data, bool inverse = false) {
  const std::size_t n = data.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("fft size must be a power of two");
  }
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<Complex> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    twiddle[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                                     static_cast<double>(n));
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex u = data[i + k];
        const Complex v = data[i + k + half] * twiddle[k * step];
        data[i + k] = u + v;
        data[i + k + half] = u - v;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& c : data) c *= scale;
  }
}

// |X[k]|^2 for k = 0..nfft/2 of a real frame zero-padded to nfft.
inline std::vector<double> power_spectrum(std::span<const double> frame, std::size_t nfft) {
  std::vector<Complex> buf(nfft);
  const std::size_t n = std::min(frame.size(), nfft);
  for (std::size_t i = 0; i < n; ++i) buf[i] = frame[i];
  fft(buf);
  std::vector<double> out(nfft / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::norm(buf[k]);
  return out;
}

// Periodic Hann window (spectral analysis convention).
inline std::vector<double> hann(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(n));
  }
  return w;
}

// Symmetric Hann of length n without its zero end points.
inline std::vector<double> hann_interior(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i + 1) /
                                static_cast<double>(n + 1));
  }
  return w;
}

// Zeroth-order modified Bessel function of the first kind.
inline double bessel_i0(double x) {
  double sum = 1.0;
  double term = 1.0;
  const double q = x * x / 4.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k));
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

// Kaiser's empirical beta for a stopband attenuation in dB.
inline double kaiser_beta(double atten_db) {
  if (atten_db > 50.0) return 0.1102 * (atten_db - 8.7);
  if (atten_db >= 21.0) {
    return 0.5842 * std::pow(atten_db - 21.0, 0.4) + 0.07886 * (atten_db - 21.0);
  }
  return 0.0;
}

inline std::vector<double> kaiser(std::size_t n, double beta) {
  std::vector<double> w(n);
  if (n == 1) {
    w[0] = 1.0;
    return w;
  }
  const double denom = bessel_i0(beta);
  const double m = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = 2.0 * static_cast<double>(i) / m - 1.0;
    w[i] = bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / denom;
  }
  return w;
}

// Kaiser-windowed sinc low-pass. `cutoff` is in cycles/sample (0, 0.5);
// taps are scaled to unit DC gain. num_taps must be odd.
inline std::vector<double> kaiser_lowpass(std::size_t num_taps, double cutoff, double beta) {
  if (num_taps % 2 == 0) throw std::invalid_argument("kaiser_lowpass needs an odd tap count");
  const auto window = kaiser(num_taps, beta);
  const double center = static_cast<double>(num_taps - 1) / 2.0;
  std::vector<double> h(num_taps);
  double sum = 0.0;
  for (std::size_t i = 0; i < num_taps; ++i) {
    const double t = static_cast<double>(i) - center;
    const double x = 2.0 * cutoff * t;
    const double sinc = (t == 0.0) ? 1.0 : std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
    h[i] = 2.0 * cutoff * sinc * window[i];
    sum += h[i];
  }
  for (auto& v : h) v /= sum;
  return h;
}

// Full linear convolution, length a.size() + b.size() - 1.
inline std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  std::vector<double> out(out_len, 0.0);
  if (std::min(a.size(), b.size()) <= 64) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
  }
  const std::size_t n = next_pow2(out_len);
  std::vector<Complex> fa(n), fb(n);
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  fft(fa);
  fft(fb);
  for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
  fft(fa, true);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = fa[i].real();
  return out;
}

// Mirror index into [0, n) without repeating the edge sample.
inline std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) {
  if (n == 1) return 0;
  const auto period = static_cast<std::ptrdiff_t>(2 * (n - 1));
  std::ptrdiff_t m = i % period;
  if (m < 0) m += period;
  if (m >= static_cast<std::ptrdiff_t>(n)) m = period - m;
  return static_cast<std::size_t>(m);
}

// Odd reflection about the edge samples (2 x[0] - x[k] on the left), which
// keeps both value and slope continuous across the boundary.
inline std::vector<double> pad_odd_reflect(std::span<const double> x, std::size_t left, std::size_t right) {
  const std::size_t n = x.size();
  std::vector<double> padded(n + left + right);
  for (std::size_t j = 0; j < padded.size(); ++j) {
    const auto i = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(left);
    if (i < 0) {
      padded[j] = 2.0 * x[0] - x[reflect_index(i, n)];
    } else if (i >= static_cast<std::ptrdiff_t>(n)) {
      padded[j] = 2.0 * x[n - 1] - x[reflect_index(i, n)];
    } else {
      padded[j] = x[static_cast<std::size_t>(i)];
    }
  }
  return padded;
}

// Zero-phase ("same") FIR filtering of x by an odd-length linear-phase
// kernel, with odd-reflected edges so the output aligns with the input.
inline std::vector<double> filter_same_reflect(std::span<const double> x,
                                               std::span<const double> taps) {
  if (x.empty()) return {};
  const std::size_t half = taps.size() / 2;
  const auto padded = pad_odd_reflect(x, half, half);
  const auto full = convolve(padded, taps);
  const std::size_t offset = taps.size() - 1;
  return {full.begin() + static_cast<std::ptrdiff_t>(offset),
          full.begin() + static_cast<std::ptrdiff_t>(offset + x.size())};
}

struct Psd {
  std::vector<double> density;  // one-sided, per Hz
  double bin_hz = 0.0;
};

// Welch estimate: Hann segments, 50% overlap, averaged periodograms.
// Input shorter than a segment is zero-padded to one segment.
inline Psd welch(std::span<const double> x, double sample_rate, std::size_t segment) {
  const auto window = hann(segment);
  double window_power = 0.0;
  for (double w : window) window_power += w * w;
  const std::size_t hop = segment / 2;
  Psd psd;
  psd.density.assign(segment / 2 + 1, 0.0);
  psd.bin_hz = sample_rate / static_cast<double>(segment);
  std::size_t count = 0;
  std::vector<double> frame(segment);
  for (std::size_t start = 0; count == 0 || start + segment <= x.size(); start += hop) {
    for (std::size_t i = 0; i < segment; ++i) {
      frame[i] = (start + i < x.size()) ? x[start + i] * window[i] : 0.0;
    }
    const auto p = power_spectrum(frame, segment);
    for (std::size_t k = 0; k < p.size(); ++k) psd.density[k] += p[k];
    ++count;
  }
  const double scale = 1.0 / (static_cast<double>(count) * sample_rate * window_power);
  for (std::size_t k = 0; k < psd.density.size(); ++k) {
    const bool edge = (k == 0) || (k == psd.density.size() - 1);
    psd.density[k] *= scale * (edge ? 1.0 : 2.0);
  }
  return psd;
}

inline double energy(std::span<const double> x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

inline double rms(std::span<const double> x) {
  return x.empty() ? 0.0 : std::sqrt(energy(x) / static_cast<double>(x.size()));
}

}  // namespace curate_se::dsp
