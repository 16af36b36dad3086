// Copyright 2026 The latdft Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>
#include <utility>
#include <vector>

#include "latdft/kernels/kernels.hpp"

namespace latdft::kernels {
namespace {

void matvec(const Complex* a, std::size_t rows, std::size_t cols, const Complex* x, Complex* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const Complex* row = a + r * cols;
    double re = 0.0, im = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      re += row[c].real() * x[c].real() - row[c].imag() * x[c].imag();
      im += row[c].real() * x[c].imag() + row[c].imag() * x[c].real();
    }
    y[r] = {re, im};
  }
}

Complex dotc(const Complex* a, const Complex* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

double norm_sq(const Complex* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return acc;
}

double max_abs_diff(const Complex* a, const Complex* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void phase_accumulate(const Complex* amps, const std::int64_t* start, const std::int64_t* step,
                      std::size_t terms, std::int64_t modulus, const Complex* twiddles,
                      std::size_t outputs, Complex* out) {
  std::vector<std::int64_t> idx(start, start + terms);
  for (std::size_t t = 0; t < outputs; ++t) {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < terms; ++j) {
      const Complex w = twiddles[idx[j]];
      re += amps[j].real() * w.real() - amps[j].imag() * w.imag();
      im += amps[j].real() * w.imag() + amps[j].imag() * w.real();
      idx[j] += step[j];
      if (idx[j] >= modulus) idx[j] -= modulus;
    }
    out[t] = {re, im};
  }
}

void gather_twiddles(const std::int64_t* phase, std::size_t n, const Complex* twiddles,
                     double scale, Complex* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = scale * twiddles[phase[i]];
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar",       matvec,           dotc, norm_sq, max_abs_diff,
                                 phase_accumulate, gather_twiddles};
  return table;
}

std::vector<Complex> twiddle_table(std::int64_t n) {
  std::vector<Complex> tw(static_cast<std::size_t>(n));
  // Reduce the angle to [0, pi/4] through the octant symmetries so every
  // entry carries a single rounding from std::sin/std::cos.
  for (std::int64_t k = 0; k < n; ++k) {
    // angle = 2 pi k / n; work with the fraction k/n in units of a full turn.
    const std::int64_t k8 = 8 * k;
    const std::int64_t oct = k8 / n;  // octant in [0, 8)
    double c, s;
    auto trig = [&](std::int64_t num) {  // (num / (8n)) of a full turn, num in [0, n]
      // cos and sin of pi/4 round differently; keep the diagonal symmetric.
      if (num == n) return std::pair<double, double>(std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2);
      const double a = 2.0 * std::numbers::pi * static_cast<double>(num) / (8.0 * static_cast<double>(n));
      return std::pair<double, double>(std::cos(a), std::sin(a));
    };
    const std::int64_t r = k8 - oct * n;  // in [0, n)
    switch (oct) {
      case 0: std::tie(c, s) = trig(r); break;
      case 1: { auto [cc, ss] = trig(n - r); c = ss; s = cc; break; }
      case 2: { auto [cc, ss] = trig(r); c = -ss; s = cc; break; }
      case 3: { auto [cc, ss] = trig(n - r); c = -cc; s = ss; break; }
      case 4: { auto [cc, ss] = trig(r); c = -cc; s = -ss; break; }
      case 5: { auto [cc, ss] = trig(n - r); c = -ss; s = -cc; break; }
      case 6: { auto [cc, ss] = trig(r); c = ss; s = -cc; break; }
      default: { auto [cc, ss] = trig(n - r); c = cc; s = -ss; break; }
    }
    tw[static_cast<std::size_t>(k)] = {c, -s};
  }
  return tw;
}

}  // namespace latdft::kernels
