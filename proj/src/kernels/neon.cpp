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

// NEON variants for aarch64. One float64x2_t holds one complex value.

#include <arm_neon.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "latdft/kernels/kernels.hpp"

namespace latdft::kernels {
namespace {

void matvec(const Complex* a, std::size_t rows, std::size_t cols, const Complex* x, Complex* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = reinterpret_cast<const double*>(a + r * cols);
    float64x2_t prod = vdupq_n_f64(0.0);   // [ar xr, ai xi]
    float64x2_t cross = vdupq_n_f64(0.0);  // [ar xi, ai xr]
    for (std::size_t c = 0; c < cols; ++c) {
      float64x2_t av = vld1q_f64(row + 2 * c);
      float64x2_t xv = vld1q_f64(xd + 2 * c);
      prod = vfmaq_f64(prod, av, xv);
      cross = vfmaq_f64(cross, av, vextq_f64(xv, xv, 1));
    }
    y[r] = {vgetq_lane_f64(prod, 0) - vgetq_lane_f64(prod, 1),
            vgetq_lane_f64(cross, 0) + vgetq_lane_f64(cross, 1)};
  }
}

Complex dotc(const Complex* a, const Complex* b, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  float64x2_t prod = vdupq_n_f64(0.0);
  float64x2_t cross = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t av = vld1q_f64(ad + 2 * i);
    float64x2_t bv = vld1q_f64(bd + 2 * i);
    prod = vfmaq_f64(prod, av, bv);
    cross = vfmaq_f64(cross, av, vextq_f64(bv, bv, 1));
  }
  return {vgetq_lane_f64(prod, 0) + vgetq_lane_f64(prod, 1),
          vgetq_lane_f64(cross, 0) - vgetq_lane_f64(cross, 1)};
}

double norm_sq(const Complex* a, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t av = vld1q_f64(ad + 2 * i);
    acc = vfmaq_f64(acc, av, av);
  }
  return vaddvq_f64(acc);
}

double max_abs_diff(const Complex* a, const Complex* b, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t d = vsubq_f64(vld1q_f64(ad + 2 * i), vld1q_f64(bd + 2 * i));
    m = std::max(m, vaddvq_f64(vmulq_f64(d, d)));
  }
  return std::sqrt(m);
}

void phase_accumulate(const Complex* amps, const std::int64_t* start, const std::int64_t* step,
                      std::size_t terms, std::int64_t modulus, const Complex* twiddles,
                      std::size_t outputs, Complex* out) {
  std::vector<std::int64_t> idx(start, start + terms);
  const double* base = reinterpret_cast<const double*>(twiddles);
  for (std::size_t t = 0; t < outputs; ++t) {
    float64x2_t acc_re = vdupq_n_f64(0.0);  // [ar wr, ar wi]
    float64x2_t acc_im = vdupq_n_f64(0.0);  // [ai wr, ai wi]
    for (std::size_t j = 0; j < terms; ++j) {
      float64x2_t w = vld1q_f64(base + 2 * idx[j]);
      acc_re = vfmaq_n_f64(acc_re, w, amps[j].real());
      acc_im = vfmaq_n_f64(acc_im, w, amps[j].imag());
      idx[j] += step[j];
      if (idx[j] >= modulus) idx[j] -= modulus;
    }
    out[t] = {vgetq_lane_f64(acc_re, 0) - vgetq_lane_f64(acc_im, 1),
              vgetq_lane_f64(acc_re, 1) + vgetq_lane_f64(acc_im, 0)};
  }
}

void gather_twiddles(const std::int64_t* phase, std::size_t n, const Complex* twiddles,
                     double scale, Complex* out) {
  const double* base = reinterpret_cast<const double*>(twiddles);
  double* od = reinterpret_cast<double*>(out);
  for (std::size_t i = 0; i < n; ++i) {
    vst1q_f64(od + 2 * i, vmulq_n_f64(vld1q_f64(base + 2 * phase[i]), scale));
  }
}

}  // namespace

const KernelTable* neon_kernels() {
  static const KernelTable table{"neon",           matvec,          dotc, norm_sq, max_abs_diff,
                                 phase_accumulate, gather_twiddles};
  return &table;
}

}  // namespace latdft::kernels
