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

// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma
// and only entered after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "latdft/kernels/kernels.hpp"

namespace latdft::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Sum of even lanes minus / plus sum of odd lanes.
inline double even_minus_odd(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return (t[0] + t[2]) - (t[1] + t[3]);
}

inline double even_plus_odd(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return (t[0] + t[2]) + (t[1] + t[3]);
}

void matvec(const Complex* a, std::size_t rows, std::size_t cols, const Complex* x, Complex* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  const std::size_t pairs = cols / 2;
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = reinterpret_cast<const double*>(a + r * cols);
    __m256d prod = _mm256_setzero_pd();   // [ar xr, ai xi, ...]
    __m256d cross = _mm256_setzero_pd();  // [ar xi, ai xr, ...]
    for (std::size_t p = 0; p < pairs; ++p) {
      __m256d av = _mm256_loadu_pd(row + 4 * p);
      __m256d xv = _mm256_loadu_pd(xd + 4 * p);
      prod = _mm256_fmadd_pd(av, xv, prod);
      cross = _mm256_fmadd_pd(av, _mm256_permute_pd(xv, 0x5), cross);
    }
    double re = even_minus_odd(prod);
    double im = even_plus_odd(cross);
    if (cols & 1) {
      const Complex ac = a[r * cols + cols - 1], xc = x[cols - 1];
      re += ac.real() * xc.real() - ac.imag() * xc.imag();
      im += ac.real() * xc.imag() + ac.imag() * xc.real();
    }
    y[r] = {re, im};
  }
}

Complex dotc(const Complex* a, const Complex* b, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  const std::size_t pairs = n / 2;
  __m256d prod = _mm256_setzero_pd();   // [ar br, ai bi]
  __m256d cross = _mm256_setzero_pd();  // [ar bi, ai br]
  for (std::size_t p = 0; p < pairs; ++p) {
    __m256d av = _mm256_loadu_pd(ad + 4 * p);
    __m256d bv = _mm256_loadu_pd(bd + 4 * p);
    prod = _mm256_fmadd_pd(av, bv, prod);
    cross = _mm256_fmadd_pd(av, _mm256_permute_pd(bv, 0x5), cross);
  }
  double re = even_plus_odd(prod);
  double im = even_minus_odd(cross);
  if (n & 1) {
    const Complex ac = a[n - 1], bc = b[n - 1];
    re += ac.real() * bc.real() + ac.imag() * bc.imag();
    im += ac.real() * bc.imag() - ac.imag() * bc.real();
  }
  return {re, im};
}

double norm_sq(const Complex* a, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  const std::size_t pairs = n / 2;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t p = 0; p < pairs; ++p) {
    __m256d av = _mm256_loadu_pd(ad + 4 * p);
    acc = _mm256_fmadd_pd(av, av, acc);
  }
  double s = hsum(acc);
  if (n & 1) s += std::norm(a[n - 1]);
  return s;
}

double max_abs_diff(const Complex* a, const Complex* b, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  const std::size_t pairs = n / 2;
  __m256d best = _mm256_setzero_pd();
  for (std::size_t p = 0; p < pairs; ++p) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(ad + 4 * p), _mm256_loadu_pd(bd + 4 * p));
    __m256d sq = _mm256_mul_pd(d, d);
    best = _mm256_max_pd(best, _mm256_hadd_pd(sq, sq));
  }
  alignas(32) double t[4];
  _mm256_store_pd(t, best);
  double m = std::max(std::max(t[0], t[1]), std::max(t[2], t[3]));
  if (n & 1) m = std::max(m, std::norm(a[n - 1] - b[n - 1]));
  return std::sqrt(m);
}

void phase_accumulate(const Complex* amps, const std::int64_t* start, const std::int64_t* step,
                      std::size_t terms, std::int64_t modulus, const Complex* twiddles,
                      std::size_t outputs, Complex* out) {
  std::vector<double> ar(terms), ai(terms);
  for (std::size_t j = 0; j < terms; ++j) {
    ar[j] = amps[j].real();
    ai[j] = amps[j].imag();
  }
  std::vector<long long> idx(start, start + terms);
  const double* base = reinterpret_cast<const double*>(twiddles);
  const std::size_t blocks = terms / 4;
  const __m256i nvec = _mm256_set1_epi64x(modulus);
  const __m256i limit = _mm256_set1_epi64x(modulus - 1);
  for (std::size_t t = 0; t < outputs; ++t) {
    __m256d accr = _mm256_setzero_pd();
    __m256d acci = _mm256_setzero_pd();
    for (std::size_t blk = 0; blk < blocks; ++blk) {
      long long* ip = idx.data() + 4 * blk;
      __m256i vi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(ip));
      __m256i off = _mm256_slli_epi64(vi, 1);
      __m256d twr = _mm256_i64gather_pd(base, off, 8);
      __m256d twi = _mm256_i64gather_pd(base + 1, off, 8);
      __m256d va = _mm256_loadu_pd(ar.data() + 4 * blk);
      __m256d vb = _mm256_loadu_pd(ai.data() + 4 * blk);
      accr = _mm256_fmadd_pd(va, twr, accr);
      accr = _mm256_fnmadd_pd(vb, twi, accr);
      acci = _mm256_fmadd_pd(va, twi, acci);
      acci = _mm256_fmadd_pd(vb, twr, acci);
      __m256i vs = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(step + 4 * blk));
      vi = _mm256_add_epi64(vi, vs);
      __m256i wrap = _mm256_cmpgt_epi64(vi, limit);
      vi = _mm256_sub_epi64(vi, _mm256_and_si256(wrap, nvec));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(ip), vi);
    }
    double re = hsum(accr), im = hsum(acci);
    for (std::size_t j = 4 * blocks; j < terms; ++j) {
      const Complex w = twiddles[idx[j]];
      re += ar[j] * w.real() - ai[j] * w.imag();
      im += ar[j] * w.imag() + ai[j] * w.real();
      idx[j] += step[j];
      if (idx[j] >= modulus) idx[j] -= modulus;
    }
    out[t] = {re, im};
  }
}

void gather_twiddles(const std::int64_t* phase, std::size_t n, const Complex* twiddles,
                     double scale, Complex* out) {
  const double* base = reinterpret_cast<const double*>(twiddles);
  double* od = reinterpret_cast<double*>(out);
  const __m256d sv = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m128d lo = _mm_loadu_pd(base + 2 * phase[i]);
    __m128d hi = _mm_loadu_pd(base + 2 * phase[i + 1]);
    __m256d v = _mm256_insertf128_pd(_mm256_castpd128_pd256(lo), hi, 1);
    _mm256_storeu_pd(od + 2 * i, _mm256_mul_pd(v, sv));
  }
  for (; i < n; ++i) out[i] = scale * twiddles[phase[i]];
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const KernelTable table{"avx2",           matvec,          dotc, norm_sq, max_abs_diff,
                                 phase_accumulate, gather_twiddles};
  return supported ? &table : nullptr;
}

}  // namespace latdft::kernels
