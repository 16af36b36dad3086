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

#ifndef LATDFT_KERNELS_KERNELS_HPP_
#define LATDFT_KERNELS_KERNELS_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

// Data-parallel inner loops shared by the DFT, circuit and sampler modules.
// Each kernel has a scalar reference implementation; AVX2+FMA (x86-64) and
// NEON (aarch64) variants are selected at runtime and tested for
// equivalence against the reference.
namespace latdft::kernels {

using Complex = std::complex<double>;

struct KernelTable {
  const char* name;

  // y[r] = sum_c a[r * cols + c] * x[c]
  void (*matvec)(const Complex* a, std::size_t rows, std::size_t cols, const Complex* x,
                 Complex* y);

  // sum_i conj(a[i]) * b[i]
  Complex (*dotc)(const Complex* a, const Complex* b, std::size_t n);

  double (*norm_sq)(const Complex* a, std::size_t n);

  // max_i |a[i] - b[i]|
  double (*max_abs_diff)(const Complex* a, const Complex* b, std::size_t n);

  // out[t] = sum_j amps[j] * twiddles[(start[j] + t * step[j]) mod modulus]
  // for t in [0, outputs). start and step must lie in [0, modulus); phase
  // indices advance by exact integer addition.
  void (*phase_accumulate)(const Complex* amps, const std::int64_t* start,
                           const std::int64_t* step, std::size_t terms, std::int64_t modulus,
                           const Complex* twiddles, std::size_t outputs, Complex* out);

  // out[i] = scale * twiddles[phase[i]]
  void (*gather_twiddles)(const std::int64_t* phase, std::size_t n, const Complex* twiddles,
                          double scale, Complex* out);
};

const KernelTable& scalar_kernels();
// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// The kernels used by the library. Picks the widest supported variant
// unless LATDFT_SIMD=scalar is set in the environment.
const KernelTable& active();

// Every variant usable on this machine, scalar first.
std::vector<const KernelTable*> available();

// twiddles[k] = exp(-2 pi i k / n), k in [0, n).
std::vector<Complex> twiddle_table(std::int64_t n);

}  // namespace latdft::kernels

#endif  // LATDFT_KERNELS_KERNELS_HPP_
