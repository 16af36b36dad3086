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

#ifndef LATDFT_SELFTEST_ORACLES_HPP_
#define LATDFT_SELFTEST_ORACLES_HPP_

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "latdft/exact.hpp"

// Independent reference computations used to check the library. They share
// no code with the modules under test beyond the exact number types, and
// favour brute force over speed.
namespace latdft::oracles {

using Complex = std::complex<double>;
using Coords = std::vector<std::int64_t>;

// A SysNF instance described only by its parameters.
struct Instance {
  std::int64_t N;
  Coords b;  // b_2, ..., b_n
  std::size_t dimension() const { return b.size() + 1; }
};

// x_1 == sum b_j x_j (mod N).
bool in_ln(const Instance& s, const Coords& x);
// <y, c> == 0 (mod N) for every column c of the SysNF matrix.
bool in_scaled_dual(const Instance& s, const Coords& y);

// Every point of Z_N^n in row-major order.
std::vector<Coords> grid(std::int64_t n, std::size_t dimension);

std::int64_t gcd_condition(const Instance& s);

// All a in [0, N) with x + (a, -b a) in L_N.
std::vector<std::int64_t> phi3_candidates(const Instance& s, const Coords& x);

// exp(-2 pi i k / N) from the reduced integer phase.
Complex root(std::int64_t k, std::int64_t n);

// Dense F(x, z) with rows and columns in lexicographic (x_2, ..., x_n)
// order of L_N.
std::vector<std::vector<Complex>> character_matrix(const Instance& s);

// Full Z_N^n DFT (axis by axis) of the extension by zero of a function on
// L_N, restricted back to L_N and scaled by N^{-(n-1)/2}.
std::vector<Complex> full_grid_dft_restricted(const Instance& s, const std::vector<Complex>& f);

// Exact membership of v in L(B) by solving B z = v.
bool lattice_member(const ExactMatrix& b, const RatVector& v);

// Squared distance from u to L(B) minimised over coefficient vectors within
// bound of the coefficients of centre.
Rational cvp_squared_distance(const ExactMatrix& b, const RatVector& u, const IntVector& centre,
                              long bound);

}  // namespace latdft::oracles

#endif  // LATDFT_SELFTEST_ORACLES_HPP_
