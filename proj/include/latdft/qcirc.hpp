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

#ifndef LATDFT_QCIRC_HPP_
#define LATDFT_QCIRC_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "latdft/dft.hpp"
#include "latdft/sysnf.hpp"

// Statevector simulation of the four-step circuit that implements the
// lattice DFT on n registers over Z_N:
//
//   shear:      |x> -> |x_1, x_2 + b_2 x_1, ..., x_n + b_n x_1>
//   uncompute:  drop x_1 = (sum b_j^2 + 1)^{-1} sum b_j y_j
//   qft:        N-point DFT on each of the n-1 remaining registers
//   basis:      |z> -> |sum b_j z_j, z_2, ..., z_n>
namespace latdft::qcirc {

using Complex = std::complex<double>;
using sysnf::ModVector;
using sysnf::SysNFBasis;

inline constexpr std::size_t kDefaultStateGuard = std::size_t{1} << 22;
inline constexpr double kSupportTolerance = 1e-12;

// Amplitudes over Z_N^registers, row-major with register 0 most significant.
class Statevector {
 public:
  Statevector(std::int64_t modulus, std::size_t registers,
              std::size_t size_guard = kDefaultStateGuard);
  static Statevector basis_state(const ModVector& x, std::size_t size_guard = kDefaultStateGuard);

  std::int64_t modulus() const { return modulus_; }
  std::size_t registers() const { return registers_; }
  std::size_t size() const { return amps_.size(); }
  Complex& operator[](std::size_t i) { return amps_[i]; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  std::vector<Complex>& amplitudes() { return amps_; }
  const std::vector<Complex>& amplitudes() const { return amps_; }

  std::size_t index_of(const ModVector& x) const;
  ModVector point_of(std::size_t index) const;
  double norm() const;

 private:
  std::int64_t modulus_;
  std::size_t registers_;
  std::vector<Complex> amps_;
};

// Basis permutation by the shear; sign = -1 applies the inverse.
Statevector step_shear(const SysNFBasis& s, const Statevector& psi, int sign = 1);

// Drops register 0. Throws UncomputeError if a state whose first register
// disagrees with the uncompute formula carries amplitude above 1e-12.
Statevector step_uncompute_first(const SysNFBasis& s, const Statevector& psi);

// Kernel exp(-2 pi i y z / N) / sqrt(N) on one register.
Statevector qft_mod_n(const Statevector& psi, std::size_t reg);

// n-1 registers in, n registers out; the new register 0 holds sum b_j z_j.
Statevector step_apply_basis(const SysNFBasis& s, const Statevector& psi);

struct TraceStep {
  std::string name;
  Statevector state;
};

// The full circuit on the L_N component of psi; the component off L_N is
// passed through unchanged. Appends every intermediate state to trace when
// given.
Statevector simulate_sysnf_qft(const SysNFBasis& s, const Statevector& psi,
                               std::vector<TraceStep>* trace = nullptr);

// The same circuit run on the N^{n-1} amplitudes of a function on L_N: the
// shear and uncompute steps map L_N onto Z_N^{n-1} directly, and the basis
// step lands back in enumerate_ln order.
dft::LatticeFunction lattice_qft(const dft::LatticeFunction& f,
                                 std::size_t size_guard = std::size_t{1} << 24);

Statevector embed(const dft::LatticeFunction& f, std::size_t size_guard = kDefaultStateGuard);
// Throws UncomputeError if psi carries amplitude above 1e-12 off L_N.
dft::LatticeFunction restrict_to_ln(const SysNFBasis& s, const Statevector& psi);

// Little-endian float64 (re, im) pairs at bin_path and {"N", "n"} at
// bin_path + ".json".
void write_snapshot(const Statevector& psi, const std::string& bin_path);
Statevector read_snapshot(const std::string& bin_path);

}  // namespace latdft::qcirc

#endif  // LATDFT_QCIRC_HPP_
