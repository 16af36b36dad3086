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

#ifndef LATDFT_DFT_HPP_
#define LATDFT_DFT_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "latdft/sysnf.hpp"

// Dense discrete Fourier transform on the finite group L_N of a SysNF
// lattice. Points of L_N are indexed lexicographically in (x_2, ..., x_n),
// matching sysnf::enumerate_ln.
namespace latdft::dft {

using Complex = std::complex<double>;
using sysnf::ModVector;
using sysnf::SysNFBasis;

inline constexpr std::size_t kDefaultSizeGuard = 4096;

// entry(x, z) = exp(-2 pi i <x, z> / N) / sqrt(N^{n-1}), row x, column z.
class CharacterMatrix {
 public:
  CharacterMatrix(SysNFBasis basis, std::vector<ModVector> index, std::vector<Complex> entries);

  const SysNFBasis& basis() const { return basis_; }
  std::size_t order() const { return index_.size(); }
  const std::vector<ModVector>& index() const { return index_; }
  const Complex& operator()(std::size_t x, std::size_t z) const { return entries_[x * order() + z]; }
  const std::vector<Complex>& entries() const { return entries_; }
  Eigen::MatrixXcd to_eigen() const;

 private:
  SysNFBasis basis_;
  std::vector<ModVector> index_;
  std::vector<Complex> entries_;
};

// Complex amplitudes on L_N in enumerate_ln order.
struct LatticeFunction {
  SysNFBasis basis;
  std::vector<Complex> values;
};

LatticeFunction zero_function(const SysNFBasis& s, std::size_t size_guard = kDefaultSizeGuard);

// exp(-2 pi i (<x, z> mod N) / N). Throws MembershipError unless both points
// lie in L_N.
Complex character(const SysNFBasis& s, const ModVector& x, const ModVector& z);

// Throws SizeGuardError when N^{n-1} exceeds size_guard.
CharacterMatrix dft_matrix(const SysNFBasis& s, std::size_t size_guard = kDefaultSizeGuard);

// max |F^H F - I|.
double unitarity_deviation(const CharacterMatrix& f);

// Throws DimensionError on a length or basis mismatch.
LatticeFunction apply_dft(const CharacterMatrix& f, const LatticeFunction& g);
LatticeFunction apply_dft(const SysNFBasis& s, const LatticeFunction& g,
                          std::size_t size_guard = kDefaultSizeGuard);

// max over basis states |x> of |F U_v |x> - W_v F |x>|_inf with
// U_v |x> = |x + v> and W_v |z> = exp(-2 pi i <v, z> / N) |z>.
double check_shift_phase(const CharacterMatrix& f, const ModVector& v);
double check_shift_phase(const SysNFBasis& s, const ModVector& v,
                         std::size_t size_guard = kDefaultSizeGuard);

struct FourthPowerReport {
  double f2_vs_negation;  // max |F^2 - P|, P |x> = |-x>
  double f4_vs_identity;  // max |F^4 - I|
};
FourthPowerReport check_fourth_power(const CharacterMatrix& f);

// Eigenvalues from a general complex eigensolver.
std::vector<Complex> spectrum(const CharacterMatrix& f);
// Largest distance from an eigenvalue to the nearest of {1, -i, -1, i}.
double spectrum_deviation(const std::vector<Complex>& eigenvalues);

struct EigenSpace {
  Complex eigenvalue;
  std::size_t multiplicity;
  Eigen::MatrixXcd basis;  // orthonormal columns
  double max_residual;     // max |F v - lambda v| over the columns
};

// Eigenspaces for 1, -i, -1, i via the spectral projectors
// P_k = (1/4) sum_j (lambda_k^{-1} F)^j.
std::vector<EigenSpace> eigen_explore(const CharacterMatrix& f);

// Values on the full grid Z_N^n, row-major with x_1 most significant.
struct GridFunction {
  std::int64_t modulus;
  std::size_t dimension;
  std::vector<Complex> values;

  std::size_t index_of(const ModVector& x) const;
};

// Monte Carlo estimate of the smallest eps with
// sum_{x in L_N} |fhat(x - v)|^2 >= (1 - eps) sum_{x in L_N} |fhat(x)|^2
// over shifts v = (k, 0, ..., 0), k uniform in [0, N): these represent every
// coset of Z^n / L. Deterministic given the seed. Throws ZeroMassError if
// fhat vanishes on L_N.
double smoothness_estimate(const SysNFBasis& s, const GridFunction& fhat, std::size_t samples,
                           std::uint64_t seed);

// CSV of "re,im" rows in row-major entry order.
void write_matrix_csv(const CharacterMatrix& f, std::ostream& out);
// {"N", "n", "b", "order"}
nlohmann::json matrix_header(const CharacterMatrix& f);
// CSV "x2,...,xn,re,im".
void write_function_csv(const LatticeFunction& g, std::ostream& out);

}  // namespace latdft::dft

#endif  // LATDFT_DFT_HPP_
