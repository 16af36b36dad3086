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

#ifndef LATDFT_INTLAT_HPP_
#define LATDFT_INTLAT_HPP_

#include <cstdint>
#include <vector>

#include "latdft/exact.hpp"

// Exact lattice linear algebra over the integers and rationals. All bases are
// square and full rank, with basis vectors stored as columns.
namespace latdft::intlat {

// Column-style Hermite normal form: H = M * U with U unimodular, H upper
// triangular and H(i,i) > H(i,j) >= 0 for j > i. L(H) = L(M).
struct HnfResult {
  ExactMatrix H;
  ExactMatrix U;
};

HnfResult hnf(const ExactMatrix& m);

// Exact signed determinant of an integer matrix.
Integer determinant(const ExactMatrix& m);

// B^{-T}; its columns span the dual lattice.
ExactMatrix dual_basis(const ExactMatrix& b);

bool membership(const ExactMatrix& b, const RatVector& v);
bool membership(const ExactMatrix& b, const IntVector& v);

// z with B z = v. Throws MembershipError when v is not a lattice vector.
IntVector coefficients_in_basis(const ExactMatrix& b, const RatVector& v);
IntVector coefficients_in_basis(const ExactMatrix& b, const IntVector& v);

struct GramSchmidtData {
  std::vector<RatVector> orthogonal;      // b~_i
  std::vector<Rational> squared_norms;    // <b~_i, b~_i>
  ExactMatrix mu;                         // mu(i, j), j < i; unit diagonal
};

GramSchmidtData gram_schmidt(const ExactMatrix& b);

// LLL with exact rational Gram-Schmidt. delta must lie in (1/4, 1).
ExactMatrix lll_reduce(const ExactMatrix& b, const Rational& delta = Rational(3, 4));
bool is_lll_reduced(const ExactMatrix& b, const Rational& delta = Rational(3, 4));

// Babai's nearest-plane algorithm. Runs on any basis; the 2^{n/2}
// approximation guarantee needs an LLL-reduced one.
RatVector nearest_plane(const ExactMatrix& b, const RatVector& u);
// Same, reusing gram_schmidt(b) across many targets.
RatVector nearest_plane(const ExactMatrix& b, const GramSchmidtData& gs, const RatVector& u);

struct CvpResult {
  RatVector vector;
  IntVector coefficients;
  Rational squared_distance;
  double distance() const;
};

// Exhaustive closest vector over coefficients |z_i| <= coeff_bound.
CvpResult brute_force_cvp(const ExactMatrix& b, const RatVector& u, long coeff_bound);

// Exhaustive shortest nonzero vector over |z_i| <= coeff_bound. Run on an
// LLL-reduced basis for a trustworthy lambda_1.
CvpResult brute_force_svp(const ExactMatrix& b, long coeff_bound);

// Shortest nonzero vector length, enumerated on the LLL-reduced basis.
double shortest_vector_length(const ExactMatrix& b, long coeff_bound = 6);

}  // namespace latdft::intlat

#endif  // LATDFT_INTLAT_HPP_
