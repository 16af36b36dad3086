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

#ifndef LATDFT_SYSNF_HPP_
#define LATDFT_SYSNF_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "latdft/exact.hpp"

namespace latdft::sysnf {

// Point of Z_N^n with coordinates kept in [0, N).
class ModVector {
 public:
  ModVector() = default;
  ModVector(std::int64_t modulus, std::vector<std::int64_t> coords);

  std::int64_t modulus() const { return modulus_; }
  std::size_t size() const { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<std::int64_t>& coords() const { return coords_; }

  // Representatives in (-N/2, N/2].
  std::vector<std::int64_t> centered() const;

  ModVector operator+(const ModVector& o) const;
  ModVector operator-(const ModVector& o) const;
  ModVector operator-() const;

  friend bool operator==(const ModVector&, const ModVector&) = default;
  friend auto operator<=>(const ModVector&, const ModVector&) = default;

 private:
  std::int64_t modulus_ = 1;
  std::vector<std::int64_t> coords_;
};

// <x, z> mod N, accumulated exactly.
std::int64_t inner_product_mod(const ModVector& x, const ModVector& z);
std::int64_t mod_reduce(std::int64_t v, std::int64_t n);
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n);
// Throws ParameterError when a is not invertible mod n.
std::int64_t inverse_mod(std::int64_t a, std::int64_t n);

// Systematic normal form:
//
//   [ N  b_2 ... b_n ]
//   [    1           ]
//   [        ...     ]
//   [             1  ]
//
// with b_j reduced into [0, N). Instances built through validate() or
// make_basis() also satisfy gcd(sum b_j^2 + 1, N) = 1.
class SysNFBasis {
 public:
  // No coprimality check; used for negative controls.
  static SysNFBasis unchecked(Integer modulus, IntVector b);

  const Integer& modulus() const { return modulus_; }
  const IntVector& b() const { return b_; }
  std::size_t dimension() const { return b_.size() + 1; }

  Integer condition_value() const;  // sum b_j^2 + 1
  Integer condition_gcd() const;
  bool coprime_condition() const { return condition_gcd() == 1; }

  ExactMatrix matrix() const;
  // N * B^{-T}: columns (1, -b_2, ..., -b_n) and N e_j for j > 1.
  ExactMatrix scaled_dual_matrix() const;

  // Machine-word view used by the Z_N kernels. Throws SizeGuardError if N
  // does not fit in 62 bits.
  std::int64_t small_modulus() const;
  std::vector<std::int64_t> small_b() const;

  friend bool operator==(const SysNFBasis&, const SysNFBasis&) = default;

 private:
  SysNFBasis(Integer modulus, IntVector b) : modulus_(std::move(modulus)), b_(std::move(b)) {}
  Integer modulus_;
  IntVector b_;
};

// Throws StructureError on shape violations and ConditionError when the
// gcd condition fails.
SysNFBasis validate(const ExactMatrix& m);
SysNFBasis make_basis(Integer modulus, IntVector b);
SysNFBasis make_basis(std::int64_t modulus, std::vector<std::int64_t> b);

bool ln_membership(const SysNFBasis& s, const ModVector& x);

inline constexpr std::size_t kDefaultEnumerationGuard = std::size_t{1} << 22;

// Points of L_N in lexicographic order of (x_2, ..., x_n).
std::vector<ModVector> enumerate_ln(const SysNFBasis& s,
                                    std::size_t size_guard = kDefaultEnumerationGuard);
// Position of x in enumerate_ln order. x must be a member.
std::size_t ln_index(const SysNFBasis& s, const ModVector& x);
ModVector ln_point(const SysNFBasis& s, std::size_t index);
std::size_t ln_order(const SysNFBasis& s, std::size_t size_guard = kDefaultEnumerationGuard);

// (a, -b_2 a, ..., -b_n a) mod N.
ModVector scaled_dual_point(const SysNFBasis& s, std::int64_t a);
std::vector<ModVector> enumerate_scaled_dual(const SysNFBasis& s);

// The unique y in (NL*)_N with x + y in L_N.
ModVector phi3(const SysNFBasis& s, const ModVector& x);
// The parameter a of phi3(x) = scaled_dual_point(s, a).
std::int64_t phi3_parameter(const SysNFBasis& s, const ModVector& x);

struct ReductionCertificate {
  SysNFBasis basis;
  ExactMatrix sigma;  // sigma(v) in L(basis) and sigma(v)/T ~ v
  Integer T;
  Rational epsilon;
  Integer delta;
};

struct ReductionOptions {
  std::uint64_t delta_search_cap = std::uint64_t{1} << 20;
  unsigned max_t_bits = 512;
};

ReductionCertificate reduce_to_sysnf(const ExactMatrix& b, const Rational& epsilon,
                                     const ReductionOptions& options = {});

// ||sigma(v)/T - v||^2 / ||v||^2 for a nonzero lattice vector v.
Rational relative_error_squared(const ReductionCertificate& cert, const RatVector& v);
bool within_bound(const ReductionCertificate& cert, const RatVector& v);
// True when sigma(v) is an integer vector of L(basis).
bool maps_into_sysnf(const ReductionCertificate& cert, const RatVector& v);

nlohmann::json to_json(const ReductionCertificate& cert);
ReductionCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace latdft::sysnf

#endif  // LATDFT_SYSNF_HPP_
