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

#include "latdft/sysnf.hpp"

#include <numeric>
#include <utility>

#include "latdft/error.hpp"
#include "latdft/intlat.hpp"

namespace latdft::sysnf {

std::int64_t mod_reduce(std::int64_t v, std::int64_t n) {
  std::int64_t r = v % n;
  return r < 0 ? r + n : r;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n) {
  __int128 p = static_cast<__int128>(a) * b;
  __int128 r = p % n;
  if (r < 0) r += n;
  return static_cast<std::int64_t>(r);
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t n) {
  std::int64_t r0 = mod_reduce(a, n), r1 = n;
  std::int64_t s0 = 1, s1 = 0;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  if (r0 != 1) {
    if (n == 1) return 0;
    throw ParameterError("sysnf: " + std::to_string(a) + " is not invertible mod " + std::to_string(n));
  }
  return mod_reduce(s0, n);
}

ModVector::ModVector(std::int64_t modulus, std::vector<std::int64_t> coords)
    : modulus_(modulus), coords_(std::move(coords)) {
  if (modulus_ < 1) throw ParameterError("sysnf: modulus must be positive");
  for (auto& c : coords_) c = mod_reduce(c, modulus_);
}

std::vector<std::int64_t> ModVector::centered() const {
  std::vector<std::int64_t> out(coords_);
  for (auto& c : out) {
    if (2 * c > modulus_) c -= modulus_;
  }
  return out;
}

namespace {

void require_same_space(const ModVector& a, const ModVector& b) {
  if (a.modulus() != b.modulus())
    throw ModulusMismatchError("sysnf: moduli " + std::to_string(a.modulus()) + " and " +
                               std::to_string(b.modulus()) + " differ");
  if (a.size() != b.size()) throw DimensionError("sysnf: vector lengths differ");
}

void require_point_of(const SysNFBasis& s, const ModVector& x) {
  if (x.modulus() != s.small_modulus())
    throw ModulusMismatchError("sysnf: point modulus " + std::to_string(x.modulus()) +
                               " does not match N = " + s.modulus().get_str());
  if (x.size() != s.dimension()) throw DimensionError("sysnf: point dimension mismatch");
}

// Product of n factors, or 0 if it exceeds the guard.
std::size_t guarded_power(std::int64_t base, std::size_t exponent, std::size_t guard) {
  std::size_t acc = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && acc > guard / static_cast<std::size_t>(base)) return 0;
    acc *= static_cast<std::size_t>(base);
  }
  return acc <= guard ? acc : 0;
}

}  // namespace

ModVector ModVector::operator+(const ModVector& o) const {
  require_same_space(*this, o);
  std::vector<std::int64_t> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = (coords_[i] + o.coords_[i]) % modulus_;
  return ModVector(modulus_, std::move(c));
}

ModVector ModVector::operator-(const ModVector& o) const {
  require_same_space(*this, o);
  std::vector<std::int64_t> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] - o.coords_[i];
  return ModVector(modulus_, std::move(c));
}

ModVector ModVector::operator-() const {
  std::vector<std::int64_t> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
  return ModVector(modulus_, std::move(c));
}

std::int64_t inner_product_mod(const ModVector& x, const ModVector& z) {
  require_same_space(x, z);
  const std::int64_t n = x.modulus();
  __int128 acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += static_cast<__int128>(x[i]) * z[i];
    acc %= n;
  }
  return static_cast<std::int64_t>(acc);
}

SysNFBasis SysNFBasis::unchecked(Integer modulus, IntVector b) {
  if (modulus < 1) throw StructureError("sysnf: N must be positive, got " + modulus.get_str());
  for (auto& v : b) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
    v = r;
  }
  return SysNFBasis(std::move(modulus), std::move(b));
}

Integer SysNFBasis::condition_value() const {
  Integer acc = 1;
  for (const auto& v : b_) acc += v * v;
  return acc;
}

Integer SysNFBasis::condition_gcd() const {
  Integer g;
  Integer c = condition_value();
  mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), modulus_.get_mpz_t());
  return g;
}

ExactMatrix SysNFBasis::matrix() const {
  const std::size_t n = dimension();
  ExactMatrix m = ExactMatrix::identity(n);
  m(0, 0) = modulus_;
  for (std::size_t j = 1; j < n; ++j) m(0, j) = b_[j - 1];
  return m;
}

ExactMatrix SysNFBasis::scaled_dual_matrix() const {
  const std::size_t n = dimension();
  ExactMatrix m(n, n);
  m(0, 0) = 1;
  for (std::size_t i = 1; i < n; ++i) {
    m(i, 0) = -b_[i - 1];
    m(i, i) = modulus_;
  }
  return m;
}

std::int64_t SysNFBasis::small_modulus() const {
  if (mpz_sizeinbase(modulus_.get_mpz_t(), 2) > 62)
    throw SizeGuardError("sysnf: modulus " + modulus_.get_str() + " exceeds 62 bits");
  return static_cast<std::int64_t>(modulus_.get_si());
}

std::vector<std::int64_t> SysNFBasis::small_b() const {
  small_modulus();
  std::vector<std::int64_t> out;
  out.reserve(b_.size());
  for (const auto& v : b_) out.push_back(static_cast<std::int64_t>(v.get_si()));
  return out;
}

SysNFBasis make_basis(Integer modulus, IntVector b) {
  SysNFBasis s = SysNFBasis::unchecked(std::move(modulus), std::move(b));
  Integer g = s.condition_gcd();
  if (g != 1) {
    throw ConditionError("sysnf: gcd(sum b_j^2 + 1, N) = " + g.get_str() + " for N = " +
                             s.modulus().get_str() + "; the lattice DFT is not unitary",
                         g);
  }
  return s;
}

SysNFBasis make_basis(std::int64_t modulus, std::vector<std::int64_t> b) {
  IntVector bb;
  for (auto v : b) bb.emplace_back(static_cast<long>(v));
  return make_basis(Integer(static_cast<long>(modulus)), std::move(bb));
}

SysNFBasis validate(const ExactMatrix& m) {
  if (m.empty() || !m.is_square()) throw StructureError("sysnf: matrix must be square");
  if (!m.is_integral()) throw StructureError("sysnf: matrix must be integral");
  const std::size_t n = m.rows();
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational want = (i == j) ? 1 : 0;
      if (m(i, j) != want) {
        throw StructureError("sysnf: entry (" + std::to_string(i + 1) + "," +
                             std::to_string(j + 1) + ") is " + to_string(m(i, j)) +
                             ", expected " + to_string(want));
      }
    }
  }
  if (m(0, 0) < 1) throw StructureError("sysnf: N = " + to_string(m(0, 0)) + " must be positive");
  IntVector b;
  for (std::size_t j = 1; j < n; ++j) b.push_back(m(0, j).get_num());
  return make_basis(m(0, 0).get_num(), std::move(b));
}

bool ln_membership(const SysNFBasis& s, const ModVector& x) {
  require_point_of(s, x);
  const std::int64_t n = x.modulus();
  const auto b = s.small_b();
  __int128 acc = 0;
  for (std::size_t j = 1; j < x.size(); ++j) {
    acc += static_cast<__int128>(b[j - 1]) * x[j];
    acc %= n;
  }
  return static_cast<std::int64_t>(acc) == x[0];
}

std::size_t ln_order(const SysNFBasis& s, std::size_t size_guard) {
  const std::int64_t n = s.small_modulus();
  std::size_t order = guarded_power(n, s.dimension() - 1, size_guard);
  if (order == 0)
    throw SizeGuardError("sysnf: |L_N| = N^(n-1) exceeds the size guard of " +
                         std::to_string(size_guard));
  return order;
}

ModVector ln_point(const SysNFBasis& s, std::size_t index) {
  const std::int64_t n = s.small_modulus();
  const auto b = s.small_b();
  const std::size_t dim = s.dimension();
  std::vector<std::int64_t> c(dim, 0);
  for (std::size_t j = dim; j-- > 1;) {
    c[j] = static_cast<std::int64_t>(index % static_cast<std::size_t>(n));
    index /= static_cast<std::size_t>(n);
  }
  __int128 acc = 0;
  for (std::size_t j = 1; j < dim; ++j) {
    acc += static_cast<__int128>(b[j - 1]) * c[j];
    acc %= n;
  }
  c[0] = static_cast<std::int64_t>(acc);
  return ModVector(n, std::move(c));
}

std::size_t ln_index(const SysNFBasis& s, const ModVector& x) {
  require_point_of(s, x);
  const auto n = static_cast<std::size_t>(x.modulus());
  std::size_t idx = 0;
  for (std::size_t j = 1; j < x.size(); ++j) idx = idx * n + static_cast<std::size_t>(x[j]);
  return idx;
}

std::vector<ModVector> enumerate_ln(const SysNFBasis& s, std::size_t size_guard) {
  const std::size_t order = ln_order(s, size_guard);
  std::vector<ModVector> out;
  out.reserve(order);
  for (std::size_t i = 0; i < order; ++i) out.push_back(ln_point(s, i));
  return out;
}

ModVector scaled_dual_point(const SysNFBasis& s, std::int64_t a) {
  const std::int64_t n = s.small_modulus();
  const auto b = s.small_b();
  std::vector<std::int64_t> c(s.dimension());
  c[0] = mod_reduce(a, n);
  for (std::size_t j = 1; j < c.size(); ++j) c[j] = mod_reduce(-mul_mod(b[j - 1], c[0], n), n);
  return ModVector(n, std::move(c));
}

std::vector<ModVector> enumerate_scaled_dual(const SysNFBasis& s) {
  const std::int64_t n = s.small_modulus();
  std::vector<ModVector> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t a = 0; a < n; ++a) out.push_back(scaled_dual_point(s, a));
  return out;
}

std::int64_t phi3_parameter(const SysNFBasis& s, const ModVector& x) {
  require_point_of(s, x);
  Integer g = s.condition_gcd();
  if (g != 1)
    throw ConditionError("sysnf: phi3 needs gcd(sum b_j^2 + 1, N) = 1, got " + g.get_str(), g);
  const std::int64_t n = x.modulus();
  const auto b = s.small_b();
  Integer cond_mod;
  Integer cond = s.condition_value();
  mpz_fdiv_r(cond_mod.get_mpz_t(), cond.get_mpz_t(), s.modulus().get_mpz_t());
  const std::int64_t inv = inverse_mod(static_cast<std::int64_t>(cond_mod.get_si()), n);
  __int128 r = x[0];
  for (std::size_t j = 1; j < x.size(); ++j) {
    r -= static_cast<__int128>(x[j]) * b[j - 1];
    r %= n;
  }
  const std::int64_t residual = mod_reduce(static_cast<std::int64_t>(r), n);
  return mod_reduce(-mul_mod(inv, residual, n), n);
}

ModVector phi3(const SysNFBasis& s, const ModVector& x) {
  return scaled_dual_point(s, phi3_parameter(s, x));
}

// ---------------------------------------------------------------------------
// Reduction of an arbitrary integer basis to a nearby SysNF lattice.

namespace {

struct Attempt {
  SysNFBasis basis = SysNFBasis::unchecked(1, {});
  ExactMatrix sigma;
  Integer delta;
};

// One pass of the construction for a fixed scale T. Returns false if the
// scaled basis degenerates (cannot happen for integer input).
bool build_for_scale(const ExactMatrix& h, const Integer& t, const ReductionOptions& options,
                     Attempt& out) {
  const std::size_t n = h.rows();
  const Rational tr(t);

  // Scale, add the unit sub-diagonal, round to integers.
  ExactMatrix w(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) w(i, j) = round_half_away(tr * h(i, j));
    if (i + 1 < n) w(i + 1, i) = 1;
  }

  // Clear rows 2..n except the sub-diagonal; q tracks the column operations.
  ExactMatrix q = ExactMatrix::identity(n);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Rational k = w(i, j);
      if (sgn(k) == 0) continue;
      w.add_column_multiple(j, i - 1, -k);
      q.add_column_multiple(j, i - 1, -k);
    }
  }

  const std::size_t last = n - 1;
  if (sgn(w(0, last)) == 0) return false;
  if (sgn(w(0, last)) < 0) {
    w.negate_column(last);
    q.negate_column(last);
  }

  Integer cond = 1;
  for (std::size_t j = 0; j < last; ++j) cond += w(0, j).get_num() * w(0, j).get_num();
  const Integer base = w(0, last).get_num();
  Integer delta;
  Integer g, cand;
  bool found = false;
  for (std::uint64_t d = 1; d <= options.delta_search_cap; ++d) {
    cand = base + static_cast<unsigned long>(d);
    mpz_gcd(g.get_mpz_t(), cond.get_mpz_t(), cand.get_mpz_t());
    if (g == 1) {
      delta = static_cast<unsigned long>(d);
      found = true;
      break;
    }
  }
  if (!found)
    throw SearchExhaustedError("sysnf: no coprime modulus within " +
                               std::to_string(options.delta_search_cap) + " of " + base.get_str());
  w(0, last) += delta;
  const Integer modulus = w(0, last).get_num();

  // Last column to the front.
  ExactMatrix rot(n, n);
  rot(last, 0) = 1;
  for (std::size_t j = 1; j < n; ++j) rot(j - 1, j) = 1;
  ExactMatrix b4 = w * rot;
  q = q * rot;

  // Reduce b_j into [0, N) with the first column (N e_1).
  const Rational nr(modulus);
  for (std::size_t j = 1; j < n; ++j) {
    Integer k = floor_of(b4(0, j) / nr);
    if (k == 0) continue;
    b4.add_column_multiple(j, 0, Rational(-k));
    q.add_column_multiple(j, 0, Rational(-k));
  }

  IntVector bvec;
  for (std::size_t j = 1; j < n; ++j) bvec.push_back(b4(0, j).get_num());
  out.basis = make_basis(modulus, std::move(bvec));
  // sigma(H c) = B4 Q^{-1} c, i.e. sigma = B4 Q^{-1} H^{-1}.
  out.sigma = b4 * inverse(q) * inverse(h);
  out.delta = delta;
  return true;
}

Rational frobenius_error_squared(const ExactMatrix& sigma, const Integer& t) {
  const std::size_t n = sigma.rows();
  const Rational tr(t);
  Rational acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational e = sigma(i, j) / tr - (i == j ? Rational(1) : Rational(0));
      acc += e * e;
    }
  }
  return acc;
}

}  // namespace

ReductionCertificate reduce_to_sysnf(const ExactMatrix& b, const Rational& epsilon,
                                     const ReductionOptions& options) {
  if (sgn(epsilon) <= 0 || epsilon >= 1)
    throw ParameterError("sysnf: epsilon must lie in (0, 1), got " + to_string(epsilon));
  if (b.empty() || !b.is_square()) throw DimensionError("sysnf: basis must be square");
  if (!b.is_integral()) throw ParameterError("sysnf: basis must be integral");
  const std::size_t n = b.rows();
  const intlat::HnfResult hr = intlat::hnf(b);

  Integer det = 1;
  for (std::size_t i = 0; i < n; ++i) det *= hr.H(i, i).get_num();
  Integer t = ceil_of(Rational(Integer(static_cast<unsigned long>(n)) * det) / epsilon);
  if (t < 1) t = 1;

  const Rational eps2 = epsilon * epsilon;
  while (mpz_sizeinbase(t.get_mpz_t(), 2) <= options.max_t_bits) {
    Attempt attempt;
    if (build_for_scale(hr.H, t, options, attempt) &&
        frobenius_error_squared(attempt.sigma, t) <= eps2) {
      return ReductionCertificate{std::move(attempt.basis), std::move(attempt.sigma), t, epsilon,
                                  std::move(attempt.delta)};
    }
    t *= 2;
  }
  throw SearchExhaustedError("sysnf: scale T exceeded 2^" + std::to_string(options.max_t_bits));
}

Rational relative_error_squared(const ReductionCertificate& cert, const RatVector& v) {
  Rational vv = squared_norm(v);
  if (sgn(vv) == 0) throw ParameterError("sysnf: relative error of the zero vector");
  RatVector sv = cert.sigma * v;
  const Rational tr(cert.T);
  Rational acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational e = sv[i] / tr - v[i];
    acc += e * e;
  }
  return acc / vv;
}

bool within_bound(const ReductionCertificate& cert, const RatVector& v) {
  if (sgn(squared_norm(v)) == 0) return is_integral(cert.sigma * v);
  return relative_error_squared(cert, v) <= cert.epsilon * cert.epsilon;
}

bool maps_into_sysnf(const ReductionCertificate& cert, const RatVector& v) {
  RatVector sv = cert.sigma * v;
  if (!is_integral(sv)) return false;
  // x_1 = sum b_j x_j (mod N) over the integers.
  Integer acc = sv[0].get_num();
  for (std::size_t j = 1; j < sv.size(); ++j) acc -= cert.basis.b()[j - 1] * sv[j].get_num();
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), acc.get_mpz_t(), cert.basis.modulus().get_mpz_t());
  return r == 0;
}

nlohmann::json to_json(const ReductionCertificate& cert) {
  nlohmann::json j;
  j["n"] = cert.basis.dimension();
  j["N"] = cert.basis.modulus().get_str();
  nlohmann::json b = nlohmann::json::array();
  for (const auto& v : cert.basis.b()) b.push_back(v.get_str());
  j["b"] = b;
  j["T"] = cert.T.get_str();
  j["delta"] = cert.delta.get_str();
  nlohmann::json sigma = nlohmann::json::array();
  for (std::size_t r = 0; r < cert.sigma.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < cert.sigma.cols(); ++c) row.push_back(to_string(cert.sigma(r, c)));
    sigma.push_back(row);
  }
  j["sigma"] = sigma;
  j["epsilon"] = to_string(cert.epsilon);
  return j;
}

ReductionCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    IntVector b;
    for (const auto& v : j.at("b")) b.push_back(parse_integer(v.get<std::string>()));
    if (b.size() + 1 != n) throw ParseError("sysnf: certificate b has wrong length");
    ReductionCertificate cert{make_basis(parse_integer(j.at("N").get<std::string>()), std::move(b)),
                              ExactMatrix(n, n), parse_integer(j.at("T").get<std::string>()),
                              parse_rational(j.at("epsilon").get<std::string>()),
                              parse_integer(j.at("delta").get<std::string>())};
    const auto& sigma = j.at("sigma");
    if (sigma.size() != n) throw ParseError("sysnf: certificate sigma has wrong shape");
    for (std::size_t r = 0; r < n; ++r) {
      if (sigma[r].size() != n) throw ParseError("sysnf: certificate sigma has wrong shape");
      for (std::size_t c = 0; c < n; ++c) cert.sigma(r, c) = parse_rational(sigma[r][c].get<std::string>());
    }
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("sysnf: malformed certificate: ") + e.what());
  }
}

}  // namespace latdft::sysnf
