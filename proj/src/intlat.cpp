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

#include "latdft/intlat.hpp"

#include <cmath>
#include <utility>

#include "latdft/error.hpp"

namespace latdft::intlat {
namespace {

void require_square(const ExactMatrix& m, const char* op) {
  if (m.empty() || !m.is_square())
    throw RankError(std::string("intlat: ") + op + " needs a non-empty square matrix");
}

void require_integral(const ExactMatrix& m, const char* op) {
  if (!m.is_integral())
    throw ParameterError(std::string("intlat: ") + op + " needs an integer matrix");
}

// Enumerates every z in [-bound, bound]^n in lexicographic order.
template <typename Fn>
void for_each_coefficient(std::size_t n, long bound, Fn&& fn) {
  std::vector<long> z(n, -bound);
  while (true) {
    fn(z);
    std::size_t k = 0;
    while (k < n && z[k] == bound) z[k++] = -bound;
    if (k == n) return;
    ++z[k];
  }
}

}  // namespace

HnfResult hnf(const ExactMatrix& m) {
  require_square(m, "hnf");
  require_integral(m, "hnf");
  const std::size_t n = m.rows();
  if (sgn(rational_determinant(m)) == 0) throw RankError("intlat: hnf of a singular matrix");

  ExactMatrix h = m;
  ExactMatrix u = ExactMatrix::identity(n);
  // Bottom-up: clear row i left of the diagonal with extended-gcd column
  // steps, then reduce the entries right of the diagonal modulo the pivot.
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = 0; j < ii; ++j) {
      if (sgn(h(ii, j)) == 0) continue;
      Integer a = h(ii, ii).get_num();
      Integer b = h(ii, j).get_num();
      Integer g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      const Rational ag = Rational(a / g), bg = Rational(b / g);
      for (ExactMatrix* w : {&h, &u}) {
        for (std::size_t r = 0; r < n; ++r) {
          Rational ci = (*w)(r, ii), cj = (*w)(r, j);
          (*w)(r, ii) = Rational(x) * ci + Rational(y) * cj;
          (*w)(r, j) = -bg * ci + ag * cj;
        }
      }
    }
    if (sgn(h(ii, ii)) < 0) {
      h.negate_column(ii);
      u.negate_column(ii);
    }
    for (std::size_t j = ii + 1; j < n; ++j) {
      Integer q = floor_of(h(ii, j) / h(ii, ii));
      if (q != 0) {
        h.add_column_multiple(j, ii, Rational(-q));
        u.add_column_multiple(j, ii, Rational(-q));
      }
    }
  }
  return {std::move(h), std::move(u)};
}

Integer determinant(const ExactMatrix& m) {
  require_square(m, "determinant");
  require_integral(m, "determinant");
  return rational_determinant(m).get_num();
}

ExactMatrix dual_basis(const ExactMatrix& b) {
  require_square(b, "dual_basis");
  return inverse(b).transpose();
}

bool membership(const ExactMatrix& b, const RatVector& v) {
  require_square(b, "membership");
  return is_integral(solve(b, v));
}

bool membership(const ExactMatrix& b, const IntVector& v) {
  return membership(b, to_rational(v));
}

IntVector coefficients_in_basis(const ExactMatrix& b, const RatVector& v) {
  require_square(b, "coefficients_in_basis");
  RatVector z = solve(b, v);
  if (!is_integral(z)) throw MembershipError("intlat: vector is not in the lattice");
  return to_integer(z);
}

IntVector coefficients_in_basis(const ExactMatrix& b, const IntVector& v) {
  return coefficients_in_basis(b, to_rational(v));
}

GramSchmidtData gram_schmidt(const ExactMatrix& b) {
  require_square(b, "gram_schmidt");
  const std::size_t n = b.cols();
  GramSchmidtData gs;
  gs.mu = ExactMatrix::identity(n);
  gs.orthogonal.reserve(n);
  gs.squared_norms.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    RatVector bi = b.column(i);
    RatVector v = bi;
    for (std::size_t j = 0; j < i; ++j) {
      Rational mu = dot(bi, gs.orthogonal[j]) / gs.squared_norms[j];
      gs.mu(i, j) = mu;
      if (sgn(mu) == 0) continue;
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= mu * gs.orthogonal[j][k];
    }
    Rational nn = squared_norm(v);
    if (sgn(nn) == 0) throw RankError("intlat: linearly dependent basis");
    gs.orthogonal.push_back(std::move(v));
    gs.squared_norms.push_back(std::move(nn));
  }
  return gs;
}

ExactMatrix lll_reduce(const ExactMatrix& b, const Rational& delta) {
  require_square(b, "lll_reduce");
  if (delta <= Rational(1, 4) || delta >= 1)
    throw ParameterError("intlat: LLL delta must lie in (1/4, 1)");
  const std::size_t n = b.cols();
  ExactMatrix basis = b;
  GramSchmidtData gs = gram_schmidt(basis);
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t jj = k; jj-- > 0;) {
      Integer q = round_half_away(gs.mu(k, jj));
      if (q == 0) continue;
      const Rational qr(q);
      basis.add_column_multiple(k, jj, -qr);
      for (std::size_t l = 0; l < jj; ++l) gs.mu(k, l) -= qr * gs.mu(jj, l);
      gs.mu(k, jj) -= qr;
    }
    const Rational& m = gs.mu(k, k - 1);
    if (gs.squared_norms[k] >= (delta - m * m) * gs.squared_norms[k - 1]) {
      ++k;
    } else {
      basis.swap_columns(k, k - 1);
      gs = gram_schmidt(basis);
      k = k > 1 ? k - 1 : 1;
    }
  }
  return basis;
}

bool is_lll_reduced(const ExactMatrix& b, const Rational& delta) {
  GramSchmidtData gs = gram_schmidt(b);
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (abs(gs.mu(i, j)) > Rational(1, 2)) return false;
    }
    if (i > 0) {
      const Rational& m = gs.mu(i, i - 1);
      if (gs.squared_norms[i] < (delta - m * m) * gs.squared_norms[i - 1]) return false;
    }
  }
  return true;
}

RatVector nearest_plane(const ExactMatrix& b, const RatVector& u) {
  require_square(b, "nearest_plane");
  return nearest_plane(b, gram_schmidt(b), u);
}

RatVector nearest_plane(const ExactMatrix& b, const GramSchmidtData& gs, const RatVector& u) {
  if (u.size() != b.rows()) throw DimensionError("intlat: nearest_plane target length mismatch");
  if (gs.orthogonal.size() != b.cols()) throw DimensionError("intlat: Gram-Schmidt data mismatch");
  RatVector w = u;
  for (std::size_t ii = b.cols(); ii-- > 0;) {
    Integer c = round_half_away(dot(w, gs.orthogonal[ii]) / gs.squared_norms[ii]);
    if (c == 0) continue;
    const Rational cr(c);
    for (std::size_t r = 0; r < w.size(); ++r) w[r] -= cr * b(r, ii);
  }
  RatVector v(u.size());
  for (std::size_t r = 0; r < u.size(); ++r) v[r] = u[r] - w[r];
  return v;
}

double CvpResult::distance() const { return std::sqrt(squared_distance.get_d()); }

CvpResult brute_force_cvp(const ExactMatrix& b, const RatVector& u, long coeff_bound) {
  require_square(b, "brute_force_cvp");
  if (u.size() != b.rows()) throw DimensionError("intlat: brute_force_cvp target length mismatch");
  if (coeff_bound < 0) throw ParameterError("intlat: negative coefficient bound");
  const std::size_t n = b.cols();
  CvpResult best;
  bool have = false;
  for_each_coefficient(n, coeff_bound, [&](const std::vector<long>& z) {
    RatVector v(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (z[j] == 0) continue;
      for (std::size_t r = 0; r < n; ++r) v[r] += b(r, j) * z[j];
    }
    Rational d = 0;
    for (std::size_t r = 0; r < n; ++r) {
      Rational e = u[r] - v[r];
      d += e * e;
    }
    if (!have || d < best.squared_distance) {
      have = true;
      best.squared_distance = d;
      best.vector = std::move(v);
      best.coefficients.assign(z.begin(), z.end());
    }
  });
  return best;
}

CvpResult brute_force_svp(const ExactMatrix& b, long coeff_bound) {
  require_square(b, "brute_force_svp");
  if (coeff_bound < 1) throw ParameterError("intlat: SVP needs a coefficient bound >= 1");
  const std::size_t n = b.cols();
  CvpResult best;
  bool have = false;
  for_each_coefficient(n, coeff_bound, [&](const std::vector<long>& z) {
    bool zero = true;
    for (long c : z) zero = zero && c == 0;
    if (zero) return;
    RatVector v(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (z[j] == 0) continue;
      for (std::size_t r = 0; r < n; ++r) v[r] += b(r, j) * z[j];
    }
    Rational d = squared_norm(v);
    if (!have || d < best.squared_distance) {
      have = true;
      best.squared_distance = d;
      best.vector = std::move(v);
      best.coefficients.assign(z.begin(), z.end());
    }
  });
  return best;
}

double shortest_vector_length(const ExactMatrix& b, long coeff_bound) {
  return brute_force_svp(lll_reduce(b), coeff_bound).distance();
}

}  // namespace latdft::intlat
