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


#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "latdft/error.hpp"
#include "latdft/intlat.hpp"
#include "latdft/selftest/oracles.hpp"
#include "support.hpp"

namespace latdft::intlat {
namespace {

using latdft::testing::euclid;
using latdft::testing::random_full_rank;
using latdft::testing::random_unimodular;
using latdft::testing::random_vector;

// Upper triangular, positive diagonal, 0 <= h(i, j) < h(i, i) right of it.
bool is_hnf(const ExactMatrix& h) {
  for (std::size_t i = 0; i < h.rows(); ++i) {
    if (h(i, i) <= 0) return false;
    for (std::size_t j = 0; j < h.cols(); ++j) {
      if (j < i && h(i, j) != 0) return false;
      if (j > i && (h(i, j) < 0 || h(i, j) >= h(i, i))) return false;
    }
  }
  return true;
}

ExactMatrix permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(p[i], i) = 1;
  return m;
}

TEST(Hnf, IdentityIsFixed) {
  const auto r = hnf(ExactMatrix::identity(3));
  EXPECT_EQ(r.H, ExactMatrix::identity(3));
  EXPECT_EQ(r.U, ExactMatrix::identity(3));
}

TEST(Hnf, TwoByTwo) {
  const ExactMatrix m{{2, 0}, {1, 1}};
  const auto r = hnf(m);
  EXPECT_TRUE(is_hnf(r.H));
  EXPECT_EQ(m * r.U, r.H);
  EXPECT_EQ(abs(determinant(r.U)), 1);
  EXPECT_EQ(abs(determinant(r.H)), 2);
}

TEST(Hnf, ColumnPermutationInvariance) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    const ExactMatrix m = random_full_rank(rng, 3, -5, 5);
    const auto a = hnf(m);
    const auto b = hnf(m * permutation(rng, 3));
    EXPECT_TRUE(is_hnf(a.H));
    EXPECT_EQ(a.H, b.H);
    EXPECT_EQ(m * a.U, a.H);
    EXPECT_EQ(abs(determinant(a.U)), 1);
  }
}

TEST(Hnf, UnimodularInvariance) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 3;
    const ExactMatrix m = random_full_rank(rng, n, -6, 6);
    EXPECT_EQ(hnf(m).H, hnf(m * random_unimodular(rng, n)).H);
  }
}

TEST(Hnf, RejectsDegenerateInput) {
  EXPECT_THROW(hnf(ExactMatrix{{1, 2}, {2, 4}}), RankError);
  EXPECT_THROW(hnf(ExactMatrix(2, 3)), RankError);
  ExactMatrix frac = ExactMatrix::identity(2);
  frac(0, 1) = Rational(1, 2);
  EXPECT_THROW(hnf(frac), ParameterError);
}

TEST(Determinant, Examples) {
  EXPECT_EQ(determinant(ExactMatrix::identity(4)), 1);
  EXPECT_EQ(determinant(ExactMatrix{{7, 2, 3}, {0, 1, 0}, {0, 0, 1}}), 7);
  EXPECT_EQ(determinant(ExactMatrix{{2, 1}, {0, 1}}), 2);
  EXPECT_EQ(determinant(ExactMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_THROW(determinant(ExactMatrix(3, 2)), RankError);
}

TEST(Determinant, PreservedByHnfAndLll) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 30; ++t) {
    const ExactMatrix m = random_full_rank(rng, 3, -9, 9);
    const Integer d = abs(determinant(m));
    EXPECT_EQ(abs(determinant(hnf(m).H)), d);
    EXPECT_EQ(abs(determinant(lll_reduce(m))), d);
  }
}

TEST(DualBasis, Examples) {
  EXPECT_EQ(dual_basis(ExactMatrix::identity(3)), ExactMatrix::identity(3));
  const ExactMatrix b{{5, 1}, {0, 1}};
  EXPECT_EQ(Rational(5) * dual_basis(b), (ExactMatrix{{1, 0}, {-1, 5}}));
  EXPECT_THROW(dual_basis(ExactMatrix{{1, 1}, {1, 1}}), RankError);
}

TEST(DualBasis, InverseTransposeIdentity) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 30; ++t) {
    const ExactMatrix b = random_full_rank(rng, 2 + t % 3, -8, 8);
    EXPECT_EQ(b * dual_basis(b).transpose(), ExactMatrix::identity(b.rows()));
    // <b_i, d_j> = delta_ij makes every dual vector integral on L(B).
    const ExactMatrix d = dual_basis(b);
    for (std::size_t j = 0; j < b.cols(); ++j)
      EXPECT_TRUE(is_integral(d.transpose() * b.column(j)));
  }
}

TEST(Membership, Examples) {
  const ExactMatrix b{{5, 1}, {0, 1}};
  EXPECT_TRUE(membership(b, RatVector{0, 0}));
  EXPECT_TRUE(membership(b, RatVector{3, 3}));
  EXPECT_FALSE(membership(b, RatVector{1, 0}));
  EXPECT_FALSE(membership(b, RatVector{Rational(1, 2), 0}));
  for (std::size_t j = 0; j < 2; ++j) EXPECT_TRUE(membership(b, b.column(j)));
}

TEST(Membership, AgreesWithCongruenceOracle) {
  const ExactMatrix b{{5, 1}, {0, 1}};
  for (long x = -7; x <= 7; ++x)
    for (long y = -7; y <= 7; ++y)
      EXPECT_EQ(membership(b, RatVector{x, y}), ((x - y) % 5 + 5) % 5 == 0) << x << "," << y;
}

TEST(Coefficients, RoundTrip) {
  std::mt19937_64 rng(15);
  const ExactMatrix b{{3, 1, 4}, {1, 5, 9}, {2, 6, 5}};
  EXPECT_EQ(coefficients_in_basis(b, b.column(0)), (IntVector{1, 0, 0}));
  for (int t = 0; t < 50; ++t) {
    const RatVector z = random_vector(rng, 3, 10);
    EXPECT_EQ(to_rational(coefficients_in_basis(b, b * z)), z);
  }
  EXPECT_THROW(coefficients_in_basis(ExactMatrix{{5, 1}, {0, 1}}, RatVector{1, 0}),
               MembershipError);
}

// The stated bound max|z_i| <= |v| det(B) on HNF bases, where the Cramer
// quotient adj(B)/det(B) stays small.
TEST(Coefficients, DeterminantBoundOnHnfBases) {
  std::mt19937_64 rng(16);
  int checked = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 2;
    const ExactMatrix h = hnf(random_full_rank(rng, n, -6, 6)).H;
    const double det = std::abs(determinant(h).get_d());
    const RatVector v = h * random_vector(rng, n, 10);
    if (sgn(squared_norm(v)) == 0) continue;
    for (const Integer& zi : coefficients_in_basis(h, v)) {
      EXPECT_LE(std::abs(zi.get_d()), euclid(v) * det + 1e-9);
    }
    ++checked;
  }
  EXPECT_GE(checked, 95);
}

// Cramer with Cauchy-Schwarz: |z_i| <= |adj(B)_i| |v| / |det B| on any basis.
TEST(Coefficients, AdjugateBoundOnArbitraryBases) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 3;
    const ExactMatrix b = random_full_rank(rng, n, -7, 7);
    const Rational det = rational_determinant(b);
    const ExactMatrix adj = det * inverse(b);
    const RatVector v = b * random_vector(rng, n, 10);
    const IntVector z = coefficients_in_basis(b, v);
    for (std::size_t i = 0; i < n; ++i) {
      const double bound = euclid(adj.row(i)) * euclid(v) / std::abs(det.get_d());
      EXPECT_LE(std::abs(z[i].get_d()), bound * (1 + 1e-12) + 1e-12);
    }
  }
}

// The determinant form of the bound fails for unimodular skewed bases.
TEST(Coefficients, DeterminantBoundCounterexample) {
  const ExactMatrix b{{5, 4}, {6, 5}};
  ASSERT_EQ(determinant(b), 1);
  const RatVector v{1, 0};
  EXPECT_EQ(coefficients_in_basis(b, v), (IntVector{5, -6}));
  EXPECT_GT(6.0, euclid(v) * 1.0);
}

TEST(GramSchmidt, ExactOrthogonalityAndReconstruction) {
  std::mt19937_64 rng(18);
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = 2 + t % 4;
    const ExactMatrix b = random_full_rank(rng, n, -9, 9);
    const GramSchmidtData gs = gram_schmidt(b);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(gs.squared_norms[i], squared_norm(gs.orthogonal[i]));
      for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(dot(gs.orthogonal[i], gs.orthogonal[j]), 0);
      RatVector r = gs.orthogonal[i];
      for (std::size_t j = 0; j < i; ++j)
        for (std::size_t k = 0; k < n; ++k) r[k] += gs.mu(i, j) * gs.orthogonal[j][k];
      EXPECT_EQ(r, b.column(i));
    }
  }
}

TEST(Lll, OrthogonalBasisUnchangedUpToSign) {
  const ExactMatrix b{{3, 0, 0}, {0, 5, 0}, {0, 0, 7}};
  const ExactMatrix r = lll_reduce(b);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_EQ(squared_norm(r.column(j)), squared_norm(b.column(j)));
    EXPECT_EQ(abs(dot(r.column(j), b.column(j))), squared_norm(b.column(j)));
  }
}

TEST(Lll, SkewedBasisAgainstBruteForce) {
  const std::vector<ExactMatrix> cases = {ExactMatrix{{1, 10}, {0, 1}},
                                          ExactMatrix{{1, 100}, {0, 1}},
                                          ExactMatrix{{7, 51}, {3, 22}},
                                          ExactMatrix{{13, 101}, {1, 8}}};
  for (const auto& b : cases) {
    const ExactMatrix r = lll_reduce(b);
    EXPECT_TRUE(is_lll_reduced(r));
    EXPECT_EQ(hnf(r).H, hnf(b).H);
    const double first = euclid(r.column(0));
    const double input_min = std::min(euclid(b.column(0)), euclid(b.column(1)));
    EXPECT_LE(first, input_min + 1e-12);
    const double lambda1 = brute_force_svp(b, 20).distance();
    EXPECT_LE(first, std::sqrt(2.0) * lambda1 + 1e-12);
  }
}

TEST(Lll, RandomBasesReducedAndSameLattice) {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 4;
    const ExactMatrix b = random_full_rank(rng, n, -30, 30);
    const ExactMatrix r = lll_reduce(b);
    EXPECT_TRUE(is_lll_reduced(r));
    EXPECT_EQ(hnf(r).H, hnf(b).H);
    const GramSchmidtData gs = gram_schmidt(r);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) EXPECT_LE(abs(gs.mu(i, j)), Rational(1, 2));
  }
  EXPECT_FALSE(is_lll_reduced(ExactMatrix{{1, 10}, {0, 1}}));
}

TEST(NearestPlane, LatticePointIsFixed) {
  const ExactMatrix b = lll_reduce(ExactMatrix{{5, 1}, {0, 1}});
  for (long z1 = -3; z1 <= 3; ++z1)
    for (long z2 = -3; z2 <= 3; ++z2) {
      const RatVector u = b * RatVector{z1, z2};
      EXPECT_EQ(nearest_plane(b, u), u);
    }
}

TEST(NearestPlane, WithinBabaiFactorOfBruteForce) {
  const ExactMatrix b = lll_reduce(ExactMatrix{{5, 1}, {0, 1}});
  const RatVector u{Rational(12, 5), Rational(13, 5)};
  const RatVector v = nearest_plane(b, u);
  EXPECT_TRUE(membership(b, v));
  const CvpResult best = brute_force_cvp(b, u, 10);
  RatVector diff = u;
  for (std::size_t i = 0; i < 2; ++i) diff[i] -= v[i];
  EXPECT_LE(squared_norm(diff), 4 * best.squared_distance);
}

TEST(NearestPlane, RandomInstancesAgainstOracle) {
  std::mt19937_64 rng(20);
  std::uniform_int_distribution<long> num(-400, 400);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 2;
    const ExactMatrix b = lll_reduce(random_full_rank(rng, n, -9, 9));
    RatVector u(n);
    for (auto& x : u) x = Rational(num(rng), 7);
    const RatVector v = nearest_plane(b, u);
    ASSERT_TRUE(membership(b, v));
    RatVector diff = u;
    for (std::size_t i = 0; i < n; ++i) diff[i] -= v[i];
    // Exact CVP from an independent enumeration centred on the Babai point.
    const Rational best =
        oracles::cvp_squared_distance(b, u, coefficients_in_basis(b, v), 12);
    EXPECT_LE(squared_norm(diff), Rational(1L << n) * best);
  }
}

TEST(NearestPlane, SmallPerturbationRecovered) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + t % 3;
    const ExactMatrix b = lll_reduce(random_full_rank(rng, n, -9, 9));
    const double lambda1 = brute_force_svp(b, 4).distance();
    const double radius = lambda1 / std::pow(2.0, n / 2.0 + 1.0);
    const RatVector point = b * random_vector(rng, n, 20);
    RatVector u = point;
    for (auto& x : u) x += Rational(unit(rng) * 0.99 * radius / std::sqrt(double(n)));
    EXPECT_EQ(nearest_plane(b, u), point);
  }
}

TEST(BruteForce, CvpBasics) {
  const ExactMatrix b{{5, 1}, {0, 1}};
  const CvpResult r = brute_force_cvp(b, RatVector{0, 0}, 3);
  EXPECT_EQ(r.squared_distance, 0);
  EXPECT_EQ(r.vector, (RatVector{0, 0}));
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<long> num(-300, 300);
  for (int t = 0; t < 20; ++t) {
    const RatVector u{Rational(num(rng), 3), Rational(num(rng), 3)};
    Rational prev = brute_force_cvp(b, u, 1).squared_distance;
    for (long k = 2; k <= 12; k += 2) {
      const Rational cur = brute_force_cvp(b, u, k).squared_distance;
      EXPECT_LE(cur, prev);
      prev = cur;
    }
  }
}

TEST(BruteForce, ShortestVector) {
  EXPECT_DOUBLE_EQ(brute_force_svp(ExactMatrix{{2, 1}, {0, 1}}, 5).distance(), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(shortest_vector_length(ExactMatrix{{5, 1}, {0, 1}}), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(shortest_vector_length(ExactMatrix::identity(3)), 1.0);
}

}  // namespace
}  // namespace latdft::intlat
