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


#include <cmath>
#include <complex>
#include <array>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "latdft/dft.hpp"
#include "latdft/error.hpp"
#include "latdft/selftest/oracles.hpp"
#include "support.hpp"

namespace latdft::dft {
namespace {

using sysnf::make_basis;

std::vector<SysNFBasis> small_instances() {
  return {make_basis(5, {1}),    make_basis(2, {0}),    make_basis(6, {2}),
          make_basis(9, {2}),    make_basis(11, {3}),   make_basis(3, {0, 1}),
          make_basis(5, {1, 2}), make_basis(7, {1, 2}), make_basis(4, {0, 2}),
          make_basis(3, {1, 1, 1})};
}

oracles::Instance as_instance(const SysNFBasis& s) { return {s.small_modulus(), s.small_b()}; }

double l2(const std::vector<Complex>& v) {
  double acc = 0.0;
  for (const auto& c : v) acc += std::norm(c);
  return std::sqrt(acc);
}

TEST(Character, Examples) {
  const SysNFBasis s = make_basis(5, {1});
  const ModVector zero(5, {0, 0}), x(5, {1, 1}), y(5, {3, 3});
  EXPECT_EQ(character(s, zero, x), Complex(1.0, 0.0));
  EXPECT_EQ(character(s, x, zero), Complex(1.0, 0.0));
  EXPECT_LE(std::abs(character(s, x, x) - std::polar(1.0, -4.0 * std::numbers::pi / 5.0)), 1e-15);
  EXPECT_EQ(character(s, x, y), character(s, y, x));
  EXPECT_THROW(character(s, ModVector(5, {1, 0}), x), MembershipError);
  EXPECT_THROW(character(s, ModVector(7, {1, 1}), x), ModulusMismatchError);
  EXPECT_THROW(character(s, ModVector(5, {1, 1, 1}), x), DimensionError);
}

TEST(DftMatrix, MatchesCharacterOracle) {
  for (const auto& s : small_instances()) {
    const CharacterMatrix f = dft_matrix(s);
    const auto want = oracles::character_matrix(as_instance(s));
    ASSERT_EQ(f.order(), want.size());
    const double mag = 1.0 / std::sqrt(static_cast<double>(f.order()));
    for (std::size_t r = 0; r < f.order(); ++r) {
      for (std::size_t c = 0; c < f.order(); ++c) {
        EXPECT_LE(std::abs(f(r, c) - want[r][c]), 1e-14);
        EXPECT_NEAR(std::abs(f(r, c)), mag, 1e-12);
      }
    }
    EXPECT_LE(unitarity_deviation(f), 1e-12);
  }
}

TEST(DftMatrix, ZeroRowIsTensorDft) {
  const SysNFBasis s = make_basis(4, {0, 0});
  const CharacterMatrix f = dft_matrix(s);
  ASSERT_EQ(f.order(), 16u);
  for (std::size_t r = 0; r < 16; ++r) {
    for (std::size_t c = 0; c < 16; ++c) {
      const auto& x = f.index()[r];
      const auto& z = f.index()[c];
      const Complex want = oracles::root(x[1] * z[1], 4) * oracles::root(x[2] * z[2], 4) / 4.0;
      EXPECT_LE(std::abs(f(r, c) - want), 1e-15);
    }
  }
}

TEST(DftMatrix, SharedFactorIsNotUnitary) {
  const SysNFBasis bad = SysNFBasis::unchecked(4, {1});
  const CharacterMatrix f = dft_matrix(bad);
  EXPECT_GE(unitarity_deviation(f), 0.5);
  // Rows of (0,0) and (2,2) coincide.
  for (std::size_t c = 0; c < 4; ++c) EXPECT_LE(std::abs(f(0, c) - f(2, c)), 1e-15);
}

TEST(DftMatrix, SizeGuard) {
  EXPECT_THROW(dft_matrix(make_basis(65, {0, 0})), SizeGuardError);
  EXPECT_NO_THROW(dft_matrix(make_basis(64, {0, 0})));
}

TEST(ApplyDft, DeltaAndConstant) {
  for (const auto& s : small_instances()) {
    const CharacterMatrix f = dft_matrix(s);
    const double m = static_cast<double>(f.order());
    LatticeFunction delta = zero_function(s);
    delta.values[0] = 1.0;
    const LatticeFunction a = apply_dft(f, delta);
    for (const auto& v : a.values) EXPECT_LE(std::abs(v - 1.0 / std::sqrt(m)), 1e-14);

    LatticeFunction constant{s, std::vector<Complex>(f.order(), 1.0)};
    const LatticeFunction b = apply_dft(f, constant);
    EXPECT_LE(std::abs(b.values[0] - std::sqrt(m)), 1e-12);
    for (std::size_t i = 1; i < b.values.size(); ++i) EXPECT_LE(std::abs(b.values[i]), 1e-12);
  }
}

TEST(ApplyDft, MatchesFullGridOracle) {
  std::mt19937_64 rng(41);
  for (const auto& s : small_instances()) {
    const CharacterMatrix f = dft_matrix(s);
    LatticeFunction g{s, testing::random_amplitudes(rng, f.order())};
    const auto got = apply_dft(f, g).values;
    const auto want = oracles::full_grid_dft_restricted(as_instance(s), g.values);
    std::vector<Complex> diff(got.size());
    for (std::size_t i = 0; i < got.size(); ++i) diff[i] = got[i] - want[i];
    EXPECT_LE(l2(diff) / l2(want), 1e-10);
    EXPECT_EQ(apply_dft(s, g).values, got);
    EXPECT_NEAR(l2(got), 1.0, 1e-12);
  }
}

TEST(ApplyDft, Errors) {
  const SysNFBasis s = make_basis(5, {1});
  const CharacterMatrix f = dft_matrix(s);
  LatticeFunction wrong_len{s, std::vector<Complex>(4)};
  EXPECT_THROW(apply_dft(f, wrong_len), DimensionError);
  EXPECT_THROW(apply_dft(f, zero_function(make_basis(5, {4}))), DimensionError);
}

TEST(ShiftPhase, Examples) {
  const SysNFBasis s = make_basis(5, {1});
  const CharacterMatrix f = dft_matrix(s);
  EXPECT_EQ(check_shift_phase(f, ModVector(5, {0, 0})), 0.0);
  EXPECT_LE(check_shift_phase(f, ModVector(5, {1, 1})), 1e-10);
  EXPECT_THROW(check_shift_phase(f, ModVector(5, {1, 0})), MembershipError);

  const SysNFBasis s3 = make_basis(7, {1, 2});
  std::mt19937_64 rng(42);
  const auto pts = sysnf::enumerate_ln(s3);
  for (int t = 0; t < 10; ++t) EXPECT_LE(check_shift_phase(s3, pts[rng() % pts.size()]), 1e-10);
}

TEST(ShiftPhase, ExhaustiveSmallInstances) {
  for (const auto& s : small_instances()) {
    if (s.dimension() > 2 && s.small_modulus() > 5) continue;
    const CharacterMatrix f = dft_matrix(s);
    for (const auto& v : f.index()) EXPECT_LE(check_shift_phase(f, v), 1e-10);
  }
}

TEST(FourthPower, Examples) {
  for (const auto& s : small_instances()) {
    const FourthPowerReport r = check_fourth_power(dft_matrix(s));
    EXPECT_LE(r.f2_vs_negation, 1e-10);
    EXPECT_LE(r.f4_vs_identity, 1e-10);
  }
}

TEST(Spectrum, FourthRootsOfUnity) {
  for (const auto& s : small_instances()) {
    const auto ev = spectrum(dft_matrix(s));
    EXPECT_EQ(ev.size(), dft_matrix(s).order());
    EXPECT_LE(spectrum_deviation(ev), 1e-8);
  }
}

// Eigenvalue multiplicities of the one-dimensional unitary DFT mod N from a
// plain eigensolver, keyed by k for the eigenvalue (-i)^k.
std::array<std::size_t, 4> classical_multiplicities(std::int64_t n) {
  Eigen::MatrixXcd f(n, n);
  for (std::int64_t r = 0; r < n; ++r)
    for (std::int64_t c = 0; c < n; ++c) f(r, c) = oracles::root(r * c, n) / std::sqrt(double(n));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(f);
  std::array<std::size_t, 4> m{};
  const Complex roots[4] = {1.0, Complex(0, -1), -1.0, Complex(0, 1)};
  for (Eigen::Index i = 0; i < n; ++i)
    for (int k = 0; k < 4; ++k)
      if (std::abs(es.eigenvalues()[i] - roots[k]) < 1e-6) ++m[k];
  return m;
}

int quarter_turns(Complex lambda) {
  const Complex roots[4] = {1.0, Complex(0, -1), -1.0, Complex(0, 1)};
  for (int k = 0; k < 4; ++k)
    if (std::abs(lambda - roots[k]) < 1e-6) return k;
  return -1;
}

TEST(EigenExplore, ZeroRowMatchesClassicalPattern) {
  for (std::int64_t n : {2, 3, 4, 5, 6, 7, 8, 12}) {
    for (std::size_t dim : {2u, 3u}) {
      if (dim == 3 && n > 6) continue;
      const SysNFBasis s = make_basis(n, std::vector<std::int64_t>(dim - 1, 0));
      const auto spaces = eigen_explore(dft_matrix(s));
      // Tensor powers multiply eigenvalues, so multiplicities convolve mod 4.
      std::array<std::size_t, 4> want = classical_multiplicities(n);
      for (std::size_t d = 2; d < dim; ++d) {
        const auto one = classical_multiplicities(n);
        std::array<std::size_t, 4> next{};
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) next[(a + b) % 4] += want[a] * one[b];
        want = next;
      }
      std::array<std::size_t, 4> got{};
      for (const auto& e : spaces) {
        const int k = quarter_turns(e.eigenvalue);
        ASSERT_GE(k, 0);
        got[k] += e.multiplicity;
      }
      EXPECT_EQ(got, want) << "N=" << n << " n=" << dim;
    }
  }
}

TEST(EigenExplore, ResidualsAndCompleteness) {
  for (const auto& s : small_instances()) {
    const CharacterMatrix f = dft_matrix(s);
    const Eigen::MatrixXcd fm = f.to_eigen();
    std::size_t total = 0;
    for (const auto& e : eigen_explore(f)) {
      EXPECT_EQ(static_cast<std::size_t>(e.basis.cols()), e.multiplicity);
      EXPECT_LE(e.max_residual, 1e-8);
      total += e.multiplicity;
      if (e.multiplicity == 0) continue;
      const Eigen::MatrixXcd r = fm * e.basis - e.eigenvalue * e.basis;
      EXPECT_LE(r.cwiseAbs().maxCoeff(), 1e-8);
      const Eigen::MatrixXcd gram = e.basis.adjoint() * e.basis;
      EXPECT_LE((gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff(),
                1e-8);
    }
    EXPECT_EQ(total, f.order());
  }
}

GridFunction grid_function(std::int64_t n, std::size_t dim, const std::function<Complex(const ModVector&)>& fn) {
  GridFunction g{n, dim, {}};
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) total *= static_cast<std::size_t>(n);
  g.values.resize(total);
  for (const auto& c : oracles::grid(n, dim)) {
    const ModVector x(n, c);
    g.values[g.index_of(x)] = fn(x);
  }
  return g;
}

TEST(Smoothness, Examples) {
  const SysNFBasis s = make_basis(8, {2});
  const auto constant = grid_function(8, 2, [](const ModVector&) { return Complex(1.0); });
  EXPECT_EQ(smoothness_estimate(s, constant, 32, 1), 0.0);

  const auto wide = grid_function(8, 2, [](const ModVector& x) {
    double q = 0.0;
    for (auto c : x.centered()) q += double(c) * double(c);
    return Complex(std::exp(-std::numbers::pi * q / 36.0));
  });
  EXPECT_LT(smoothness_estimate(s, wide, 32, 1), 0.1);

  const auto delta = grid_function(8, 2, [](const ModVector& x) {
    return Complex(x == ModVector(8, {0, 0}) ? 1.0 : 0.0);
  });
  EXPECT_NEAR(smoothness_estimate(s, delta, 32, 1), 1.0, 1e-12);

  const auto zero = grid_function(8, 2, [](const ModVector&) { return Complex(0.0); });
  EXPECT_THROW(smoothness_estimate(s, zero, 8, 1), ZeroMassError);
  EXPECT_THROW(smoothness_estimate(s, grid_function(8, 3, [](const ModVector&) { return Complex(1.0); }), 8, 1),
               DimensionError);
  EXPECT_EQ(smoothness_estimate(s, wide, 16, 99), smoothness_estimate(s, wide, 16, 99));
}

TEST(Export, CsvLayout) {
  const SysNFBasis s = make_basis(5, {1});
  const CharacterMatrix f = dft_matrix(s);
  std::ostringstream out;
  write_matrix_csv(f, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "re,im");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    ASSERT_NE(comma, std::string::npos);
    const Complex v(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    EXPECT_EQ(v, f.entries()[rows]);
    ++rows;
  }
  EXPECT_EQ(rows, 25u);

  const auto h = matrix_header(f);
  EXPECT_EQ(h["N"], "5");
  EXPECT_EQ(h["n"], 2);
  EXPECT_EQ(h["order"], 5);
  EXPECT_EQ(h["b"], nlohmann::json::array({"1"}));

  std::ostringstream fn;
  LatticeFunction g = zero_function(s);
  g.values[3] = Complex(0.5, -0.25);
  write_function_csv(g, fn);
  EXPECT_EQ(fn.str(), "x2,re,im\n0,0,0\n1,0,0\n2,0,0\n3,0.5,-0.25\n4,0,0\n");
}

}  // namespace
}  // namespace latdft::dft
