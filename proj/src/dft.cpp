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

#include "latdft/dft.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "latdft/error.hpp"
#include "latdft/kernels/kernels.hpp"
#include "latdft/parallel.hpp"

namespace latdft::dft {
namespace {

void require_member(const SysNFBasis& s, const ModVector& x, const char* what) {
  if (x.modulus() != s.small_modulus()) {
    throw ModulusMismatchError(std::string("dft: ") + what + " has modulus " +
                               std::to_string(x.modulus()));
  }
  if (x.size() != s.dimension()) {
    throw DimensionError(std::string("dft: ") + what + " has wrong dimension");
  }
  if (!sysnf::ln_membership(s, x)) {
    throw MembershipError(std::string("dft: ") + what + " is not a point of L_N");
  }
}

const std::array<Complex, 4> kFourthRoots{Complex(1, 0), Complex(0, -1), Complex(-1, 0),
                                          Complex(0, 1)};

double max_abs(const Eigen::MatrixXcd& m) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < m.size(); ++i) out = std::max(out, std::abs(m.data()[i]));
  return out;
}

}  // namespace

CharacterMatrix::CharacterMatrix(SysNFBasis basis, std::vector<ModVector> index,
                                 std::vector<Complex> entries)
    : basis_(std::move(basis)), index_(std::move(index)), entries_(std::move(entries)) {
  if (entries_.size() != index_.size() * index_.size()) {
    throw DimensionError("dft: character matrix entries do not match the index size");
  }
}

Eigen::MatrixXcd CharacterMatrix::to_eigen() const {
  const auto m = static_cast<Eigen::Index>(order());
  Eigen::MatrixXcd out(m, m);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < m; ++c) out(r, c) = entries_[r * m + c];
  }
  return out;
}

LatticeFunction zero_function(const SysNFBasis& s, std::size_t size_guard) {
  return {s, std::vector<Complex>(sysnf::ln_order(s, size_guard))};
}

Complex character(const SysNFBasis& s, const ModVector& x, const ModVector& z) {
  require_member(s, x, "x");
  require_member(s, z, "z");
  const std::int64_t n = s.small_modulus();
  const std::int64_t k = sysnf::inner_product_mod(x, z);
  if (k == 0) return {1.0, 0.0};
  return std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
}

CharacterMatrix dft_matrix(const SysNFBasis& s, std::size_t size_guard) {
  auto index = sysnf::enumerate_ln(s, size_guard);
  const std::size_t m = index.size();
  const std::int64_t n = s.small_modulus();
  const auto tw = kernels::twiddle_table(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  std::vector<Complex> entries(m * m);
  const auto& k = kernels::active();
  parallel_for(0, m, [&](std::size_t r) {
    std::vector<std::int64_t> phase(m);
    for (std::size_t c = 0; c < m; ++c) phase[c] = sysnf::inner_product_mod(index[r], index[c]);
    k.gather_twiddles(phase.data(), m, tw.data(), scale, entries.data() + r * m);
  });
  return CharacterMatrix(s, std::move(index), std::move(entries));
}

double unitarity_deviation(const CharacterMatrix& f) {
  const std::size_t m = f.order();
  // Column-major copy so each column of F is contiguous.
  std::vector<Complex> cols(m * m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) cols[c * m + r] = f(r, c);
  }
  std::vector<double> row_max(m, 0.0);
  const auto& k = kernels::active();
  parallel_for(0, m, [&](std::size_t i) {
    double worst = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      Complex g = k.dotc(cols.data() + i * m, cols.data() + j * m, m);
      if (i == j) g -= 1.0;
      worst = std::max(worst, std::abs(g));
    }
    row_max[i] = worst;
  });
  return m == 0 ? 0.0 : *std::max_element(row_max.begin(), row_max.end());
}

LatticeFunction apply_dft(const CharacterMatrix& f, const LatticeFunction& g) {
  if (!(g.basis == f.basis())) throw DimensionError("dft: function and matrix use different bases");
  if (g.values.size() != f.order()) {
    throw DimensionError("dft: function has " + std::to_string(g.values.size()) +
                         " values, expected " + std::to_string(f.order()));
  }
  // F is symmetric, so (F g)(x) = sum_z F(x, z) g(z) is a row-major matvec.
  LatticeFunction out{g.basis, std::vector<Complex>(f.order())};
  const std::size_t m = f.order();
  const auto& k = kernels::active();
  parallel_for(
      0, m,
      [&](std::size_t r) { k.matvec(f.entries().data() + r * m, 1, m, g.values.data(), &out.values[r]); },
      16);
  return out;
}

LatticeFunction apply_dft(const SysNFBasis& s, const LatticeFunction& g, std::size_t size_guard) {
  return apply_dft(dft_matrix(s, size_guard), g);
}

double check_shift_phase(const CharacterMatrix& f, const ModVector& v) {
  const SysNFBasis& s = f.basis();
  require_member(s, v, "v");
  const std::size_t m = f.order();
  const auto tw = kernels::twiddle_table(s.small_modulus());
  std::vector<std::size_t> shifted(m);
  std::vector<Complex> phase(m);
  for (std::size_t i = 0; i < m; ++i) {
    shifted[i] = sysnf::ln_index(s, f.index()[i] + v);
    phase[i] = tw[static_cast<std::size_t>(sysnf::inner_product_mod(v, f.index()[i]))];
  }
  std::vector<double> col_max(m, 0.0);
  parallel_for(0, m, [&](std::size_t x) {
    double worst = 0.0;
    for (std::size_t z = 0; z < m; ++z) {
      // (F U_v |x>)(z) = F(z, x + v); (W_v F |x>)(z) = phase(z) F(z, x).
      worst = std::max(worst, std::abs(f(z, shifted[x]) - phase[z] * f(z, x)));
    }
    col_max[x] = worst;
  });
  return m == 0 ? 0.0 : *std::max_element(col_max.begin(), col_max.end());
}

double check_shift_phase(const SysNFBasis& s, const ModVector& v, std::size_t size_guard) {
  return check_shift_phase(dft_matrix(s, size_guard), v);
}

FourthPowerReport check_fourth_power(const CharacterMatrix& f) {
  const Eigen::MatrixXcd m = f.to_eigen();
  const Eigen::MatrixXcd m2 = m * m;
  const auto order = static_cast<Eigen::Index>(f.order());
  Eigen::MatrixXcd negation = Eigen::MatrixXcd::Zero(order, order);
  for (Eigen::Index i = 0; i < order; ++i) {
    const auto j = static_cast<Eigen::Index>(sysnf::ln_index(f.basis(), -f.index()[i]));
    negation(j, i) = 1.0;
  }
  const Eigen::MatrixXcd m4 = m2 * m2;
  return {max_abs(m2 - negation), max_abs(m4 - Eigen::MatrixXcd::Identity(order, order))};
}

std::vector<Complex> spectrum(const CharacterMatrix& f) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(f.to_eigen(), false);
  if (solver.info() != Eigen::Success) throw Error("dft: eigenvalue computation did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double spectrum_deviation(const std::vector<Complex>& eigenvalues) {
  double worst = 0.0;
  for (const Complex& e : eigenvalues) {
    double best = std::abs(e - kFourthRoots[0]);
    for (const Complex& r : kFourthRoots) best = std::min(best, std::abs(e - r));
    worst = std::max(worst, best);
  }
  return worst;
}

std::vector<EigenSpace> eigen_explore(const CharacterMatrix& f) {
  const Eigen::MatrixXcd m = f.to_eigen();
  const auto order = static_cast<Eigen::Index>(f.order());
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(order, order);
  std::array<Eigen::MatrixXcd, 4> powers{id, m, m * m, Eigen::MatrixXcd()};
  powers[3] = powers[2] * m;
  std::vector<EigenSpace> out;
  for (const Complex& lambda : kFourthRoots) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(order, order);
    Complex coeff = 1.0;
    for (int j = 0; j < 4; ++j) {
      p += coeff * powers[j];
      coeff /= lambda;
    }
    p *= 0.25;
    // Exact projectors are Hermitian; symmetrize away rounding.
    p = 0.5 * (p + p.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(p);
    if (solver.info() != Eigen::Success) throw Error("dft: projector eigensolver failed");
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < order; ++i) {
      if (solver.eigenvalues()(i) > 0.5) keep.push_back(i);
    }
    EigenSpace space{lambda, keep.size(), Eigen::MatrixXcd(order, static_cast<Eigen::Index>(keep.size())),
                     0.0};
    for (std::size_t c = 0; c < keep.size(); ++c) {
      space.basis.col(static_cast<Eigen::Index>(c)) = solver.eigenvectors().col(keep[c]);
    }
    if (!keep.empty()) {
      const Eigen::MatrixXcd r = m * space.basis - lambda * space.basis;
      for (Eigen::Index c = 0; c < r.cols(); ++c) space.max_residual = std::max(space.max_residual, r.col(c).norm());
    }
    out.push_back(std::move(space));
  }
  return out;
}

std::size_t GridFunction::index_of(const ModVector& x) const {
  if (x.modulus() != modulus) throw ModulusMismatchError("dft: grid point has the wrong modulus");
  if (x.size() != dimension) throw DimensionError("dft: grid point has the wrong dimension");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < dimension; ++i) idx = idx * static_cast<std::size_t>(modulus) + static_cast<std::size_t>(x[i]);
  return idx;
}

double smoothness_estimate(const SysNFBasis& s, const GridFunction& fhat, std::size_t samples,
                           std::uint64_t seed) {
  const std::int64_t n = s.small_modulus();
  if (fhat.modulus != n || fhat.dimension != s.dimension()) {
    throw DimensionError("dft: grid function does not match the basis");
  }
  std::size_t expected = 1;
  for (std::size_t i = 0; i < fhat.dimension; ++i) expected *= static_cast<std::size_t>(n);
  if (fhat.values.size() != expected) throw DimensionError("dft: grid function has the wrong length");
  if (samples == 0) throw ParameterError("dft: smoothness estimate needs at least one sample");

  const auto points = sysnf::enumerate_ln(s, expected);
  auto coset_mass = [&](std::int64_t k) {
    std::vector<std::int64_t> shift(s.dimension(), 0);
    shift[0] = k;
    const ModVector v(n, shift);
    double acc = 0.0;
    for (const auto& x : points) acc += std::norm(fhat.values[fhat.index_of(x - v)]);
    return acc;
  };
  const double base = coset_mass(0);
  if (!(base > 0.0)) throw ZeroMassError("dft: fhat has no mass on L_N");

  std::mt19937_64 rng(seed);
  std::vector<std::int64_t> shifts(samples);
  for (auto& k : shifts) k = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n));
  std::vector<double> shortfall(samples);
  parallel_for(0, samples, [&](std::size_t i) { shortfall[i] = 1.0 - coset_mass(shifts[i]) / base; });
  return std::clamp(*std::max_element(shortfall.begin(), shortfall.end()), 0.0, 1.0);
}

void write_matrix_csv(const CharacterMatrix& f, std::ostream& out) {
  out.precision(17);
  out << "re,im\n";
  for (const Complex& e : f.entries()) out << e.real() << ',' << e.imag() << '\n';
}

nlohmann::json matrix_header(const CharacterMatrix& f) {
  nlohmann::json b = nlohmann::json::array();
  for (const auto& v : f.basis().b()) b.push_back(v.get_str());
  return {{"N", f.basis().modulus().get_str()},
          {"n", f.basis().dimension()},
          {"b", b},
          {"order", f.order()}};
}

void write_function_csv(const LatticeFunction& g, std::ostream& out) {
  const std::size_t dim = g.basis.dimension();
  for (std::size_t j = 2; j <= dim; ++j) out << 'x' << j << ',';
  out << "re,im\n";
  out.precision(17);
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    const ModVector x = sysnf::ln_point(g.basis, i);
    for (std::size_t j = 1; j < dim; ++j) out << x[j] << ',';
    out << g.values[i].real() << ',' << g.values[i].imag() << '\n';
  }
}

}  // namespace latdft::dft
