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


#ifndef LATDFT_TESTS_UNIT_SUPPORT_HPP_
#define LATDFT_TESTS_UNIT_SUPPORT_HPP_

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "latdft/exact.hpp"
#include "latdft/intlat.hpp"

namespace latdft::testing {

inline ExactMatrix random_integer_matrix(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

inline ExactMatrix random_full_rank(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  while (true) {
    ExactMatrix m = random_integer_matrix(rng, n, lo, hi);
    if (sgn(rational_determinant(m)) != 0) return m;
  }
}

// Product of random elementary column operations.
inline ExactMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 12) {
  ExactMatrix u = ExactMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<long> k(-3, 3);
  for (int s = 0; s < steps; ++s) {
    const std::size_t a = pick(rng), b = pick(rng);
    if (a == b) {
      u.negate_column(a);
    } else {
      u.add_column_multiple(a, b, Rational(k(rng)));
    }
  }
  return u;
}

inline RatVector random_vector(std::mt19937_64& rng, std::size_t n, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  RatVector v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

inline double euclid(const RatVector& v) { return std::sqrt(squared_norm(v).get_d()); }

inline std::vector<std::complex<double>> random_amplitudes(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<std::complex<double>> v(n);
  double s = 0.0;
  for (auto& c : v) {
    c = {g(rng), g(rng)};
    s += std::norm(c);
  }
  for (auto& c : v) c /= std::sqrt(s);
  return v;
}

}  // namespace latdft::testing

#endif  // LATDFT_TESTS_UNIT_SUPPORT_HPP_
