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

#ifndef LATDFT_EXACT_HPP_
#define LATDFT_EXACT_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace latdft {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

// Dense row-major matrix of arbitrary-precision rationals. Bases are stored
// column-wise: the lattice of B is { B z : z integer }.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);
  ExactMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_rows(const std::vector<RatVector>& rows);
  static ExactMatrix from_columns(const std::vector<RatVector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  RatVector column(std::size_t j) const;
  RatVector row(std::size_t i) const;
  void set_column(std::size_t j, const RatVector& v);

  // Column operations used by the normal-form algorithms.
  void swap_columns(std::size_t a, std::size_t b);
  void negate_column(std::size_t j);
  // col[dst] += k * col[src]
  void add_column_multiple(std::size_t dst, std::size_t src, const Rational& k);

  bool is_integral() const;
  ExactMatrix transpose() const;

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator*(const Rational& k, const ExactMatrix& a);
  RatVector operator*(const RatVector& v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Rational dot(const RatVector& a, const RatVector& b);
Rational squared_norm(const RatVector& v);
RatVector to_rational(const IntVector& v);
RatVector to_rational(const std::vector<std::int64_t>& v);
// Throws ParameterError if an entry is not an integer.
IntVector to_integer(const RatVector& v);
bool is_integral(const RatVector& v);

// Round half away from zero.
Integer round_half_away(const Rational& x);
Integer floor_of(const Rational& x);
Integer ceil_of(const Rational& x);

// Throws SizeGuardError if the value does not fit.
std::int64_t to_int64(const Integer& x);

// Gauss-Jordan over the rationals. Throw RankError on singular input.
ExactMatrix inverse(const ExactMatrix& m);
RatVector solve(const ExactMatrix& m, const RatVector& rhs);
Rational rational_determinant(const ExactMatrix& m);

// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& x);
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

// Text format: "rows cols" on the first line, then one line per row with
// entries separated by single spaces. Entries are integers or "p/q".
ExactMatrix parse_matrix(std::istream& in);
ExactMatrix parse_matrix(std::string_view text);
ExactMatrix read_matrix_file(const std::string& path);
std::string format_matrix(const ExactMatrix& m);

}  // namespace latdft

#endif  // LATDFT_EXACT_HPP_
