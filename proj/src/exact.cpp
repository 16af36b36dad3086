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

#include "latdft/exact.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include "latdft/error.hpp"

namespace latdft {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("exact: ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<RatVector>& rows) {
  if (rows.empty()) return {};
  ExactMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw DimensionError("exact: ragged rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

ExactMatrix ExactMatrix::from_columns(const std::vector<RatVector>& cols) {
  if (cols.empty()) return {};
  ExactMatrix m(cols[0].size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  return m;
}

RatVector ExactMatrix::column(std::size_t j) const {
  RatVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

RatVector ExactMatrix::row(std::size_t i) const {
  return RatVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void ExactMatrix::set_column(std::size_t j, const RatVector& v) {
  if (v.size() != rows_) throw DimensionError("exact: column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

void ExactMatrix::swap_columns(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void ExactMatrix::negate_column(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

void ExactMatrix::add_column_multiple(std::size_t dst, std::size_t src,
                                      const Rational& k) {
  if (sgn(k) == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (sgn((*this)(i, src)) != 0) (*this)(i, dst) += k * (*this)(i, src);
  }
}

bool ExactMatrix::is_integral() const {
  for (const auto& x : data_) {
    if (x.get_den() != 1) return false;
  }
  return true;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("exact: product dimension mismatch");
  ExactMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (sgn(b(k, j)) != 0) c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw DimensionError("exact: sum dimension mismatch");
  ExactMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
  return c;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw DimensionError("exact: difference dimension mismatch");
  ExactMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
  return c;
}

ExactMatrix operator*(const Rational& k, const ExactMatrix& a) {
  ExactMatrix c = a;
  for (auto& x : c.data_) x *= k;
  return c;
}

RatVector ExactMatrix::operator*(const RatVector& v) const {
  if (v.size() != cols_) throw DimensionError("exact: matrix-vector mismatch");
  RatVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (sgn((*this)(i, j)) != 0 && sgn(v[j]) != 0) acc += (*this)(i, j) * v[j];
    }
    out[i] = acc;
  }
  return out;
}

Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw DimensionError("exact: dot length mismatch");
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

Rational squared_norm(const RatVector& v) { return dot(v, v); }

RatVector to_rational(const IntVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

RatVector to_rational(const std::vector<std::int64_t>& v) {
  RatVector out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

bool is_integral(const RatVector& v) {
  for (const auto& x : v) {
    if (x.get_den() != 1) return false;
  }
  return true;
}

IntVector to_integer(const RatVector& v) {
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (x.get_den() != 1) throw ParameterError("exact: entry " + to_string(x) + " is not an integer");
    out.push_back(x.get_num());
  }
  return out;
}

Integer floor_of(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer ceil_of(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer round_half_away(const Rational& x) {
  Rational a = abs(x) + Rational(1, 2);
  Integer r = floor_of(a);
  return sgn(x) < 0 ? Integer(-r) : r;
}

std::int64_t to_int64(const Integer& x) {
  if (!x.fits_slong_p() || sizeof(long) < sizeof(std::int64_t))
    throw SizeGuardError("exact: integer " + x.get_str() + " exceeds 64 bits");
  return static_cast<std::int64_t>(x.get_si());
}

namespace {

// Row-reduces [m | rhs] in place; returns the determinant of m.
Rational gauss_jordan(ExactMatrix& m, ExactMatrix* rhs) {
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(m(pivot, col)) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      det = -det;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      if (rhs)
        for (std::size_t j = 0; j < rhs->cols(); ++j) std::swap((*rhs)(pivot, j), (*rhs)(col, j));
    }
    const Rational p = m(col, col);
    det *= p;
    for (std::size_t j = 0; j < n; ++j) m(col, j) /= p;
    if (rhs)
      for (std::size_t j = 0; j < rhs->cols(); ++j) (*rhs)(col, j) /= p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || sgn(m(i, col)) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = 0; j < n; ++j) m(i, j) -= f * m(col, j);
      if (rhs)
        for (std::size_t j = 0; j < rhs->cols(); ++j) (*rhs)(i, j) -= f * (*rhs)(col, j);
    }
  }
  return det;
}

}  // namespace

Rational rational_determinant(const ExactMatrix& m) {
  if (!m.is_square()) throw DimensionError("exact: determinant of non-square matrix");
  ExactMatrix work = m;
  return gauss_jordan(work, nullptr);
}

ExactMatrix inverse(const ExactMatrix& m) {
  if (!m.is_square()) throw DimensionError("exact: inverse of non-square matrix");
  ExactMatrix work = m;
  ExactMatrix inv = ExactMatrix::identity(m.rows());
  if (sgn(gauss_jordan(work, &inv)) == 0) throw RankError("exact: singular matrix");
  return inv;
}

RatVector solve(const ExactMatrix& m, const RatVector& rhs) {
  if (!m.is_square()) throw DimensionError("exact: solve with non-square matrix");
  if (rhs.size() != m.rows()) throw DimensionError("exact: solve rhs length mismatch");
  ExactMatrix work = m;
  ExactMatrix b = ExactMatrix::from_columns({rhs});
  if (sgn(gauss_jordan(work, &b)) == 0) throw RankError("exact: singular matrix");
  return b.column(0);
}

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("exact: empty integer");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw ParseError("exact: malformed integer '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw ParseError("exact: malformed integer '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
    throw ParseError("exact: signed denominator in '" + std::string(text) + "'");
  Integer den = parse_integer(den_text);
  if (den == 0) throw ParseError("exact: zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

ExactMatrix parse_matrix(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("exact: missing matrix header");
  std::istringstream hs(header);
  long rows = 0, cols = 0;
  std::string extra;
  if (!(hs >> rows >> cols) || (hs >> extra) || rows <= 0 || cols <= 0)
    throw ParseError("exact: malformed matrix header '" + header + "'");
  ExactMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (long i = 0; i < rows; ++i) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("exact: missing matrix row " + std::to_string(i + 1));
    std::istringstream ls(line);
    std::string token;
    long j = 0;
    while (ls >> token) {
      if (j >= cols) throw ParseError("exact: too many entries in row " + std::to_string(i + 1));
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = parse_rational(token);
      ++j;
    }
    if (j != cols) throw ParseError("exact: too few entries in row " + std::to_string(i + 1));
  }
  std::string rest;
  while (std::getline(in, rest)) {
    if (rest.find_first_not_of(" \t\r") != std::string::npos)
      throw ParseError("exact: trailing content after matrix");
  }
  return m;
}

ExactMatrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_matrix(in);
}

ExactMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("exact: cannot open '" + path + "'");
  return parse_matrix(in);
}

std::string format_matrix(const ExactMatrix& m) {
  std::ostringstream out;
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << to_string(m(i, j));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace latdft
