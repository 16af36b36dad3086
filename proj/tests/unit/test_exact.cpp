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


#include <cstdint>
#include <sstream>

#include <gtest/gtest.h>

#include "latdft/error.hpp"
#include "latdft/exact.hpp"

namespace latdft {
namespace {

TEST(Rational, ParseNormalizes) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-6/8"), Rational(-3, 4));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(to_string(parse_rational("-6/8")), "-3/4");
  EXPECT_EQ(to_string(Rational(5)), "5");
}

TEST(Rational, ParseRejectsGarbage) {
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational("1/-2"), ParseError);
  EXPECT_THROW(parse_integer("12x"), ParseError);
}

TEST(Rational, RoundHalfAwayFromZero) {
  EXPECT_EQ(round_half_away(Rational(5, 2)), 3);
  EXPECT_EQ(round_half_away(Rational(-5, 2)), -3);
  EXPECT_EQ(round_half_away(Rational(7, 3)), 2);
  EXPECT_EQ(round_half_away(Rational(-7, 3)), -2);
  EXPECT_EQ(round_half_away(Rational(0)), 0);
  EXPECT_EQ(floor_of(Rational(-1, 2)), -1);
  EXPECT_EQ(ceil_of(Rational(-1, 2)), 0);
}

TEST(Rational, Int64Guard) {
  EXPECT_EQ(to_int64(Integer(-42)), -42);
  Integer big = 1;
  big <<= 70;
  EXPECT_THROW(to_int64(big), SizeGuardError);
  EXPECT_THROW(to_integer(RatVector{Rational(1, 2)}), ParameterError);
}

TEST(ExactMatrix, TextRoundTrip) {
  const ExactMatrix m{{5, 1}, {0, 1}};
  const std::string text = format_matrix(m);
  EXPECT_EQ(text, "2 2\n5 1\n0 1\n");
  EXPECT_EQ(parse_matrix(text), m);

  ExactMatrix r(2, 2);
  r(0, 0) = Rational(1, 3);
  r(1, 1) = Rational(-2, 7);
  EXPECT_EQ(parse_matrix(format_matrix(r)), r);
}

TEST(ExactMatrix, ParseRejectsMalformed) {
  EXPECT_THROW(parse_matrix("2 2\n5 1\n0\n"), ParseError);
  EXPECT_THROW(parse_matrix("2 2\n5 1 1\n0 1\n"), ParseError);
  EXPECT_THROW(parse_matrix("2 2\n5 1\n"), ParseError);
  EXPECT_THROW(parse_matrix("2 x\n5 1\n0 1\n"), ParseError);
  EXPECT_THROW(parse_matrix(""), ParseError);
  EXPECT_THROW(read_matrix_file("/nonexistent/matrix.txt"), ParseError);
}

TEST(ExactMatrix, InverseIsExact) {
  const ExactMatrix m{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  EXPECT_EQ(inverse(m) * m, ExactMatrix::identity(3));
  EXPECT_EQ(m * inverse(m), ExactMatrix::identity(3));
  EXPECT_EQ(rational_determinant(m), 18);
  const RatVector x = solve(m, RatVector{1, 2, 3});
  EXPECT_EQ(m * x, (RatVector{1, 2, 3}));
}

TEST(ExactMatrix, SingularAndShapeErrors) {
  const ExactMatrix s{{1, 2}, {2, 4}};
  EXPECT_THROW(inverse(s), RankError);
  EXPECT_THROW(solve(s, RatVector{1, 1}), RankError);
  EXPECT_THROW(inverse(ExactMatrix(2, 3)), DimensionError);
  EXPECT_THROW(ExactMatrix(2, 3) * ExactMatrix(2, 3), DimensionError);
  EXPECT_THROW(dot(RatVector{1}, RatVector{1, 2}), DimensionError);
}

TEST(ExactMatrix, ColumnOperations) {
  ExactMatrix m{{1, 2}, {3, 4}};
  m.add_column_multiple(1, 0, Rational(-2));
  EXPECT_EQ(m, (ExactMatrix{{1, 0}, {3, -2}}));
  m.swap_columns(0, 1);
  m.negate_column(0);
  EXPECT_EQ(m, (ExactMatrix{{0, 1}, {2, 3}}));
  EXPECT_EQ(m.transpose().transpose(), m);
  EXPECT_EQ(ExactMatrix::from_columns({m.column(0), m.column(1)}), m);
  EXPECT_EQ(ExactMatrix::from_rows({m.row(0), m.row(1)}), m);
}

}  // namespace
}  // namespace latdft
