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

#ifndef LATDFT_ERROR_HPP_
#define LATDFT_ERROR_HPP_

#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace latdft {

// Base of every error thrown by the library. Messages are prefixed with the
// module that raised them ("intlat: ...", "sysnf: ...").
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Singular input where a full-rank matrix is required.
class RankError : public Error {
 public:
  using Error::Error;
};

// Matrix does not have the systematic shape (first row, identity below).
class StructureError : public Error {
 public:
  using Error::Error;
};

// gcd(sum b_j^2 + 1, N) > 1.
class ConditionError : public Error {
 public:
  ConditionError(const std::string& what, mpz_class gcd)
      : Error(what), gcd_(std::move(gcd)) {}
  const mpz_class& gcd() const { return gcd_; }

 private:
  mpz_class gcd_;
};

class MembershipError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class SearchExhaustedError : public Error {
 public:
  using Error::Error;
};

class SizeGuardError : public Error {
 public:
  using Error::Error;
};

class ModulusMismatchError : public Error {
 public:
  using Error::Error;
};

class UncomputeError : public Error {
 public:
  using Error::Error;
};

class ZeroMassError : public Error {
 public:
  using Error::Error;
};

class EmptySupportError : public Error {
 public:
  using Error::Error;
};

}  // namespace latdft

#endif  // LATDFT_ERROR_HPP_
