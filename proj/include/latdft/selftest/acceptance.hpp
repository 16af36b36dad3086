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

#ifndef LATDFT_SELFTEST_ACCEPTANCE_HPP_
#define LATDFT_SELFTEST_ACCEPTANCE_HPP_

#include <string>
#include <vector>

#include "json.hpp"

namespace latdft::selftest {

struct CriterionResult {
  int id;
  std::string title;
  bool passed;
  std::string detail;
  double seconds;
};

inline constexpr int kCriterionCount = 12;

// Runs one acceptance criterion (1..12). Runtime limits are part of the
// verdict. Exceptions are caught and reported as failures.
CriterionResult run_criterion(int id);

// All criteria when ids is empty.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {});

// "PASS  C<id>  <title>  <detail>  (<seconds> s)"
std::string format_line(const CriterionResult& r);
nlohmann::json to_json(const std::vector<CriterionResult>& results);

}  // namespace latdft::selftest

#endif  // LATDFT_SELFTEST_ACCEPTANCE_HPP_
