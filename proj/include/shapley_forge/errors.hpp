// Copyright 2026 The Shapley Forge Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shapley_forge {

// Two vectors (or a game and an input string) disagree on the voter count.
class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(const std::string& what, std::size_t expected,
                    std::size_t actual)
      : std::invalid_argument(what + ": expected length " +
                              std::to_string(expected) + ", got " +
                              std::to_string(actual)) {}
};

// An exact routine was asked to run beyond its enumeration cap or table
// budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Boosting ran past the 64/xi^2 iteration bound, which can only happen when
// the correlation oracle broke its accuracy contract.
class BoostContractViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void check_same_length(const char* what, std::size_t expected,
                              std::size_t actual) {
  if (expected != actual) throw DimensionMismatch(what, expected, actual);
}

}  // namespace shapley_forge
