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

// Seeded random instances: reasonable integer games, real-weight LTFs and
// tabulated bounded functions.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "shapley_forge/game_model.hpp"
#include "shapley_forge/random.hpp"

namespace shapley_forge {

// Weights uniform in [1, max_weight]; threshold k + 1/2 uniform among the
// half-integers with |theta| <= (1 - eta) sum w. Integer sums never tie.
inline VotingGame random_reasonable_game(Rng& rng, int n, int max_weight, double eta) {
  if (n < 1 || max_weight < 1) throw std::invalid_argument("random_reasonable_game: bad sizes");
  while (true) {
    std::vector<double> w(static_cast<std::size_t>(n));
    double total = 0.0;
    for (auto& x : w) {
      x = 1.0 + static_cast<double>(uniform_below(rng, static_cast<std::uint64_t>(max_weight)));
      total += x;
    }
    const double limit = (1.0 - eta) * total;
    const auto kmax = static_cast<std::int64_t>(std::floor(limit - 0.5));
    if (kmax < 0) continue;
    // k in [-kmax - 1, kmax] gives theta in [-kmax - 1/2, kmax + 1/2].
    const auto k = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(2 * kmax + 2))) -
                   kmax - 1;
    return VotingGame(std::move(w), static_cast<double>(k) + 0.5);
  }
}

inline double standard_normal(Rng& rng) {
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

// Gaussian weights and threshold with scale 1 / n.
inline VotingGame random_real_ltf(Rng& rng, int n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  for (auto& x : w) x = standard_normal(rng);
  const double theta = standard_normal(rng) / n;
  return VotingGame(std::move(w), theta);
}

// Integer weights in [-w, w] (not all zero) with a half-integer threshold.
inline VotingGame random_signed_integer_ltf(Rng& rng, int n, int max_weight) {
  while (true) {
    std::vector<double> w(static_cast<std::size_t>(n));
    double l1 = 0.0;
    for (auto& x : w) {
      x = static_cast<double>(static_cast<std::int64_t>(uniform_below(rng, 2 * max_weight + 1)) - max_weight);
      l1 += std::abs(x);
    }
    if (l1 == 0.0) continue;
    const auto span = static_cast<std::int64_t>(l1);
    const auto k = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(2 * span))) - span;
    return VotingGame(std::move(w), static_cast<double>(k) + 0.5);
  }
}

// A function with range [-1, 1] given by its truth table over masks.
class TabulatedFunction {
 public:
  explicit TabulatedFunction(std::vector<double> table, int n) : n_(n), table_(std::move(table)) {
    if (table_.size() != (std::size_t{1} << n)) {
      throw std::invalid_argument("TabulatedFunction: table must have 2^n entries");
    }
  }

  int n() const { return n_; }

  double operator()(const BitString& x) const {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] > 0) mask |= std::uint64_t{1} << i;
    }
    return table_[mask];
  }

 private:
  int n_;
  std::vector<double> table_;
};

inline TabulatedFunction random_bounded_function(Rng& rng, int n) {
  std::vector<double> table(std::size_t{1} << n);
  for (auto& v : table) v = 2.0 * uniform01(rng) - 1.0;
  return TabulatedFunction(std::move(table), n);
}

}  // namespace shapley_forge
