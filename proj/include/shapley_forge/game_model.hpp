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

// Voting games over {-1,+1}^n: linear threshold functions (LTFs), their
// clipped relatives (LBFs), and the human-facing quota encoding.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "shapley_forge/errors.hpp"

namespace shapley_forge {

// A vote profile: entry i is +1 if voter i votes yes, -1 otherwise.
class BitString {
 public:
  BitString() = default;

  BitString(std::initializer_list<int> bits) : BitString(std::vector<int>(bits)) {}

  explicit BitString(const std::vector<int>& bits) {
    if (bits.empty()) throw std::invalid_argument("BitString: n must be >= 1");
    bits_.reserve(bits.size());
    for (int b : bits) {
      if (b != 1 && b != -1) {
        throw std::invalid_argument("BitString: entries must be -1 or +1");
      }
      bits_.push_back(static_cast<std::int8_t>(b));
    }
  }

  static BitString constant(int n, int value) {
    return BitString(std::vector<int>(static_cast<std::size_t>(n), value));
  }

  // Bit i of mask set <=> voter i votes +1.
  static BitString from_mask(int n, std::uint64_t mask) {
    BitString x = constant(n, -1);
    x.assign_mask(mask);
    return x;
  }

  void assign_mask(std::uint64_t mask) {
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      bits_[i] = ((mask >> i) & 1U) ? 1 : -1;
    }
  }

  void set(std::size_t i, int value) {
    if (value != 1 && value != -1) {
      throw std::invalid_argument("BitString: entries must be -1 or +1");
    }
    bits_.at(i) = static_cast<std::int8_t>(value);
  }

  std::size_t size() const { return bits_.size(); }
  int operator[](std::size_t i) const { return bits_[i]; }
  std::span<const std::int8_t> values() const { return bits_; }

  // Number of +1 entries.
  int weight() const {
    return static_cast<int>(std::count(bits_.begin(), bits_.end(), 1));
  }

  std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(b > 0 ? '+' : '-');
    return s;
  }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::int8_t> bits_;
};

// Anything that maps a vote profile to a real number; the exact oracles and
// estimators accept any such callable (games, LBFs, lambdas over tables).
template <class F>
concept BooleanOracle = std::invocable<const F&, const BitString&> &&
    std::convertible_to<std::invoke_result_t<const F&, const BitString&>, double>;

inline double dot(std::span<const double> w, const BitString& x) {
  check_same_length("dot", w.size(), x.size());
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * x[i];
  return s;
}

// sign(w.x - theta) with sign(0) = +1.
class VotingGame {
 public:
  VotingGame(std::vector<double> weights, double threshold)
      : weights_(std::move(weights)), threshold_(threshold) {
    if (weights_.empty()) throw std::invalid_argument("VotingGame: n must be >= 1");
    for (double w : weights_) {
      if (!std::isfinite(w)) throw std::invalid_argument("VotingGame: non-finite weight");
    }
    if (!std::isfinite(threshold_)) {
      throw std::invalid_argument("VotingGame: non-finite threshold");
    }
  }

  int n() const { return static_cast<int>(weights_.size()); }
  const std::vector<double>& weights() const { return weights_; }
  double threshold() const { return threshold_; }

  double margin(const BitString& x) const { return dot(weights_, x) - threshold_; }
  int operator()(const BitString& x) const { return margin(x) >= 0.0 ? 1 : -1; }

  double l1_norm() const {
    double s = 0.0;
    for (double w : weights_) s += std::abs(w);
    return s;
  }

  bool has_integer_weights() const {
    return std::all_of(weights_.begin(), weights_.end(), [](double w) {
      return std::nearbyint(w) == w && std::abs(w) < 0x1.0p52;
    });
  }

  friend bool operator==(const VotingGame&, const VotingGame&) = default;

 private:
  std::vector<double> weights_;
  double threshold_;
};

// Yes-set S passes iff the total weight of S is at least the quota.
class QuotaGame {
 public:
  QuotaGame(std::vector<std::int64_t> weights, std::int64_t quota)
      : weights_(std::move(weights)), quota_(quota) {
    if (weights_.empty()) throw std::invalid_argument("QuotaGame: n must be >= 1");
    for (auto w : weights_) {
      if (w < 0) throw std::invalid_argument("QuotaGame: weights must be >= 0");
    }
    total_ = std::accumulate(weights_.begin(), weights_.end(), std::int64_t{0});
    if (quota_ <= 0 || quota_ > total_) {
      throw std::invalid_argument("QuotaGame: quota must satisfy 0 < q <= total weight");
    }
  }

  int n() const { return static_cast<int>(weights_.size()); }
  const std::vector<std::int64_t>& weights() const { return weights_; }
  std::int64_t quota() const { return quota_; }
  std::int64_t total() const { return total_; }

  bool passes(std::uint64_t yes_mask) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if ((yes_mask >> i) & 1U) s += weights_[i];
    }
    return s >= quota_;
  }

 private:
  std::vector<std::int64_t> weights_;
  std::int64_t quota_;
  std::int64_t total_;
};

// P_1(w.x - theta): the affine form clipped to [-1, 1].
class LinearBoundedFunction {
 public:
  LinearBoundedFunction(std::vector<double> weights, double threshold)
      : weights_(std::move(weights)), threshold_(threshold) {
    if (weights_.empty()) {
      throw std::invalid_argument("LinearBoundedFunction: n must be >= 1");
    }
  }

  int n() const { return static_cast<int>(weights_.size()); }
  const std::vector<double>& weights() const { return weights_; }
  double threshold() const { return threshold_; }

  double operator()(const BitString& x) const {
    return std::clamp(dot(weights_, x) - threshold_, -1.0, 1.0);
  }

 private:
  std::vector<double> weights_;
  double threshold_;
};

inline int evaluate_ltf(const VotingGame& game, const BitString& x) {
  check_same_length("evaluate_ltf", game.weights().size(), x.size());
  return game(x);
}

inline double evaluate_lbf(const LinearBoundedFunction& lbf, const BitString& x) {
  check_same_length("evaluate_lbf", lbf.weights().size(), x.size());
  return lbf(x);
}

// w.x = 2 w(S) - total for the yes-set S, so w(S) >= q iff
// w.x >= 2q - total; the half-unit offset keeps integer games off ties.
inline VotingGame quota_to_ltf(const QuotaGame& g) {
  std::vector<double> w(g.weights().begin(), g.weights().end());
  const double theta =
      2.0 * static_cast<double>(g.quota()) - static_cast<double>(g.total()) - 0.5;
  return VotingGame(std::move(w), theta);
}

struct ReasonablenessCheck {
  bool reasonable = false;
  bool monotone = false;
};

inline ReasonablenessCheck is_eta_reasonable(const VotingGame& game, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("is_eta_reasonable: eta must lie in (0, 1)");
  }
  ReasonablenessCheck out;
  out.reasonable = std::abs(game.threshold()) <= (1.0 - eta) * game.l1_norm();
  out.monotone = std::all_of(game.weights().begin(), game.weights().end(),
                             [](double w) { return w >= 0.0; });
  return out;
}

inline VotingGame threshold_lbf(const LinearBoundedFunction& lbf) {
  return VotingGame(lbf.weights(), lbf.threshold());
}

}  // namespace shapley_forge
