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

// Counting subsets of integer-weighted items by (size, weight sum). Shared by
// the exact correlation DP, the pivotal-counting Shapley DP and the boosting
// DP oracle.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shapley_forge/errors.hpp"

namespace shapley_forge {

// Default bound on items * table cells touched by one table build.
inline constexpr double kDefaultDpBudget = 4e8;

// Counts are stored as doubles; they stay exact while every count is below
// 2^53, i.e. for at most 52 items.
inline constexpr int kExactCountLimit = 52;

class SubsetCountTable {
 public:
  // Table over all items except `excluded` (if given).
  SubsetCountTable(const std::vector<std::int64_t>& weights,
                   std::optional<std::size_t> excluded = std::nullopt,
                   double budget = kDefaultDpBudget) {
    for (std::size_t i = 0; i < weights.size(); ++i) {
      const auto w = weights[i];
      if (w < 0) min_sum_ += w; else max_sum_ += w;
    }
    items_ = static_cast<int>(weights.size()) - (excluded ? 1 : 0);
    width_ = static_cast<std::size_t>(max_sum_ - min_sum_ + 1);
    const double cells = static_cast<double>(items_ + 1) * static_cast<double>(width_);
    if (cells * static_cast<double>(weights.size()) > budget) {
      throw BudgetExceeded("subset-count DP needs " + std::to_string(cells) +
                           " cells per item; budget exceeded");
    }
    counts_.assign(static_cast<std::size_t>(items_ + 1) * width_, 0.0);
    at(0, 0) = 1.0;
    int added = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (excluded && *excluded == i) continue;
      add_item(weights[i], added);
      ++added;
    }
  }

  int items() const { return items_; }
  std::int64_t min_sum() const { return min_sum_; }
  std::int64_t max_sum() const { return max_sum_; }
  std::size_t width() const { return width_; }

  // Number of item subsets of size k whose weights sum to s (0 when out of
  // range).
  double count(int k, std::int64_t s) const {
    if (k < 0 || k > items_ || s < min_sum_ || s > max_sum_) return 0.0;
    return counts_[static_cast<std::size_t>(k) * width_ +
                   static_cast<std::size_t>(s - min_sum_)];
  }

  const double* row(int k) const {
    return counts_.data() + static_cast<std::size_t>(k) * width_;
  }

  // Inverse of adding an item of weight w; exact within kExactCountLimit.
  void remove_item(std::int64_t w) {
    const auto [lo, hi] = shifted_range(w);
    for (int k = 1; k <= items_; ++k) {
      double* dst = counts_.data() + static_cast<std::size_t>(k) * width_;
      const double* src = counts_.data() + static_cast<std::size_t>(k - 1) * width_;
      for (std::int64_t idx = lo; idx < hi; ++idx) dst[idx] -= src[idx - w];
    }
    --items_;
  }

 private:
  double& at(int k, std::int64_t s) {
    return counts_[static_cast<std::size_t>(k) * width_ +
                   static_cast<std::size_t>(s - min_sum_)];
  }

  // Destination indices idx whose source idx - w lies inside the table.
  std::pair<std::int64_t, std::int64_t> shifted_range(std::int64_t w) const {
    const auto width = static_cast<std::int64_t>(width_);
    return {std::max<std::int64_t>(0, w), std::min<std::int64_t>(width, width + w)};
  }

  void add_item(std::int64_t w, int already_added) {
    const auto [lo, hi] = shifted_range(w);
    for (int k = already_added + 1; k >= 1; --k) {
      double* dst = counts_.data() + static_cast<std::size_t>(k) * width_;
      const double* src = counts_.data() + static_cast<std::size_t>(k - 1) * width_;
      for (std::int64_t idx = lo; idx < hi; ++idx) dst[idx] += src[idx - w];
    }
  }

  int items_ = 0;
  std::int64_t min_sum_ = 0;
  std::int64_t max_sum_ = 0;
  std::size_t width_ = 1;
  std::vector<double> counts_;
};

// Tables excluding each item in turn, derived from one full table when the
// counts are exact and rebuilt from scratch otherwise.
inline std::vector<SubsetCountTable> exclusion_tables(
    const std::vector<std::int64_t>& weights, double budget = kDefaultDpBudget) {
  std::vector<SubsetCountTable> out;
  out.reserve(weights.size());
  if (static_cast<int>(weights.size()) <= kExactCountLimit) {
    const SubsetCountTable full(weights, std::nullopt, budget);
    for (std::size_t i = 0; i < weights.size(); ++i) {
      out.push_back(full);
      out.back().remove_item(weights[i]);
    }
  } else {
    for (std::size_t i = 0; i < weights.size(); ++i) {
      out.emplace_back(weights, i, budget);
    }
  }
  return out;
}

}  // namespace shapley_forge
