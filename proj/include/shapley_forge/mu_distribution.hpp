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

// The symmetric distribution mu on B_n = {-1,1}^n minus the two constant
// strings: draw a slice k in [1, n-1] with probability Q(n,k)/Lambda(n),
// where Q(n,k) = 1/k + 1/(n-k), then a uniform string with k entries +1.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "shapley_forge/errors.hpp"
#include "shapley_forge/game_model.hpp"
#include "shapley_forge/random.hpp"
#include "shapley_forge/subset_counts.hpp"
#include "shapley_forge/vectors.hpp"

namespace shapley_forge {

inline constexpr int kDefaultEnumerationCap = 20;

// C(n, k) in floating point; exact for n <= 56.
inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return n <= 56 ? std::nearbyint(r) : r;
}

// Lambda(n) = sum_{0<k<n} (1/k + 1/(n-k)) = 2 H_{n-1}.
inline double lambda_n(int n) {
  if (n < 2) throw std::invalid_argument("lambda_n: n must be >= 2");
  double h = 0.0;
  for (int k = 1; k <= n - 1; ++k) h += 1.0 / k;
  return 2.0 * h;
}

class MuDistribution {
 public:
  explicit MuDistribution(int n) : n_(n), lambda_(lambda_n(n)) {
    slice_weight_.assign(static_cast<std::size_t>(n + 1), 0.0);
    cumulative_.assign(static_cast<std::size_t>(n), 0.0);
    double acc = 0.0;
    for (int k = 1; k <= n - 1; ++k) {
      slice_weight_[k] = 1.0 / k + 1.0 / (n - k);
      acc += slice_weight_[k] / lambda_;
      cumulative_[k] = acc;
    }
    cumulative_[n - 1] = 1.0;
  }

  int n() const { return n_; }
  double lambda() const { return lambda_; }

  // Q(n, k).
  double slice_weight(int k) const {
    check_slice(k);
    return slice_weight_[k];
  }

  // Probability that a draw lands in slice k.
  double slice_prob(int k) const {
    check_slice(k);
    return slice_weight_[k] / lambda_;
  }

  // Mass of a single string of weight k; zero off the support.
  double point_mass(int k) const {
    if (k <= 0 || k >= n_) return 0.0;
    return slice_weight_[k] / lambda_ / binomial(n_, k);
  }

  double pmf(const BitString& x) const {
    check_same_length("mu_pmf", static_cast<std::size_t>(n_), x.size());
    return point_mass(x.weight());
  }

  int sample_slice(Rng& rng) const {
    const double u = uniform01(rng);
    const auto it = std::upper_bound(cumulative_.begin() + 1, cumulative_.end(), u);
    return static_cast<int>(std::min<std::ptrdiff_t>(it - cumulative_.begin(), n_ - 1));
  }

  // Two-stage draw; the slice positions come from a partial Fisher-Yates
  // shuffle of the voter indices.
  BitString sample(Rng& rng) const {
    BitString x = BitString::constant(n_, -1);
    sample_into(rng, x);
    return x;
  }

  void sample_into(Rng& rng, BitString& x) const {
    const int k = sample_slice(rng);
    scratch_.resize(static_cast<std::size_t>(n_));
    std::iota(scratch_.begin(), scratch_.end(), 0);
    for (int i = 0; i < n_; ++i) x.set(static_cast<std::size_t>(i), -1);
    for (int t = 0; t < k; ++t) {
      const auto j = t + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n_ - t)));
      std::swap(scratch_[t], scratch_[j]);
      x.set(static_cast<std::size_t>(scratch_[t]), 1);
    }
  }

 private:
  void check_slice(int k) const {
    if (k < 1 || k > n_ - 1) {
      throw std::out_of_range("slice index " + std::to_string(k) +
                              " outside [1, n-1]");
    }
  }

  int n_;
  double lambda_;
  std::vector<double> slice_weight_;
  std::vector<double> cumulative_;
  mutable std::vector<int> scratch_;
};

inline double slice_prob(const MuDistribution& dist, int k) { return dist.slice_prob(k); }
inline double mu_pmf(const MuDistribution& dist, const BitString& x) { return dist.pmf(x); }
inline BitString sample_mu(const MuDistribution& dist, Rng& rng) { return dist.sample(rng); }

// L_0 = 1 and L_i(x) = alpha (x_1 + ... + x_n) + beta x_i, orthonormal under mu.
struct FourierBasis {
  int n = 0;
  double alpha = 0.0;
  double beta = 0.0;

  double evaluate(int i, const BitString& x) const {
    if (i == 0) return 1.0;
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += x[j];
    return alpha * s + beta * x[static_cast<std::size_t>(i - 1)];
  }
};

inline FourierBasis basis_coeffs(int n) {
  if (n < 3) {
    throw std::invalid_argument("basis_coeffs: n must be >= 3 (the basis degenerates at n = 2)");
  }
  const double lam = lambda_n(n);
  const double beta = std::sqrt(lam) / 2.0;
  const double alpha = (std::sqrt(lam / (n * lam - 4.0 * (n - 1))) - beta) / n;
  return FourierBasis{n, alpha, beta};
}

// Visits every x in B_n with its mask and weight.
template <class Visit>
void for_each_support_point(int n, Visit&& visit) {
  if (n < 2 || n > 62) throw std::invalid_argument("for_each_support_point: bad n");
  BitString x = BitString::constant(n, -1);
  const std::uint64_t end = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask < end; ++mask) {
    x.assign_mask(mask);
    visit(static_cast<const BitString&>(x), std::popcount(mask), mask);
  }
}

inline void check_enumeration_cap(int n, int cap) {
  if (n > cap) {
    throw BudgetExceeded("exact enumeration at n = " + std::to_string(n) +
                         " exceeds the cap of " + std::to_string(cap));
  }
}

// E_{x~mu}[f(x)] by summing over B_n.
template <BooleanOracle F>
double exact_mu_expectation(const F& f, int n, int cap = kDefaultEnumerationCap) {
  check_enumeration_cap(n, cap);
  const MuDistribution mu(n);
  double total = 0.0;
  for_each_support_point(n, [&](const BitString& x, int wt, std::uint64_t) {
    total += mu.point_mass(wt) * static_cast<double>(f(x));
  });
  return total;
}

// f*(j) = E_mu[f(x) x_j] for j = 0..n (x_0 = 1), one pass over B_n.
template <BooleanOracle F>
CorrelationVector exact_correlations_enum(const F& f, int n,
                                          int cap = kDefaultEnumerationCap) {
  check_enumeration_cap(n, cap);
  const MuDistribution mu(n);
  CorrelationVector c(static_cast<std::size_t>(n + 1));
  for_each_support_point(n, [&](const BitString& x, int wt, std::uint64_t) {
    const double v = mu.point_mass(wt) * static_cast<double>(f(x));
    c[0] += v;
    for (int j = 0; j < n; ++j) c[j + 1] += x[j] > 0 ? v : -v;
  });
  return c;
}

namespace detail {

// sum_{idx in [lo, hi)} a[idx] * b[idx - lo], with four independent partial
// sums so the adds pipeline.
inline double dot_range(const double* a, const double* b, std::int64_t lo, std::int64_t hi) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::int64_t idx = lo;
  for (; idx + 4 <= hi; idx += 4) {
    s0 += a[idx] * b[idx - lo];
    s1 += a[idx + 1] * b[idx + 1 - lo];
    s2 += a[idx + 2] * b[idx + 2 - lo];
    s3 += a[idx + 3] * b[idx + 3 - lo];
  }
  for (; idx < hi; ++idx) s0 += a[idx] * b[idx - lo];
  return (s0 + s1) + (s2 + s3);
}

}  // namespace detail

// Correlations of a function of the yes-weight s = sum_{i: x_i=+1} w_i under
// mu, via subset counts by (slice, weight). For voter j, the size-(k-1)
// subsets of the others obey R_k = N_k - shift(R_{k-1}, w_j), so each row is
// streamed once and dotted against value(s + w_j) on the fly; counts stay
// exact integers while n <= kExactCountLimit.
template <class ValueOfSum>
CorrelationVector yes_weight_correlations(const std::vector<std::int64_t>& weights,
                                          ValueOfSum&& value,
                                          double budget = kDefaultDpBudget) {
  const int n = static_cast<int>(weights.size());
  if (n > kExactCountLimit) {
    throw BudgetExceeded("yes_weight_correlations: counts are exact only for n <= " +
                         std::to_string(kExactCountLimit));
  }
  const MuDistribution mu(n);
  const SubsetCountTable full(weights, std::nullopt, budget);
  const std::int64_t lo = full.min_sum();
  const auto width = static_cast<std::int64_t>(full.width());
  std::vector<double> g(static_cast<std::size_t>(width));
  for (std::int64_t idx = 0; idx < width; ++idx) {
    g[static_cast<std::size_t>(idx)] = static_cast<double>(value(lo + idx));
  }
  CorrelationVector c(static_cast<std::size_t>(n + 1));
  std::vector<double> slice_total(static_cast<std::size_t>(n + 1), 0.0);
  for (int k = 1; k <= n - 1; ++k) {
    const double* row = full.row(k);
    const double acc = detail::dot_range(row, g.data(), 0, width);
    slice_total[k] = acc;
    c[0] += mu.point_mass(k) * acc;
  }
  std::vector<double> prev(static_cast<std::size_t>(width));
  std::vector<double> cur(static_cast<std::size_t>(width));
  for (int j = 0; j < n; ++j) {
    const std::int64_t wj = weights[static_cast<std::size_t>(j)];
    // Indices idx with idx + wj inside the table, and idx - wj likewise.
    const std::int64_t dot_lo = std::max<std::int64_t>(0, -wj);
    const std::int64_t dot_hi = std::min<std::int64_t>(width, width - wj);
    const std::int64_t sh_lo = std::max<std::int64_t>(0, wj);
    const std::int64_t sh_hi = std::min<std::int64_t>(width, width + wj);
    std::copy(full.row(0), full.row(0) + width, prev.begin());
    double total = 0.0;
    for (int k = 1; k <= n - 1; ++k) {
      // prev = R_{k-1}: subsets of the others of size k - 1.
      const double with_j = detail::dot_range(prev.data(), g.data() + dot_lo + wj, dot_lo, dot_hi);
      total += mu.point_mass(k) * (2.0 * with_j - slice_total[k]);
      if (k == n - 1) break;
      const double* row = full.row(k);
      for (std::int64_t idx = 0; idx < sh_lo; ++idx) cur[idx] = row[idx];
      for (std::int64_t idx = sh_lo; idx < sh_hi; ++idx) cur[idx] = row[idx] - prev[idx - wj];
      for (std::int64_t idx = sh_hi; idx < width; ++idx) cur[idx] = row[idx];
      std::swap(prev, cur);
    }
    c[j + 1] = total;
  }
  return c;
}

// Exact f*(0..n) for an LTF with integer weights, without enumerating B_n.
inline CorrelationVector exact_correlations_dp(const VotingGame& game,
                                               double budget = kDefaultDpBudget) {
  if (!game.has_integer_weights()) {
    throw std::invalid_argument("exact_correlations_dp: weights must be integers");
  }
  if (game.n() < 2) throw std::invalid_argument("exact_correlations_dp: n must be >= 2");
  std::vector<std::int64_t> w;
  std::int64_t total = 0;
  for (double x : game.weights()) {
    w.push_back(static_cast<std::int64_t>(x));
    total += w.back();
  }
  const double theta = game.threshold();
  return yes_weight_correlations(
      w,
      [&](std::int64_t s) {
        return 2.0 * static_cast<double>(s) - static_cast<double>(total) - theta >= 0.0
                   ? 1.0
                   : -1.0;
      },
      budget);
}

}  // namespace shapley_forge
