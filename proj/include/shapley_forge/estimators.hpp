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

// Monte-Carlo estimators for correlations under mu and for Shapley values,
// with sample sizes taken from the Chernoff bound
//   Pr[|mean - E| >= t] <= 2 exp(-t^2 m / (2 a^2))
// for summands in [-a, a].

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "shapley_forge/game_model.hpp"
#include "shapley_forge/mu_distribution.hpp"
#include "shapley_forge/random.hpp"
#include "shapley_forge/vectors.hpp"

namespace shapley_forge {

struct EstimateConfig {
  double gamma = 0.1;   // accuracy
  double delta = 0.01;  // failure probability
  std::uint64_t seed = 0;
  std::optional<std::int64_t> max_samples;
  // Fixed sample size; overrides the Chernoff bound and max_samples.
  std::optional<std::int64_t> samples;

  void validate() const {
    if (!(gamma > 0.0)) throw std::invalid_argument("EstimateConfig: gamma must be > 0");
    if (!(delta > 0.0 && delta < 1.0)) {
      throw std::invalid_argument("EstimateConfig: delta must lie in (0, 1)");
    }
    if (max_samples && *max_samples < 1) {
      throw std::invalid_argument("EstimateConfig: max_samples must be >= 1");
    }
    if (samples && *samples < 1) throw std::invalid_argument("EstimateConfig: samples must be >= 1");
  }
};

namespace detail {
inline std::int64_t capped(double m, const EstimateConfig& cfg) {
  if (cfg.samples) return *cfg.samples;
  auto out = static_cast<std::int64_t>(std::ceil(m));
  if (cfg.max_samples) out = std::min(out, *cfg.max_samples);
  return std::max<std::int64_t>(out, 1);
}
}  // namespace detail

// Per-coordinate accuracy gamma/sqrt(n+1) at failure delta/(n+1), a = 1:
// m = 2 (n+1) ln(2 (n+1) / delta) / gamma^2.
inline std::int64_t correlation_sample_size(int n, const EstimateConfig& cfg) {
  cfg.validate();
  const double k = n + 1.0;
  return detail::capped(2.0 * k * std::log(2.0 * k / cfg.delta) / (cfg.gamma * cfg.gamma), cfg);
}

// Per-voter accuracy gamma/sqrt(n) at failure delta/n, a = 2:
// m = 8 n ln(2 n / delta) / gamma^2.
inline std::int64_t shapley_sample_size(int n, const EstimateConfig& cfg) {
  cfg.validate();
  return detail::capped(8.0 * n * std::log(2.0 * n / cfg.delta) / (cfg.gamma * cfg.gamma), cfg);
}

// One shared sample of m draws from mu estimates all n+1 correlations.
template <BooleanOracle F>
CorrelationVector estimate_correlation(const F& f, int n, const EstimateConfig& cfg,
                                       Rng& rng) {
  const std::int64_t m = correlation_sample_size(n, cfg);
  const MuDistribution mu(n);
  std::vector<double> sums(static_cast<std::size_t>(n + 1), 0.0);
  BitString x = BitString::constant(n, -1);
  for (std::int64_t t = 0; t < m; ++t) {
    mu.sample_into(rng, x);
    const double v = static_cast<double>(f(x));
    sums[0] += v;
    for (int j = 0; j < n; ++j) sums[j + 1] += x[j] > 0 ? v : -v;
  }
  for (double& s : sums) s /= static_cast<double>(m);
  return CorrelationVector(std::move(sums));
}

inline void sample_permutation(Rng& rng, std::vector<int>& perm) {
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = perm.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(perm[i - 1], perm[j]);
  }
}

// Each permutation is swept left to right from the all -1 string, flipping
// one voter at a time; voter pi(t) is credited f(after) - f(before).
template <BooleanOracle F>
ShapleyVector estimate_shapley(const F& f, int n, const EstimateConfig& cfg, Rng& rng) {
  const std::int64_t m = shapley_sample_size(n, cfg);
  std::vector<double> sums(static_cast<std::size_t>(n), 0.0);
  std::vector<int> perm(static_cast<std::size_t>(n));
  BitString x = BitString::constant(n, -1);
  for (std::int64_t t = 0; t < m; ++t) {
    sample_permutation(rng, perm);
    for (int i = 0; i < n; ++i) x.set(static_cast<std::size_t>(i), -1);
    double before = static_cast<double>(f(x));
    for (int voter : perm) {
      x.set(static_cast<std::size_t>(voter), 1);
      const double after = static_cast<double>(f(x));
      sums[static_cast<std::size_t>(voter)] += after - before;
      before = after;
    }
  }
  for (double& s : sums) s /= static_cast<double>(m);
  return ShapleyVector(std::move(sums));
}

// Same stream of permutations as the generic sweep, but the margin w.x - theta
// is updated incrementally instead of re-evaluated.
inline ShapleyVector estimate_shapley(const VotingGame& game, int n,
                                      const EstimateConfig& cfg, Rng& rng) {
  check_same_length("estimate_shapley", static_cast<std::size_t>(game.n()),
                    static_cast<std::size_t>(n));
  const std::int64_t m = shapley_sample_size(n, cfg);
  const auto& w = game.weights();
  const double start = -std::accumulate(w.begin(), w.end(), 0.0) - game.threshold();
  auto sign = [](double margin) { return margin >= 0.0 ? 1.0 : -1.0; };
  std::vector<double> sums(static_cast<std::size_t>(n), 0.0);
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (std::int64_t t = 0; t < m; ++t) {
    sample_permutation(rng, perm);
    double margin = start;
    double before = sign(margin);
    for (int voter : perm) {
      margin += 2.0 * w[static_cast<std::size_t>(voter)];
      const double after = sign(margin);
      sums[static_cast<std::size_t>(voter)] += after - before;
      before = after;
    }
  }
  for (double& s : sums) s /= static_cast<double>(m);
  return ShapleyVector(std::move(sums));
}

}  // namespace shapley_forge
