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

// Anti-concentration measurements under mu and under biased product
// distributions, balanced-permutation fractions, and exact reports on the
// distance inequalities relating Shapley, Fourier and correlation vectors.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "shapley_forge/errors.hpp"
#include "shapley_forge/estimators.hpp"
#include "shapley_forge/game_model.hpp"
#include "shapley_forge/mu_distribution.hpp"
#include "shapley_forge/power_indices.hpp"
#include "shapley_forge/random.hpp"
#include "shapley_forge/vectors.hpp"

namespace shapley_forge {

inline constexpr int kAntiConcExactCap = 14;
inline constexpr int kBalancedExactCap = 20;

struct AntiConcReport {
  double r = 0.0;
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::int64_t samples = 0;  // 0 for exact results
  bool exact = false;
  std::string distribution = "mu";
  double bias = 0.5;  // biased distributions only
};

namespace detail {

inline void finish_sampled(AntiConcReport& rep, std::int64_t hits, std::int64_t samples) {
  rep.samples = samples;
  rep.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  rep.stderr_ = std::sqrt(rep.estimate * (1.0 - rep.estimate) / static_cast<double>(samples));
}

inline void check_radius(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("radius must be > 0");
}

}  // namespace detail

// Pr_{x~mu}[|w.x - theta| < r]. Exact by enumeration for n <= exact_cap,
// Monte Carlo otherwise.
inline AntiConcReport anticonc_mu(const VotingGame& game, double r, std::int64_t samples,
                                  Rng& rng, int exact_cap = kAntiConcExactCap) {
  detail::check_radius(r);
  const int n = game.n();
  const MuDistribution mu(n);
  AntiConcReport rep;
  rep.r = r;
  if (n <= exact_cap) {
    rep.exact = true;
    for_each_support_point(n, [&](const BitString& x, int wt, std::uint64_t) {
      if (std::abs(game.margin(x)) < r) rep.estimate += mu.point_mass(wt);
    });
    return rep;
  }
  if (samples < 1) throw std::invalid_argument("anticonc_mu: samples must be >= 1");
  BitString x = BitString::constant(n, -1);
  std::int64_t hits = 0;
  for (std::int64_t t = 0; t < samples; ++t) {
    mu.sample_into(rng, x);
    if (std::abs(game.margin(x)) < r) ++hits;
  }
  detail::finish_sampled(rep, hits, samples);
  return rep;
}

struct BalancedReport {
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::int64_t samples = 0;
  bool exact = false;
};

// p(r, i): fraction of permutations pi with
// |w0 + sum_{j<=i} w_pi(j) - sum_{j>i} w_pi(j)| <= r. The prefix set of a
// uniform permutation is a uniform i-subset, so the exact path averages
// over i-subsets.
inline BalancedReport balanced_fraction(const std::vector<double>& weights, double w0, double r,
                                        int i, std::int64_t samples, Rng& rng,
                                        int exact_cap = kBalancedExactCap) {
  const int n = static_cast<int>(weights.size());
  if (i < 1 || i > n - 1) {
    throw std::out_of_range("balanced_fraction: i must lie in [1, n-1], got " + std::to_string(i));
  }
  if (r < 0.0) throw std::invalid_argument("balanced_fraction: r must be >= 0");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  BalancedReport rep;
  if (n <= exact_cap) {
    rep.exact = true;
    std::int64_t hits = 0;
    std::int64_t subsets = 0;
    const std::uint64_t end = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < end; ++mask) {
      if (std::popcount(mask) != i) continue;
      double prefix = 0.0;
      for (int j = 0; j < n; ++j) {
        if (mask >> j & 1U) prefix += weights[j];
      }
      ++subsets;
      if (std::abs(w0 + 2.0 * prefix - total) <= r) ++hits;
    }
    rep.estimate = static_cast<double>(hits) / static_cast<double>(subsets);
    return rep;
  }
  if (samples < 1) throw std::invalid_argument("balanced_fraction: samples must be >= 1");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t hits = 0;
  for (std::int64_t t = 0; t < samples; ++t) {
    sample_permutation(rng, perm);
    double prefix = 0.0;
    for (int j = 0; j < i; ++j) prefix += weights[perm[j]];
    if (std::abs(w0 + 2.0 * prefix - total) <= r) ++hits;
  }
  rep.samples = samples;
  rep.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  rep.stderr_ = std::sqrt(rep.estimate * (1.0 - rep.estimate) / static_cast<double>(samples));
  return rep;
}

// Upper bound on p(r, i) for monotone forms with |w0| <= (1 - eta) sum w and
// sum w >= (2 / eta) r.
inline double markov_balance_bound(double eta, int i, int n) {
  return (4.0 / eta) * static_cast<double>(std::min(i, n - i)) / n;
}

// Each coordinate is +1 independently with probability `bias`.
class BiasedDist {
 public:
  BiasedDist(int n, double bias) : n_(n), bias_(bias) {
    if (n < 1) throw std::invalid_argument("BiasedDist: n must be >= 1");
    if (!(bias > 0.0 && bias < 1.0)) throw std::invalid_argument("BiasedDist: bias must lie in (0, 1)");
  }

  int n() const { return n_; }
  double bias() const { return bias_; }

  double pmf(const BitString& x) const {
    check_same_length("BiasedDist::pmf", static_cast<std::size_t>(n_), x.size());
    return level_mass(x.weight());
  }

  // Mass of one string with `wt` coordinates equal to +1.
  double level_mass(int wt) const {
    return std::pow(bias_, wt) * std::pow(1.0 - bias_, n_ - wt);
  }

  void sample_into(Rng& rng, BitString& x) const {
    for (int j = 0; j < n_; ++j) x.set(static_cast<std::size_t>(j), uniform01(rng) < bias_ ? 1 : -1);
  }

  BitString sample(Rng& rng) const {
    BitString x = BitString::constant(n_, -1);
    sample_into(rng, x);
    return x;
  }

 private:
  int n_;
  double bias_;
};

struct BiasedAntiConcReport {
  AntiConcReport report;
  int k = 0;              // coordinates with |w_i| >= r
  bool vacuous = false;   // k == 0, no bound
  double bound = std::numeric_limits<double>::infinity();
  bool violation = false; // estimate - 5 stderr > bound
};

// Pr_{x~D}[|w.x - theta| < r] against the Littlewood-Offord bound
// 1/sqrt(k bias (1 - bias)).
inline BiasedAntiConcReport anticonc_biased(const VotingGame& game, double r, double bias,
                                            std::int64_t samples, Rng& rng,
                                            int exact_cap = kDefaultEnumerationCap) {
  detail::check_radius(r);
  const int n = game.n();
  const BiasedDist dist(n, bias);
  BiasedAntiConcReport out;
  AntiConcReport& rep = out.report;
  rep.r = r;
  rep.distribution = "biased";
  rep.bias = bias;
  if (n <= exact_cap) {
    rep.exact = true;
    const std::uint64_t end = std::uint64_t{1} << n;
    BitString x = BitString::constant(n, -1);
    for (std::uint64_t mask = 0; mask < end; ++mask) {
      x.assign_mask(mask);
      if (std::abs(game.margin(x)) < r) rep.estimate += dist.level_mass(std::popcount(mask));
    }
  } else {
    if (samples < 1) throw std::invalid_argument("anticonc_biased: samples must be >= 1");
    BitString x = BitString::constant(n, -1);
    std::int64_t hits = 0;
    for (std::int64_t t = 0; t < samples; ++t) {
      dist.sample_into(rng, x);
      if (std::abs(game.margin(x)) < r) ++hits;
    }
    detail::finish_sampled(rep, hits, samples);
  }
  for (double w : game.weights()) {
    if (std::abs(w) >= r) ++out.k;
  }
  out.vacuous = out.k == 0;
  if (!out.vacuous) {
    out.bound = 1.0 / std::sqrt(out.k * bias * (1.0 - bias));
    out.violation = rep.estimate - 5.0 * rep.stderr_ > out.bound;
  }
  return out;
}

struct DistanceReport {
  double d_shapley = 0.0;
  double d_fourier = 0.0;
  double d_correlation = 0.0;  // over indices 0..n
  // d_shapley <= 4/sqrt(n) + Lambda(n)/(2 beta) d_fourier.
  double shapley_rhs = 0.0;
  double shapley_slack = 0.0;
  // d_fourier <= sqrt(2 (alpha^2 n^2 + beta^2)) d_correlation; index 0 has
  // factor 1, which the constant dominates.
  double fourier_constant = 0.0;
  double fourier_rhs = 0.0;
  double fourier_slack = 0.0;
};

// Exact distances between two functions with range [-1, 1].
template <BooleanOracle F, BooleanOracle G>
DistanceReport distance_report(const F& f, const G& g, int n, int cap = 12) {
  if (n < 3) throw std::invalid_argument("distance_report: n must be >= 3");
  check_enumeration_cap(n, cap);
  const FourierBasis basis = basis_coeffs(n);
  DistanceReport rep;
  rep.d_shapley = d_shapley(shapley_exact_truthtable(f, n, cap).shapley,
                            shapley_exact_truthtable(g, n, cap).shapley);
  rep.d_fourier = d_fourier(exact_fourier_enum(f, n, cap), exact_fourier_enum(g, n, cap));
  rep.d_correlation = euclidean_distance(exact_correlations_enum(f, n, cap).values,
                                         exact_correlations_enum(g, n, cap).values);
  rep.shapley_rhs = 4.0 / std::sqrt(static_cast<double>(n)) +
                    lambda_n(n) / (2.0 * basis.beta) * rep.d_fourier;
  rep.shapley_slack = rep.shapley_rhs - rep.d_shapley;
  const double an = basis.alpha * n;
  rep.fourier_constant = std::max(1.0, std::sqrt(2.0 * (an * an + basis.beta * basis.beta)));
  rep.fourier_rhs = rep.fourier_constant * rep.d_correlation;
  rep.fourier_slack = rep.fourier_rhs - rep.d_fourier;
  return rep;
}

struct Ell1Report {
  double ell1 = 0.0;    // E_mu |f - g|
  double rho = 0.0;     // d_fourier(f, g)
  double delta = 0.0;
  double kappa = 0.0;   // Pr_mu[|w.x - theta| <= delta]
  bool premise = false; // kappa <= 1/2 and |theta| <= ||w||_1
  double bound = 0.0;   // 4 ||w||_1 sqrt(rho) / delta + 2 kappa
  double slack = 0.0;
};

// l1 closeness of an LTF f and a bounded g from their Fourier distance and
// the anti-concentration of f's affine form at radius delta.
template <BooleanOracle G>
Ell1Report ell1_transfer_report(const VotingGame& f, const G& g, double delta,
                                int cap = kDefaultEnumerationCap) {
  detail::check_radius(delta);
  const int n = f.n();
  if (n < 3) throw std::invalid_argument("ell1_transfer_report: n must be >= 3");
  check_enumeration_cap(n, cap);
  const MuDistribution mu(n);
  Ell1Report rep;
  rep.delta = delta;
  for_each_support_point(n, [&](const BitString& x, int wt, std::uint64_t) {
    const double p = mu.point_mass(wt);
    rep.ell1 += p * std::abs(static_cast<double>(f(x)) - static_cast<double>(g(x)));
    if (std::abs(f.margin(x)) <= delta) rep.kappa += p;
  });
  rep.rho = d_fourier(exact_fourier_enum(f, n, cap), exact_fourier_enum(g, n, cap));
  const double l1w = f.l1_norm();
  rep.premise = rep.kappa <= 0.5 && std::abs(f.threshold()) <= l1w;
  rep.bound = 4.0 * l1w * std::sqrt(rep.rho) / delta + 2.0 * rep.kappa;
  rep.slack = rep.bound - rep.ell1;
  return rep;
}

struct DisagreementReport {
  double fourier_norm = 0.0;  // sqrt(sum_i <f - h, L_i>^2)
  double disagreement = 0.0;  // Pr_mu[f != h]
  double bound = 0.0;         // 2 sqrt(disagreement)
  double slack = 0.0;
};

// Bessel applied to f - h, whose square is 4 on disagreements.
template <BooleanOracle F, BooleanOracle H>
DisagreementReport disagreement_report(const F& f, const H& h, int n,
                                       int cap = kDefaultEnumerationCap) {
  if (n < 3) throw std::invalid_argument("disagreement_report: n must be >= 3");
  check_enumeration_cap(n, cap);
  const MuDistribution mu(n);
  DisagreementReport rep;
  for_each_support_point(n, [&](const BitString& x, int wt, std::uint64_t) {
    if (f(x) != h(x)) rep.disagreement += mu.point_mass(wt);
  });
  rep.fourier_norm = d_fourier(exact_fourier_enum(f, n, cap), exact_fourier_enum(h, n, cap));
  rep.bound = 2.0 * std::sqrt(rep.disagreement);
  rep.slack = rep.bound - rep.fourier_norm;
  return rep;
}

}  // namespace shapley_forge
