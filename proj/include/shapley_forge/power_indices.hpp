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

// Generalized Shapley values f~(i) = E_pi[f(x+(pi,i)) - f(x(pi,i))] and the
// identities tying them to mu-correlations and mu-Fourier coefficients.
// For a monotone game these are twice the classical Shapley-Shubik indices.

#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "shapley_forge/errors.hpp"
#include "shapley_forge/game_model.hpp"
#include "shapley_forge/mu_distribution.hpp"
#include "shapley_forge/subset_counts.hpp"
#include "shapley_forge/vectors.hpp"

namespace shapley_forge {

struct ShapleyReport {
  ShapleyVector shapley;
  double nu = 0.0;  // (f_top - f_bottom) / n
  double f_top = 0.0;
  double f_bottom = 0.0;
};

inline ShapleyReport make_report(ShapleyVector s, double f_top, double f_bottom) {
  ShapleyReport r;
  const auto n = static_cast<double>(s.size());
  r.shapley = std::move(s);
  r.f_top = f_top;
  r.f_bottom = f_bottom;
  r.nu = (f_top - f_bottom) / n;
  return r;
}

// Sums f(x) x_i over the whole cube with the permutation-count weights
// (wt-1)!(n-wt)!/n! when x_i = +1 and wt!(n-wt-1)!/n! when x_i = -1, both
// written as reciprocals of wt * C(n, wt) and (n - wt) * C(n, wt).
template <BooleanOracle F>
ShapleyReport shapley_exact_truthtable(const F& f, int n,
                                       int cap = kDefaultEnumerationCap) {
  if (n < 1) throw std::invalid_argument("shapley_exact_truthtable: n must be >= 1");
  check_enumeration_cap(n, cap);
  std::vector<double> w_plus(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<double> w_minus(static_cast<std::size_t>(n + 1), 0.0);
  for (int wt = 0; wt <= n; ++wt) {
    const double c = binomial(n, wt);
    if (wt > 0) w_plus[wt] = 1.0 / (wt * c);
    if (wt < n) w_minus[wt] = 1.0 / ((n - wt) * c);
  }
  ShapleyVector s(static_cast<std::size_t>(n));
  BitString x = BitString::constant(n, -1);
  const std::uint64_t count = std::uint64_t{1} << n;
  double f_top = 0.0, f_bottom = 0.0;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    x.assign_mask(mask);
    const double fx = static_cast<double>(f(x));
    if (mask == 0) f_bottom = fx;
    if (mask == count - 1) f_top = fx;
    const int wt = std::popcount(mask);
    const double plus = w_plus[wt] * fx;
    const double minus = w_minus[wt] * fx;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) s[i] += plus; else s[i] -= minus;
    }
  }
  return make_report(std::move(s), f_top, f_bottom);
}

// Pivotal counting for an LTF with integer weights: voter i contributes
// k!(n-k-1)!/n! * (F(s + w_i) - F(s)) for every k-subset of the others with
// yes-weight s, where F(s) = sign(2s - total - theta).
inline ShapleyReport shapley_exact_dp(const VotingGame& game,
                                      double budget = kDefaultDpBudget) {
  if (!game.has_integer_weights()) {
    throw std::invalid_argument("shapley_exact_dp: weights must be integers");
  }
  const int n = game.n();
  std::vector<std::int64_t> w;
  std::int64_t total = 0;
  for (double v : game.weights()) {
    w.push_back(static_cast<std::int64_t>(v));
    total += w.back();
  }
  const double theta = game.threshold();
  auto outcome = [&](std::int64_t s) {
    return 2.0 * static_cast<double>(s) - static_cast<double>(total) - theta >= 0.0 ? 1.0 : -1.0;
  };
  std::vector<double> coef(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) coef[k] = 1.0 / (n * binomial(n - 1, k));

  const auto excluded = exclusion_tables(w, budget);
  ShapleyVector s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto& t = excluded[static_cast<std::size_t>(i)];
    const std::int64_t wi = w[static_cast<std::size_t>(i)];
    double acc = 0.0;
    for (std::int64_t sum = t.min_sum(); sum <= t.max_sum(); ++sum) {
      const double jump = outcome(sum + wi) - outcome(sum);
      if (jump == 0.0) continue;
      double ways = 0.0;
      for (int k = 0; k < n; ++k) ways += coef[k] * t.count(k, sum);
      acc += jump * ways;
    }
    s[i] = acc;
  }
  // f(1) and f(-1) have yes-weights total and 0.
  return make_report(std::move(s), outcome(total), outcome(0));
}

inline ShapleyReport shapley_exact_dp(const QuotaGame& game,
                                      double budget = kDefaultDpBudget) {
  return shapley_exact_dp(quota_to_ltf(game), budget);
}

// f~(i) = (f(1) - f(-1))/n + (Lambda(n)/2) (f*(i) - mean_j f*(j)).
// Entry 0 of the correlation vector is ignored.
inline ShapleyVector shapley_from_correlations(const CorrelationVector& c,
                                               double f_top, double f_bottom) {
  if (c.size() < 3) throw std::invalid_argument("shapley_from_correlations: n must be >= 2");
  const int n = static_cast<int>(c.size()) - 1;
  const double lam = lambda_n(n);
  double mean = 0.0;
  for (int j = 1; j <= n; ++j) mean += c[j];
  mean /= n;
  const double nu = (f_top - f_bottom) / n;
  ShapleyVector s(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) s[i - 1] = nu + 0.5 * lam * (c[i] - mean);
  return s;
}

// Inverse of shapley_from_correlations given the two scalars it cannot
// recover: nu and the mean correlation. Entry 0 is set to f_star_0.
inline CorrelationVector correlations_from_shapley(const ShapleyVector& s, double nu,
                                                   double mean_corr,
                                                   double f_star_0 = 0.0) {
  const int n = static_cast<int>(s.size());
  const double lam = lambda_n(n);
  CorrelationVector c(static_cast<std::size_t>(n + 1));
  c[0] = f_star_0;
  for (int i = 1; i <= n; ++i) c[i] = (2.0 / lam) * (s[i - 1] - nu) + mean_corr;
  return c;
}

// f^(0) = f*(0) and f^(i) = alpha sum_j f*(j) + beta f*(i).
inline FourierVector fourier_from_correlations(const CorrelationVector& c,
                                               const FourierBasis& basis) {
  check_same_length("fourier_from_correlations", static_cast<std::size_t>(basis.n + 1),
                    c.size());
  double sum = 0.0;
  for (int j = 1; j <= basis.n; ++j) sum += c[j];
  FourierVector f(c.size());
  f[0] = c[0];
  for (int i = 1; i <= basis.n; ++i) f[i] = basis.alpha * sum + basis.beta * c[i];
  return f;
}

// f~(i) = (Lambda(n) / (2 beta)) (f^(i) - mean_j f^(j)) + nu.
inline ShapleyVector shapley_from_fourier(const FourierVector& f, double nu,
                                          const FourierBasis& basis) {
  check_same_length("shapley_from_fourier", static_cast<std::size_t>(basis.n + 1),
                    f.size());
  const int n = basis.n;
  double mean = 0.0;
  for (int j = 1; j <= n; ++j) mean += f[j];
  mean /= n;
  const double scale = lambda_n(n) / (2.0 * basis.beta);
  ShapleyVector s(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) s[i - 1] = scale * (f[i] - mean) + nu;
  return s;
}

// f^(i) = E_mu[f L_i] by enumeration.
template <BooleanOracle F>
FourierVector exact_fourier_enum(const F& f, int n, int cap = kDefaultEnumerationCap) {
  const FourierBasis basis = basis_coeffs(n);
  check_enumeration_cap(n, cap);
  const MuDistribution mu(n);
  FourierVector out(static_cast<std::size_t>(n + 1));
  for_each_support_point(n, [&](const BitString& x, int wt, std::uint64_t) {
    const double v = mu.point_mass(wt) * static_cast<double>(f(x));
    out[0] += v;
    const double sum = 2.0 * wt - n;
    for (int i = 1; i <= n; ++i) {
      out[i] += v * (basis.alpha * sum + basis.beta * x[static_cast<std::size_t>(i - 1)]);
    }
  });
  return out;
}

// Shapley values by enumerated correlations plus the correlation identity.
template <BooleanOracle F>
ShapleyReport shapley_via_correlations(const F& f, int n,
                                       int cap = kDefaultEnumerationCap) {
  const auto c = exact_correlations_enum(f, n, cap);
  const double top = static_cast<double>(f(BitString::constant(n, 1)));
  const double bottom = static_cast<double>(f(BitString::constant(n, -1)));
  return make_report(shapley_from_correlations(c, top, bottom), top, bottom);
}

inline double d_shapley(const std::vector<double>& a, const ShapleyVector& b) {
  check_same_length("d_shapley", a.size(), b.size());
  return euclidean_distance(a, b.values);
}

inline double d_shapley(const ShapleyVector& a, const ShapleyVector& b) {
  return d_shapley(a.values, b);
}

inline double d_fourier(const FourierVector& a, const FourierVector& b) {
  check_same_length("d_fourier", a.size(), b.size());
  return euclidean_distance(a.values, b.values);
}

}  // namespace shapley_forge
