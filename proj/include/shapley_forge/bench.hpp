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

// Desk-scale benchmark suites. Every row records one metric for one
// instance and passes when value <= threshold.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shapley_forge/boosting.hpp"
#include "shapley_forge/diagnostics.hpp"
#include "shapley_forge/generators.hpp"
#include "shapley_forge/inverse_solver.hpp"
#include "shapley_forge/mu_distribution.hpp"
#include "shapley_forge/power_indices.hpp"
#include "shapley_forge/random.hpp"

namespace shapley_forge {

struct BenchRow {
  std::string instance;
  int n = 0;
  std::string metric;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct BenchOptions {
  std::uint64_t seed = 1;
  std::optional<int> instances;  // per-suite default when unset
  int threads = 1;
};

inline const std::vector<std::string>& bench_suites() {
  static const std::vector<std::string> names{"identities", "roundtrip", "boosting", "anticonc"};
  return names;
}

namespace detail {

inline void push_row(std::vector<BenchRow>& rows, std::string instance, int n, std::string metric,
                     double value, double threshold) {
  rows.push_back({std::move(instance), n, std::move(metric), value, threshold,
                  std::isfinite(value) && value <= threshold});
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

template <BooleanOracle F>
void identity_rows(std::vector<BenchRow>& rows, const std::string& id, const F& f, int n) {
  constexpr double kTol = 1e-10;
  const auto direct = shapley_exact_truthtable(f, n);
  const auto corr = exact_correlations_enum(f, n);
  const auto fourier = exact_fourier_enum(f, n);
  const FourierBasis basis = basis_coeffs(n);
  const double top = static_cast<double>(f(BitString::constant(n, 1)));
  const double bottom = static_cast<double>(f(BitString::constant(n, -1)));
  double mean = 0.0;
  for (int j = 1; j <= n; ++j) mean += corr[j];
  mean /= n;

  const auto forward = shapley_from_correlations(corr, top, bottom);
  push_row(rows, id, n, "shapley_from_correlations", max_abs_diff(forward.values, direct.shapley.values), kTol);
  const auto back = correlations_from_shapley(direct.shapley, direct.nu, mean, corr[0]);
  push_row(rows, id, n, "correlations_from_shapley", max_abs_diff(back.values, corr.values), kTol);
  const auto via_fourier = shapley_from_fourier(fourier, direct.nu, basis);
  push_row(rows, id, n, "shapley_from_fourier", max_abs_diff(via_fourier.values, direct.shapley.values), kTol);
  double sum = 0.0;
  for (double v : direct.shapley.values) sum += v;
  push_row(rows, id, n, "telescoping", std::abs(sum - (top - bottom)), kTol);
}

}  // namespace detail

// Conversion identities under exact enumeration, n = 3..10.
inline std::vector<BenchRow> bench_identities(const BenchOptions& opt) {
  const int per_n = opt.instances.value_or(10);
  std::vector<BenchRow> rows;
  for (int n = 3; n <= 10; ++n) {
    for (int k = 0; k < per_n; ++k) {
      Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(n) * 100000 + k));
      const std::string tag = "n" + std::to_string(n) + "-" + std::to_string(k);
      detail::identity_rows(rows, "bounded-" + tag, random_bounded_function(rng, n), n);
      detail::identity_rows(rows, "ltf-" + tag, random_real_ltf(rng, n), n);
    }
  }
  return rows;
}

// Exact Shapley targets of random 0.1-reasonable games, solved with the DP
// oracle (xi = 0.005, grid 0.05, eps = 0.1); the metric is the exact
// distance of the output game.
inline std::vector<BenchRow> bench_roundtrip(const BenchOptions& opt) {
  const int count = opt.instances.value_or(20);
  std::vector<BenchRow> rows;
  for (int k = 0; k < count; ++k) {
    Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(k)));
    const int n = 6 + static_cast<int>(uniform_below(rng, 7));
    const VotingGame game = random_reasonable_game(rng, n, 10, 0.1);
    const auto target = shapley_exact_dp(game).shapley;
    SolveConfig cfg;
    cfg.oracle_mode = OracleMode::kExactDp;
    cfg.seed = derive_seed(opt.seed, 1000000 + static_cast<std::uint64_t>(k));
    cfg.threads = opt.threads;
    const SolveResult res = solve_is(target.values, cfg);
    const double d = res.game ? d_shapley(target, shapley_exact_dp(*res.game).shapley)
                              : std::numeric_limits<double>::infinity();
    detail::push_row(rows, "game-" + std::to_string(k), n, "exact_dshapley", d, 0.1);
  }
  return rows;
}

// Realizable targets (exact correlations of random LTFs), boosted with the
// exact enumeration oracle at xi = 0.1 and 0.05.
inline std::vector<BenchRow> bench_boosting(const BenchOptions& opt) {
  const int count = opt.instances.value_or(20);
  std::vector<BenchRow> rows;
  for (int k = 0; k < count; ++k) {
    Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(k)));
    const int n = 4 + static_cast<int>(uniform_below(rng, 7));
    const VotingGame game = random_real_ltf(rng, n);
    const auto a = exact_correlations_enum(game, n);
    for (double xi : {0.1, 0.05}) {
      EnumCorrelationOracle oracle(n);
      const BoostResult res = boost(BoostTargets{a.values, xi}, oracle, n);
      const auto got = exact_correlations_enum(res.lbf, n);
      const std::string id = "ltf-" + std::to_string(k) + "-xi" + std::to_string(xi).substr(0, 4);
      detail::push_row(rows, id, n, "max_correlation_error", detail::max_abs_diff(got.values, a.values), xi);
      detail::push_row(rows, id, n, "iterations", static_cast<double>(res.iterations),
                       static_cast<double>(boost_iteration_cap(xi)));
      detail::push_row(rows, id, n, "l1_minus_iterations",
                       std::abs(static_cast<double>(res.state.l1() - res.iterations)), 0.0);
    }
  }
  return rows;
}

// Littlewood-Offord, balanced-permutation and distance inequalities on
// fuzzed instances; values are excesses over the bound.
inline std::vector<BenchRow> bench_anticonc(const BenchOptions& opt) {
  const int count = opt.instances.value_or(50);
  std::vector<BenchRow> rows;
  for (int k = 0; k < count; ++k) {
    Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(k)));
    const std::string id = "fuzz-" + std::to_string(k);
    {
      const int n = 3 + static_cast<int>(uniform_below(rng, 10));
      const VotingGame g = random_signed_integer_ltf(rng, n, 5);
      const double r = 0.5 + static_cast<double>(uniform_below(rng, 4));
      const double bias = 0.05 + 0.9 * uniform01(rng);
      const auto rep = anticonc_biased(g, r, bias, 0, rng);
      if (!rep.vacuous) {
        detail::push_row(rows, id, n, "littlewood_offord_excess", rep.report.estimate - rep.bound, 0.0);
      }
    }
    {
      const int n = 3 + static_cast<int>(uniform_below(rng, 6));
      const double eta = 0.1 + 0.8 * uniform01(rng);
      const VotingGame g = random_reasonable_game(rng, n, 10, eta);
      const double total = g.l1_norm();
      const double r = (eta / 2.0) * total * uniform01(rng);
      const int i = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n - 1)));
      const auto p = balanced_fraction(g.weights(), -g.threshold(), r, i, 0, rng);
      detail::push_row(rows, id, n, "balanced_fraction_excess",
                       p.estimate - markov_balance_bound(eta, i, n), 0.0);
    }
    {
      const int n = 4 + static_cast<int>(uniform_below(rng, 7));
      const VotingGame f = random_real_ltf(rng, n);
      const VotingGame g = random_real_ltf(rng, n);
      const auto rep = distance_report(f, g, n);
      detail::push_row(rows, id, n, "shapley_fourier_excess", -rep.shapley_slack, 0.0);
      detail::push_row(rows, id, n, "fourier_correlation_excess", -rep.fourier_slack, 1e-12);
    }
  }
  return rows;
}

inline std::vector<BenchRow> run_bench(const std::string& suite, const BenchOptions& opt) {
  if (suite == "identities") return bench_identities(opt);
  if (suite == "roundtrip") return bench_roundtrip(opt);
  if (suite == "boosting") return bench_boosting(opt);
  if (suite == "anticonc") return bench_anticonc(opt);
  throw std::invalid_argument("unknown bench suite '" + suite +
                              "' (expected identities, roundtrip, boosting or anticonc)");
}

}  // namespace shapley_forge
