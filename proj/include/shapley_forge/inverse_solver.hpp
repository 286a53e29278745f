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

// Inverse Shapley solving. The target Shapley vector fixes every coordinate
// correlation up to two unknown scalars, f*(0) and the mean correlation;
// the solver grids over both, boosts an LBF toward each guessed correlation
// vector, thresholds it, and keeps the validated candidate closest to the
// target.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "shapley_forge/boosting.hpp"
#include "shapley_forge/errors.hpp"
#include "shapley_forge/estimators.hpp"
#include "shapley_forge/game_model.hpp"
#include "shapley_forge/mu_distribution.hpp"
#include "shapley_forge/power_indices.hpp"
#include "shapley_forge/random.hpp"
#include "shapley_forge/subset_counts.hpp"
#include "shapley_forge/vectors.hpp"

namespace shapley_forge {

enum class OracleMode { kExactEnum, kExactDp, kSampled };

inline const char* to_string(OracleMode mode) {
  switch (mode) {
    case OracleMode::kExactEnum: return "enum";
    case OracleMode::kExactDp: return "dp";
    case OracleMode::kSampled: return "sampled";
  }
  return "?";
}

inline OracleMode parse_oracle_mode(const std::string& s) {
  if (s == "enum" || s == "exact-enum") return OracleMode::kExactEnum;
  if (s == "dp" || s == "exact-dp") return OracleMode::kExactDp;
  if (s == "sampled") return OracleMode::kSampled;
  throw std::invalid_argument("unknown oracle mode '" + s + "' (expected enum, dp or sampled)");
}

struct SolveConfig {
  double epsilon = 0.1;
  double xi = 0.005;
  double grid_step = 0.05;
  double delta = 0.01;
  std::uint64_t seed = 0;
  OracleMode oracle_mode = OracleMode::kExactDp;
  std::optional<std::int64_t> weight_bound;
  double eta = 0.1;  // recorded only
  int threads = 1;
  int enumeration_cap = kDefaultEnumerationCap;
  double dp_budget = kDefaultDpBudget;
  std::int64_t certificate_interval = 32;
  // Caps every Monte-Carlo sample size in sampled mode.
  std::optional<std::int64_t> max_samples;

  void validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("SolveConfig: epsilon must be > 0");
    if (!(xi > 0.0)) throw std::invalid_argument("SolveConfig: xi must be > 0");
    if (!(grid_step > 0.0)) throw std::invalid_argument("SolveConfig: grid step must be > 0");
    if (!(delta > 0.0 && delta < 1.0)) {
      throw std::invalid_argument("SolveConfig: delta must lie in (0, 1)");
    }
    if (threads < 1) throw std::invalid_argument("SolveConfig: threads must be >= 1");
  }
};

struct GuessPoint {
  double f_star_0 = 0.0;
  double mean_corr = 0.0;
};

// -1, -1 + step, ..., always ending exactly at 1.
inline std::vector<double> guess_axis(double step) {
  if (!(step > 0.0)) throw std::invalid_argument("guess_axis: step must be > 0");
  const auto intervals = static_cast<std::int64_t>(std::ceil(2.0 / step - 1e-9));
  std::vector<double> axis;
  axis.reserve(static_cast<std::size_t>(intervals + 1));
  for (std::int64_t k = 0; k < intervals; ++k) axis.push_back(-1.0 + static_cast<double>(k) * step);
  axis.push_back(1.0);
  return axis;
}

// f*(0) varies slowest; grid index = row * axis size + column.
inline std::vector<GuessPoint> guess_grid(double step) {
  const auto axis = guess_axis(step);
  std::vector<GuessPoint> grid;
  grid.reserve(axis.size() * axis.size());
  for (double f0 : axis) {
    for (double mean : axis) grid.push_back({f0, mean});
  }
  return grid;
}

// Game with weights c_i and threshold -c_0 - 1/2: the same function as
// sign(gamma (c.x + c_0)) with sign(0) = +1, in exact integer arithmetic.
inline VotingGame integer_representative(const BoostState& state) {
  std::vector<double> w(state.counts.begin() + 1, state.counts.end());
  return VotingGame(std::move(w), -static_cast<double>(state.counts[0]) - 0.5);
}

// Exact Shapley values of a game under the exact oracle modes.
inline ShapleyReport exact_shapley(const VotingGame& game, OracleMode mode,
                                   int cap = kDefaultEnumerationCap,
                                   double budget = kDefaultDpBudget) {
  if (mode == OracleMode::kExactDp && game.has_integer_weights()) {
    return shapley_exact_dp(game, budget);
  }
  return shapley_exact_truthtable(game, game.n(), cap);
}

struct Candidate {
  VotingGame game{std::vector<double>{0.0}, 0.0};  // threshold_lbf(lbf)
  VotingGame integer_game{std::vector<double>{0.0}, 0.0};
  LinearBoundedFunction lbf{std::vector<double>{0.0}, 0.0};
  BoostState state;
  CorrelationVector targets;
  BoostStatus status = BoostStatus::kConverged;
  std::int64_t iterations = 0;
  bool targets_out_of_range = false;  // some |a*(i)| > 1
  bool pruned = false;                // rejected before boosting; game is a placeholder
  bool contract_breach = false;       // boosting hit the 64/xi^2 cap
};

// Monotone non-constant games have f(1) = 1 and f(-1) = -1.
inline double monotone_nu(int n) { return 2.0 / n; }

// Probability budget for one stochastic call in sampled mode: split evenly
// over every potential validator and boosting-oracle call on the grid.
inline double per_call_delta(const SolveConfig& cfg, std::size_t grid_points) {
  const double boost_calls =
      static_cast<double>(boost_iteration_cap(cfg.xi) + 1) *
      (1.0 + (cfg.certificate_interval > 0 ? 1.0 / static_cast<double>(cfg.certificate_interval) : 0.0)) + 1.0;
  return cfg.delta / (static_cast<double>(grid_points) * (boost_calls + 1.0));
}

// False only when no f with range [-1, 1] has every correlation within
// xi/16 of the targets: either a target lies outside [-1, 1] by more than
// that, or the Fourier image violates Bessel's inequality sum f^(l)^2 <= 1
// by more than the operator norm of correlation -> Fourier allows.
inline bool feasible_targets(const CorrelationVector& targets, double xi) {
  const double tol = xi / 16.0;
  for (double v : targets.values) {
    if (std::abs(v) > 1.0 + tol) return false;
  }
  const int n = static_cast<int>(targets.size()) - 1;
  const FourierBasis basis = basis_coeffs(n);
  const FourierVector f = fourier_from_correlations(targets, basis);
  double norm2 = 0.0;
  for (double v : f.values) norm2 += v * v;
  const double op = std::max({1.0, std::abs(basis.beta), std::abs(basis.beta + n * basis.alpha)});
  const double radius = 1.0 + op * tol * std::sqrt(n + 1.0) + 1e-12;
  return norm2 <= radius * radius;
}

namespace detail {

template <CorrelationOracle O>
Candidate run_candidate(const std::vector<double>& target, const GuessPoint& guess,
                        const SolveConfig& cfg, O& oracle) {
  const int n = static_cast<int>(target.size());
  Candidate out;
  out.targets = correlations_from_shapley(ShapleyVector(target), monotone_nu(n),
                                          guess.mean_corr, guess.f_star_0);
  for (double v : out.targets.values) {
    if (std::abs(v) > 1.0) out.targets_out_of_range = true;
  }
  if (!feasible_targets(out.targets, cfg.xi)) {
    out.status = BoostStatus::kInfeasible;
    out.pruned = true;
    return out;
  }
  BoostTargets bt{out.targets.values, cfg.xi};
  BoostOptions options;
  options.certificate_interval = cfg.certificate_interval;
  try {
    BoostResult r = boost(bt, oracle, n, options);
    out.state = std::move(r.state);
    out.status = r.status;
    out.iterations = r.iterations;
    out.lbf = r.lbf;
  } catch (const BoostContractViolation&) {
    out.contract_breach = true;
    out.status = BoostStatus::kInfeasible;
    return out;
  }
  out.game = threshold_lbf(out.lbf);
  out.integer_game = integer_representative(out.state);
  return out;
}

}  // namespace detail

// Converts the target to correlation targets under the guess, boosts with
// the configured oracle, and thresholds the resulting LBF.
inline Candidate candidate_from_guess(const std::vector<double>& target,
                                      const GuessPoint& guess, const SolveConfig& cfg,
                                      Rng& rng, double delta_per_call = 0.0) {
  cfg.validate();
  const int n = static_cast<int>(target.size());
  if (n < 3) throw std::invalid_argument("candidate_from_guess: n must be >= 3");
  switch (cfg.oracle_mode) {
    case OracleMode::kExactEnum: {
      EnumCorrelationOracle oracle(n, cfg.enumeration_cap);
      return detail::run_candidate(target, guess, cfg, oracle);
    }
    case OracleMode::kExactDp: {
      DpCorrelationOracle oracle(n, cfg.dp_budget);
      return detail::run_candidate(target, guess, cfg, oracle);
    }
    case OracleMode::kSampled: {
      const double d = delta_per_call > 0.0 ? delta_per_call : per_call_delta(cfg, 1);
      SampledCorrelationOracle oracle(n, cfg.xi, d, rng, cfg.max_samples);
      return detail::run_candidate(target, guess, cfg, oracle);
    }
  }
  throw std::logic_error("unreachable oracle mode");
}

struct Validation {
  bool accepted = false;
  double est = std::numeric_limits<double>::infinity();
};

// Accepts iff the estimated distance to the target is at most 8 eps / 10.
// Exact modes compute the Shapley vector exactly; sampled mode estimates it
// to +-eps/10.
inline Validation validate_candidate(const VotingGame& game, const std::vector<double>& target,
                                     const SolveConfig& cfg, Rng& rng,
                                     double delta_per_call = 0.0) {
  check_same_length("validate_candidate", target.size(), static_cast<std::size_t>(game.n()));
  Validation v;
  if (cfg.oracle_mode == OracleMode::kSampled) {
    EstimateConfig ecfg;
    ecfg.gamma = cfg.epsilon / 10.0;
    ecfg.delta = delta_per_call > 0.0 ? delta_per_call : cfg.delta;
    ecfg.max_samples = cfg.max_samples;
    v.est = d_shapley(target, estimate_shapley(game, game.n(), ecfg, rng));
  } else {
    v.est = d_shapley(target, exact_shapley(game, cfg.oracle_mode, cfg.enumeration_cap,
                                            cfg.dp_budget).shapley);
  }
  v.accepted = v.est <= 0.8 * cfg.epsilon;
  return v;
}

enum class SolveStatus { kSolved, kNoSolution };

struct SolveResult {
  std::optional<VotingGame> game;
  double est_dshapley = std::numeric_limits<double>::infinity();
  GuessPoint guess;
  std::int64_t boost_iterations = 0;
  SolveStatus status = SolveStatus::kNoSolution;
  double epsilon = 0.0;
  double xi = 0.0;
  std::size_t grid_points = 0;
  std::size_t accepted_points = 0;
  std::size_t infeasible_points = 0;
  std::vector<std::string> warnings;
};

namespace detail {

struct PointOutcome {
  bool have_candidate = false;
  Candidate candidate;
  Validation validation;
};

template <class MakeOracle>
void evaluate_grid(const std::vector<double>& target, const std::vector<GuessPoint>& grid,
                   const SolveConfig& cfg, double delta_call, MakeOracle&& make_oracle,
                   std::vector<PointOutcome>& outcomes) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    auto oracle_slot = make_oracle();
    for (std::size_t idx = next++; idx < grid.size(); idx = next++) {
      Rng rng(derive_seed(cfg.seed, idx));
      auto& oracle = oracle_slot(rng);
      PointOutcome& out = outcomes[idx];
      out.candidate = run_candidate(target, grid[idx], cfg, oracle);
      // A run stopped by the infeasibility certificate still yields an LBF;
      // its threshold is validated like any other candidate.
      if (out.candidate.contract_breach || out.candidate.pruned) continue;
      out.have_candidate = true;
      out.validation = validate_candidate(out.candidate.integer_game, target, cfg, rng, delta_call);
    }
  };
  const int threads = std::max(1, std::min<int>(cfg.threads, static_cast<int>(grid.size())));
  if (threads == 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace detail

inline SolveResult solve_is(const std::vector<double>& target, const SolveConfig& cfg) {
  cfg.validate();
  const int n = static_cast<int>(target.size());
  if (n < 3) throw std::invalid_argument("solve_is: n must be >= 3");
  SolveResult result;
  result.epsilon = cfg.epsilon;
  result.xi = cfg.xi;
  double sum = 0.0;
  for (double a : target) sum += a;
  if (std::abs(sum - 2.0) > 1e-6) {
    result.warnings.push_back("target sums to " + std::to_string(sum) +
                              ", not 2; no monotone non-constant game matches it exactly");
  }
  if (cfg.oracle_mode == OracleMode::kExactEnum) check_enumeration_cap(n, cfg.enumeration_cap);

  const auto grid = guess_grid(cfg.grid_step);
  result.grid_points = grid.size();
  const double delta_call = per_call_delta(cfg, grid.size());
  std::vector<detail::PointOutcome> outcomes(grid.size());

  switch (cfg.oracle_mode) {
    case OracleMode::kExactEnum:
      detail::evaluate_grid(target, grid, cfg, delta_call, [&] {
        return [oracle = EnumCorrelationOracle(n, cfg.enumeration_cap)](Rng&) mutable
                   -> EnumCorrelationOracle& { return oracle; };
      }, outcomes);
      break;
    case OracleMode::kExactDp:
      detail::evaluate_grid(target, grid, cfg, delta_call, [&] {
        return [oracle = DpCorrelationOracle(n, cfg.dp_budget)](Rng&) mutable
                   -> DpCorrelationOracle& { return oracle; };
      }, outcomes);
      break;
    case OracleMode::kSampled:
      detail::evaluate_grid(target, grid, cfg, delta_call, [&] {
        return [&, slot = std::optional<SampledCorrelationOracle>()](Rng& rng) mutable
                   -> SampledCorrelationOracle& {
          slot.emplace(n, cfg.xi, delta_call, rng, cfg.max_samples);
          return *slot;
        };
      }, outcomes);
      break;
  }

  std::optional<std::size_t> best;
  for (std::size_t idx = 0; idx < outcomes.size(); ++idx) {
    const auto& o = outcomes[idx];
    if (!o.have_candidate) {
      ++result.infeasible_points;
      continue;
    }
    if (!o.validation.accepted) continue;
    ++result.accepted_points;
    if (!best) {
      best = idx;
      continue;
    }
    const auto& b = outcomes[*best];
    if (o.validation.est < b.validation.est ||
        (o.validation.est == b.validation.est &&
         o.candidate.iterations < b.candidate.iterations)) {
      best = idx;
    }
  }
  if (best) {
    const auto& o = outcomes[*best];
    result.status = SolveStatus::kSolved;
    result.game = o.candidate.integer_game;
    result.est_dshapley = o.validation.est;
    result.guess = grid[*best];
    result.boost_iterations = o.candidate.iterations;
  }
  return result;
}

// Default boosting tolerance for weight bound W.
inline double bounded_weight_xi(int n, std::int64_t weight_bound) {
  return std::min(0.005, 1.0 / (10.0 * n * static_cast<double>(weight_bound)));
}

inline double bounded_weight_epsilon(int n) { return std::pow(static_cast<double>(n), -1.0 / 8.0); }

// Same pipeline with xi derived from (n, W) and eps = n^(-1/8) unless given.
inline SolveResult solve_isbw(const std::vector<double>& target, std::int64_t weight_bound,
                              SolveConfig cfg, std::optional<double> epsilon = std::nullopt,
                              std::optional<double> xi = std::nullopt) {
  if (weight_bound < 1) throw std::invalid_argument("solve_isbw: weight bound must be >= 1");
  const int n = static_cast<int>(target.size());
  if (n < 3) throw std::invalid_argument("solve_isbw: n must be >= 3");
  cfg.weight_bound = weight_bound;
  cfg.epsilon = epsilon.value_or(bounded_weight_epsilon(n));
  cfg.xi = xi.value_or(bounded_weight_xi(n, weight_bound));
  return solve_is(target, cfg);
}

struct BaselineResult {
  VotingGame game{std::vector<double>{0.0}, 0.0};
  double dshapley = std::numeric_limits<double>::infinity();
};

// Every integer weight vector in [0, B]^n with every half-integer threshold
// strictly inside [-sum w, sum w]; returns the exact d_Shapley minimizer.
// Ties (within 1e-12) go to the smallest |theta|, then enumeration order,
// so e.g. majority wins over AND and OR for the target (2/3, 2/3, 2/3).
inline BaselineResult exhaustive_baseline(const std::vector<double>& target, int weight_cap) {
  const int n = static_cast<int>(target.size());
  if (n < 1 || n > 5) throw BudgetExceeded("exhaustive_baseline: n must be in [1, 5]");
  if (weight_cap < 1 || weight_cap > 6) {
    throw BudgetExceeded("exhaustive_baseline: weight cap must be in [1, 6]");
  }
  std::vector<double> coef(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) coef[k] = 1.0 / (n * binomial(n - 1, k));

  BaselineResult best;
  std::vector<std::int64_t> w(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<double>> prefix(static_cast<std::size_t>(n));
  std::vector<double> shapley(static_cast<std::size_t>(n));
  while (true) {
    std::int64_t total = 0;
    for (auto v : w) total += v;
    if (total > 0) {
      const auto tables = exclusion_tables(w);
      // prefix[i][s + 1] = sum_{s' <= s} sum_k coef(k) N_{-i}(k, s').
      for (int i = 0; i < n; ++i) {
        auto& p = prefix[static_cast<std::size_t>(i)];
        p.assign(static_cast<std::size_t>(total + 2), 0.0);
        for (std::int64_t s = 0; s <= total; ++s) {
          double ways = 0.0;
          for (int k = 0; k < n; ++k) ways += coef[k] * tables[i].count(k, s);
          p[s + 1] = p[s] + ways;
        }
      }
      for (std::int64_t k = -total; k <= total - 1; ++k) {
        const double theta = static_cast<double>(k) + 0.5;
        // Passing needs yes-weight s >= (total + theta) / 2, i.e. s >= q.
        const auto q = static_cast<std::int64_t>(std::ceil((static_cast<double>(total) + theta) / 2.0));
        double dist2 = 0.0;
        for (int i = 0; i < n; ++i) {
          const auto& p = prefix[static_cast<std::size_t>(i)];
          auto clampi = [&](std::int64_t s) { return std::clamp<std::int64_t>(s, 0, total + 1); };
          // Pivotal when q - w_i <= s <= q - 1.
          const double value = 2.0 * (p[clampi(q)] - p[clampi(q - w[i])]);
          shapley[i] = value;
          const double d = value - target[i];
          dist2 += d * d;
        }
        const double dist = std::sqrt(dist2);
        const bool tie = std::abs(dist - best.dshapley) <= 1e-12;
        if ((dist < best.dshapley && !tie) || (tie && std::abs(theta) < std::abs(best.game.threshold()))) {
          best.dshapley = dist;
          best.game = VotingGame(std::vector<double>(w.begin(), w.end()), theta);
        }
      }
    }
    int pos = 0;
    while (pos < n && w[pos] == weight_cap) w[pos++] = 0;
    if (pos == n) break;
    ++w[pos];
  }
  return best;
}

}  // namespace shapley_forge
