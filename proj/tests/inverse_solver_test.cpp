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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "shapley_forge/inverse_solver.hpp"

namespace sf = shapley_forge;
using sf::BitString;
using sf::VotingGame;

namespace {

const std::vector<double> kMajorityTarget{2. / 3, 2. / 3, 2. / 3};

bool same_truth_table(const VotingGame& a, const VotingGame& b) {
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << a.n()); ++m) {
    const auto x = BitString::from_mask(a.n(), m);
    if (a(x) != b(x)) return false;
  }
  return true;
}

sf::SolveConfig exact_config(sf::OracleMode mode = sf::OracleMode::kExactDp) {
  sf::SolveConfig cfg;
  cfg.oracle_mode = mode;
  cfg.seed = 7;
  return cfg;
}

}  // namespace

TEST(GuessGrid, AxisAndOrdering) {
  const auto axis = sf::guess_axis(0.05);
  ASSERT_EQ(axis.size(), 41u);
  EXPECT_EQ(axis.front(), -1.0);
  EXPECT_EQ(axis.back(), 1.0);
  const auto odd = sf::guess_axis(0.3);
  EXPECT_EQ(odd.size(), 8u);
  EXPECT_EQ(odd.back(), 1.0);
  const auto grid = sf::guess_grid(0.5);
  ASSERT_EQ(grid.size(), 25u);
  EXPECT_EQ(grid[1].f_star_0, -1.0);
  EXPECT_EQ(grid[1].mean_corr, -0.5);
  EXPECT_EQ(grid[5].f_star_0, -0.5);
  EXPECT_THROW(sf::guess_axis(0), std::invalid_argument);
}

TEST(OracleMode, Parsing) {
  EXPECT_EQ(sf::parse_oracle_mode("enum"), sf::OracleMode::kExactEnum);
  EXPECT_EQ(sf::parse_oracle_mode("dp"), sf::OracleMode::kExactDp);
  EXPECT_EQ(sf::parse_oracle_mode("sampled"), sf::OracleMode::kSampled);
  EXPECT_THROW(sf::parse_oracle_mode("magic"), std::invalid_argument);
}

TEST(SolveConfig, Validation) {
  sf::SolveConfig cfg;
  cfg.delta = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.xi = -1;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.threads = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(IntegerRepresentative, SameFunctionAsThresholdedLbf) {
  sf::Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    sf::BoostState st(5, 0.0025);
    for (auto& c : st.counts) c = static_cast<std::int64_t>(sf::uniform_below(rng, 9)) - 4;
    const VotingGame a = sf::integer_representative(st);
    const VotingGame b = sf::threshold_lbf(sf::lbf_from_state(st));
    for (std::uint64_t m = 0; m < 32; ++m) {
      const auto x = BitString::from_mask(5, m);
      double z = static_cast<double>(st.counts[0]);
      for (int i = 0; i < 5; ++i) z += static_cast<double>(st.counts[i + 1]) * x[i];
      EXPECT_EQ(a(x), z >= 0 ? 1 : -1);
      if (std::abs(z) > 0) {
        EXPECT_EQ(a(x), b(x));
      }
    }
  }
}

TEST(CandidateFromGuess, ExactGuessRecoversMajority) {
  const auto cfg = exact_config(sf::OracleMode::kExactEnum);
  sf::Rng rng(1);
  const auto c = sf::candidate_from_guess(kMajorityTarget, {0.0, 1.0 / 3.0}, cfg, rng);
  ASSERT_EQ(c.status, sf::BoostStatus::kConverged);
  EXPECT_FALSE(c.targets_out_of_range);
  EXPECT_TRUE(same_truth_table(c.integer_game, VotingGame({1, 1, 1}, 0)));
}

TEST(CandidateFromGuess, FarGuessIsFlaggedNotHidden) {
  const auto cfg = exact_config();
  sf::Rng rng(1);
  const auto c = sf::candidate_from_guess({2, 0, 0}, {1.0, -1.0}, cfg, rng);
  EXPECT_TRUE(c.targets_out_of_range);
  EXPECT_EQ(c.status, sf::BoostStatus::kInfeasible);
  const auto d = sf::candidate_from_guess(kMajorityTarget, {1.0, -1.0}, cfg, rng);
  EXPECT_NE(d.status, sf::BoostStatus::kConverged);
}

TEST(FeasibleTargets, RejectsOnlyImpossibleVectors) {
  sf::Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 6;
    std::vector<double> table(std::size_t{1} << n);
    for (auto& v : table) v = sf::uniform01(rng) < 0.5 ? -1.0 : 1.0;
    const auto f = [&](const BitString& x) {
      std::uint64_t m = 0;
      for (int i = 0; i < n; ++i) m |= static_cast<std::uint64_t>(x[i] > 0) << i;
      return table[m];
    };
    EXPECT_TRUE(sf::feasible_targets(sf::CorrelationVector(oracle::correlations(f, n)), 0.005));
  }
  EXPECT_FALSE(sf::feasible_targets(sf::CorrelationVector({0, 1.2, 0, 0}), 0.005));
  EXPECT_FALSE(sf::feasible_targets(sf::CorrelationVector({0, 0.9, 0.9, 0.9}), 0.005));
}

TEST(ValidateCandidate, ExactModes) {
  const auto cfg = exact_config();
  sf::Rng rng(1);
  const auto good = sf::validate_candidate(VotingGame({1, 1, 1}, 0), kMajorityTarget, cfg, rng);
  EXPECT_TRUE(good.accepted);
  EXPECT_NEAR(good.est, 0.0, 1e-15);
  const auto bad = sf::validate_candidate(VotingGame({1, 0, 0}, -0.5), kMajorityTarget, cfg, rng);
  EXPECT_FALSE(bad.accepted);
  EXPECT_NEAR(bad.est, std::sqrt(8.0 / 3.0), 1e-12);
}

TEST(ValidateCandidate, SampledModeWithinTenthOfEpsilon) {
  auto cfg = exact_config(sf::OracleMode::kSampled);
  sf::Rng rng(4);
  const auto v = sf::validate_candidate(VotingGame({1, 1, 1}, 0), kMajorityTarget, cfg, rng);
  EXPECT_LE(v.est, cfg.epsilon / 10);
  EXPECT_TRUE(v.accepted);
}

TEST(SolveIs, MajorityTarget) {
  for (auto mode : {sf::OracleMode::kExactEnum, sf::OracleMode::kExactDp}) {
    const auto r = sf::solve_is(kMajorityTarget, exact_config(mode));
    ASSERT_EQ(r.status, sf::SolveStatus::kSolved);
    ASSERT_TRUE(r.game);
    EXPECT_LE(oracle::distance(oracle::shapley_permutations(*r.game, 3), kMajorityTarget), 0.1);
    EXPECT_LE(r.est_dshapley, 0.08);
    EXPECT_EQ(r.grid_points, 1681u);
    EXPECT_TRUE(r.warnings.empty());
  }
}

TEST(SolveIs, DictatorTarget) {
  const auto r = sf::solve_is({2, 0, 0}, exact_config());
  ASSERT_EQ(r.status, sf::SolveStatus::kSolved);
  EXPECT_TRUE(same_truth_table(*r.game, VotingGame({1, 0, 0}, -0.5)));
  EXPECT_LE(oracle::distance(oracle::shapley_permutations(*r.game, 3), {2, 0, 0}), 0.1);
}

TEST(SolveIs, NegativeTargetHasNoSolution) {
  const auto r = sf::solve_is({-1, -1, -1}, exact_config());
  EXPECT_EQ(r.status, sf::SolveStatus::kNoSolution);
  EXPECT_FALSE(r.game);
  EXPECT_EQ(r.accepted_points, 0u);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(SolveIs, SolvedResultsCarryTheirValidatedDistance) {
  const std::vector<double> t{1.2, 0.6, 0.2};
  auto cfg = exact_config();
  cfg.epsilon = 0.45;
  const auto r = sf::solve_is(t, cfg);
  ASSERT_EQ(r.status, sf::SolveStatus::kSolved);
  EXPECT_LE(r.est_dshapley, 0.8 * r.epsilon);
  EXPECT_NEAR(r.est_dshapley, oracle::distance(oracle::shapley_permutations(*r.game, 3), t), 1e-12);
  EXPECT_GE(r.accepted_points, 1u);
}

TEST(SolveIs, DeterministicAndThreadIndependent) {
  auto cfg = exact_config(sf::OracleMode::kSampled);
  cfg.grid_step = 0.25;
  cfg.xi = 0.1;
  cfg.max_samples = 4000;
  const std::vector<double> t{1.0, 0.5, 0.5};
  const auto a = sf::solve_is(t, cfg);
  const auto b = sf::solve_is(t, cfg);
  cfg.threads = 3;
  const auto c = sf::solve_is(t, cfg);
  for (const auto* other : {&b, &c}) {
    EXPECT_EQ(a.status, other->status);
    EXPECT_EQ(a.est_dshapley, other->est_dshapley);
    EXPECT_EQ(a.boost_iterations, other->boost_iterations);
    EXPECT_EQ(a.game.has_value(), other->game.has_value());
    if (a.game && other->game) {
      EXPECT_EQ(*a.game, *other->game);
    }
  }
}

TEST(SolveIsbw, BoundedWeightTarget) {
  const auto target = oracle::shapley_permutations(sf::quota_to_ltf(sf::QuotaGame({3, 2, 2, 1}, 5)), 4);
  const auto cfg = exact_config();
  const auto r = sf::solve_isbw(target, 3, cfg);
  ASSERT_EQ(r.status, sf::SolveStatus::kSolved);
  EXPECT_NEAR(r.epsilon, std::pow(4.0, -0.125), 1e-15);
  EXPECT_DOUBLE_EQ(r.xi, std::min(0.005, 1.0 / 120.0));
  const double d = oracle::distance(oracle::shapley_permutations(*r.game, 4), target);
  EXPECT_LE(d, 0.1);
  const auto again = sf::solve_isbw(target, 3, cfg);
  EXPECT_EQ(*r.game, *again.game);
  EXPECT_EQ(r.est_dshapley, again.est_dshapley);
  EXPECT_THROW(sf::solve_isbw(target, 0, cfg), std::invalid_argument);
}

TEST(ExhaustiveBaseline, MatchesBruteForce) {
  const auto maj = sf::exhaustive_baseline(kMajorityTarget, 2);
  EXPECT_NEAR(maj.dshapley, 0.0, 1e-15);
  EXPECT_TRUE(same_truth_table(maj.game, VotingGame({1, 1, 1}, 0)));
  const auto dict = sf::exhaustive_baseline({2, 0, 0}, 2);
  EXPECT_NEAR(dict.dshapley, 0.0, 1e-15);
  EXPECT_TRUE(same_truth_table(dict.game, VotingGame({1, 0, 0}, -0.5)));

  for (const auto& t : std::vector<std::vector<double>>{{1.2, 0.6, 0.2}, {0.9, 0.9, 0.1}, {1.0, 0.4, 0.3, 0.3}}) {
    const int cap = t.size() == 3 ? 3 : 2;
    const auto fast = sf::exhaustive_baseline(t, cap);
    const auto slow = oracle::baseline(t, cap);
    EXPECT_NEAR(fast.dshapley, slow.distance, 1e-12);
    EXPECT_NEAR(oracle::distance(oracle::shapley_permutations(fast.game, static_cast<int>(t.size())), t),
                fast.dshapley, 1e-12);
  }
  EXPECT_THROW(sf::exhaustive_baseline(std::vector<double>(6, 0.3), 2), sf::BudgetExceeded);
  EXPECT_THROW(sf::exhaustive_baseline(kMajorityTarget, 7), sf::BudgetExceeded);
}

TEST(SolveIs, ApproachesBaselineReference) {
  // Every 3-voter threshold game has a representation with weights <= 3,
  // so the brute-force optimum is the best any game can do.
  const std::vector<double> t{1.2, 0.6, 0.2};
  const double reference = oracle::baseline(t, 3).distance;
  ASSERT_GT(reference, 0.08);
  EXPECT_EQ(sf::solve_is(t, exact_config()).status, sf::SolveStatus::kNoSolution);
  auto loose = exact_config();
  loose.epsilon = 0.5;
  const auto r = sf::solve_is(t, loose);
  ASSERT_EQ(r.status, sf::SolveStatus::kSolved);
  const double d = oracle::distance(oracle::shapley_permutations(*r.game, 3), t);
  EXPECT_LE(d, reference + 0.1);
  EXPECT_GE(d, reference - 1e-12);
}
