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

#include "shapley_forge/game_model.hpp"

namespace sf = shapley_forge;
using sf::BitString;
using sf::VotingGame;

TEST(BitString, RejectsEntriesOtherThanPlusMinusOne) {
  EXPECT_THROW(BitString({1, 0, -1}), std::invalid_argument);
  EXPECT_THROW(BitString(std::vector<int>{}), std::invalid_argument);
  BitString x{1, -1, 1};
  EXPECT_THROW(x.set(1, 2), std::invalid_argument);
  EXPECT_EQ(x.size(), 3u);
}

TEST(BitString, MaskRoundTripAndWeight) {
  const BitString x = BitString::from_mask(5, 0b10110);
  EXPECT_EQ(x, BitString({-1, 1, 1, -1, 1}));
  EXPECT_EQ(x.weight(), 3);
  EXPECT_EQ(x.to_string(), "-++-+");
}

TEST(VotingGame, SignOfMarginWithZeroCountingAsYes) {
  const VotingGame g({49, 49, 2}, 1.5);
  EXPECT_EQ(sf::evaluate_ltf(g, {1, 1, -1}), 1);
  EXPECT_EQ(sf::evaluate_ltf(g, {1, -1, 1}), 1);
  EXPECT_EQ(sf::evaluate_ltf(VotingGame({1, 1, 1}, 0), {-1, -1, 1}), -1);
  EXPECT_EQ(sf::evaluate_ltf(VotingGame({1, 1}, 0), {1, -1}), 1);
}

TEST(VotingGame, ValidatesInputs) {
  EXPECT_THROW(VotingGame({}, 0.0), std::invalid_argument);
  EXPECT_THROW(VotingGame({1.0, NAN}, 0.0), std::invalid_argument);
  EXPECT_THROW(VotingGame({1.0}, INFINITY), std::invalid_argument);
  EXPECT_THROW(sf::evaluate_ltf(VotingGame({1, 1, 1}, 0), {1, 1}), sf::DimensionMismatch);
}

TEST(LinearBoundedFunction, ClampsToUnitInterval) {
  EXPECT_DOUBLE_EQ(sf::evaluate_lbf(sf::LinearBoundedFunction({0.2, 0.2, 0.2}, 0), {1, 1, -1}), 0.2);
  EXPECT_DOUBLE_EQ(sf::evaluate_lbf(sf::LinearBoundedFunction({1, 1, 1}, 0), {1, 1, 1}), 1.0);
  const sf::LinearBoundedFunction constant({0, 0, 0}, 0.5);
  for (std::uint64_t m = 0; m < 8; ++m) {
    EXPECT_DOUBLE_EQ(constant(BitString::from_mask(3, m)), -0.5);
  }
  const sf::LinearBoundedFunction big({5, -3, 2}, 1);
  for (std::uint64_t m = 0; m < 8; ++m) {
    const double v = big(BitString::from_mask(3, m));
    EXPECT_GE(v, -1.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(QuotaGame, ConvertsToEquivalentThresholdForm) {
  const sf::QuotaGame q({49, 49, 2}, 51);
  const VotingGame g = sf::quota_to_ltf(q);
  EXPECT_EQ(g, VotingGame({49, 49, 2}, 1.5));
  for (std::uint64_t m = 0; m < 8; ++m) {
    EXPECT_EQ(g(BitString::from_mask(3, m)) == 1, q.passes(m)) << m;
  }
  EXPECT_EQ(sf::quota_to_ltf(sf::QuotaGame({1, 1, 1}, 2)), VotingGame({1, 1, 1}, 0.5));
  // Any threshold in (-1, 1) gives the dictator; the conversion picks 0.5.
  const VotingGame dict = sf::quota_to_ltf(sf::QuotaGame({1, 0, 0}, 1));
  for (std::uint64_t m = 0; m < 8; ++m) {
    const auto x = BitString::from_mask(3, m);
    EXPECT_EQ(dict(x), VotingGame({1, 0, 0}, -0.5)(x));
    EXPECT_EQ(dict(x), x[0]);
  }
}

TEST(QuotaGame, ValidatesQuota) {
  EXPECT_THROW(sf::QuotaGame({1, 1}, 0), std::invalid_argument);
  EXPECT_THROW(sf::QuotaGame({1, 1}, 3), std::invalid_argument);
  EXPECT_THROW(sf::QuotaGame({1, -1}, 1), std::invalid_argument);
}

TEST(Reasonableness, ChecksThresholdAndMonotonicity) {
  EXPECT_TRUE(sf::is_eta_reasonable(VotingGame({49, 49, 2}, 1.5), 0.5).reasonable);
  EXPECT_FALSE(sf::is_eta_reasonable(VotingGame({1, 1, 1}, 2.9), 0.1).reasonable);
  EXPECT_FALSE(sf::is_eta_reasonable(VotingGame({1, -1, 1}, 0), 0.1).monotone);
  EXPECT_TRUE(sf::is_eta_reasonable(VotingGame({1, 0, 1}, 0), 0.1).monotone);
  EXPECT_THROW(sf::is_eta_reasonable(VotingGame({1}, 0), 1.0), std::invalid_argument);
}

TEST(ThresholdLbf, CopiesFields) {
  EXPECT_EQ(sf::threshold_lbf(sf::LinearBoundedFunction({0.2, 0.2, 0.2}, 0)),
            VotingGame({0.2, 0.2, 0.2}, 0));
  EXPECT_EQ(sf::threshold_lbf(sf::LinearBoundedFunction({0.2, 0.2, 0.2}, 0.1)).threshold(), 0.1);
}

TEST(VotingGame, IntegerWeightDetection) {
  EXPECT_TRUE(VotingGame({3, -2, 0}, 0.5).has_integer_weights());
  EXPECT_FALSE(VotingGame({3, 0.5}, 0).has_integer_weights());
}
