// Copyright 2026 The WPA Authors.
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
#include <map>
#include <vector>

#include "wpa/ingest.hpp"
#include "wpa/replay.hpp"
#include "wpa/synthetic.hpp"

namespace wpa {
namespace {

TEST(SyntheticTest, SameSeedSameData) {
  SyntheticConfig c;
  c.n_matches = 4;
  c.seed = 99;
  const SyntheticData a = generate_synthetic(c);
  const SyntheticData b = generate_synthetic(c);
  ASSERT_EQ(a.matches.size(), 4u);
  EXPECT_EQ(a.matches, b.matches);
  EXPECT_EQ(a.player_skill, b.player_skill);
  EXPECT_EQ(serialize_match(a.matches[0]), serialize_match(b.matches[0]));
  c.seed = 100;
  EXPECT_NE(generate_synthetic(c).matches, a.matches);
}

TEST(SyntheticTest, EveryMatchValidates) {
  SyntheticConfig c;
  c.n_matches = 12;
  c.seed = 5;
  c.interaction = true;
  c.mean_footsteps = 3;
  for (const auto& m : generate_synthetic(c).matches) {
    const auto v = validate_match(m);
    EXPECT_TRUE(v.empty()) << m.match_id << ": " << (v.empty() ? "" : v[0].message);
    EXPECT_NO_THROW(replay_match(m));
  }
}

TEST(SyntheticTest, HalvesSwapSides) {
  SyntheticConfig c;
  c.n_matches = 3;
  c.seed = 17;
  for (const auto& m : generate_synthetic(c).matches) {
    ASSERT_GE(m.rounds.size(), static_cast<std::size_t>(GameConstants::kRoundsToWin));
    const auto& first = m.rounds.front();
    for (const auto& r : m.rounds) {
      if (r.round_num <= GameConstants::kHalfLength) {
        EXPECT_EQ(r.ct_team, first.ct_team);
        EXPECT_EQ(r.ct_players, first.ct_players);
      } else {
        EXPECT_EQ(r.ct_team, first.t_team);
        EXPECT_EQ(r.ct_players, first.t_players);
      }
    }
  }
}

TEST(SyntheticTest, TruthLogitByHand) {
  SyntheticConfig c;
  c.n_matches = 1;
  c.interaction = true;
  c.interaction_strength = 0.2;
  c.map_weights = {{"de_nuke", 1.0}, {"de_train", 1.0}};
  const GroundTruth t = generate_synthetic(c).truth;
  EXPECT_DOUBLE_EQ(t.map_offsets.at("de_nuke"), -0.15);
  EXPECT_DOUBLE_EQ(t.map_offsets.at("de_train"), 0.15);
  EXPECT_DOUBLE_EQ(t.interaction.at("de_nuke"), 0.2);
  EXPECT_DOUBLE_EQ(t.interaction.at("de_train"), -0.2);

  GameState s;
  s.map_name = "de_train";
  s.ct_equip_value = 20000;
  s.t_equip_value = 16000;
  s.ct_hp_total = 400;
  s.t_hp_total = 250;
  s.ct_players_alive = 4;
  s.t_players_alive = 3;
  s.bomb_planted = true;
  const double z = 0.15 + 0.08 * 4 + 0.5 * 1.5 + 0.6 * 1 - 0.8 - 0.2 * 4;
  EXPECT_NEAR(t.logit(s), z, 1e-12);
  EXPECT_NEAR(t.probability(s), 1 / (1 + std::exp(-z)), 1e-12);

  const auto params = t.parameters();
  std::map<std::string, double> named(params.begin(), params.end());
  EXPECT_EQ(named.at("ct_players_alive"), 0.6);
  EXPECT_EQ(named.at("t_players_alive"), -0.6);
  EXPECT_EQ(named.at("interaction[de_train]"), -0.2);
  EXPECT_EQ(named.at("map_offset[de_nuke]"), -0.15);
}

TEST(SyntheticTest, SkillGapFavorsChosenSide) {
  SyntheticConfig c;
  c.n_matches = 1;
  c.skill_gap = 0.5;
  c.favored_side = Side::kT;
  EXPECT_DOUBLE_EQ(generate_synthetic(c).truth.intercept, -2.0);
}

// Outcomes follow the truth: round-start labels average the truth probability.
TEST(SyntheticTest, OutcomesFollowTruth) {
  SyntheticConfig c;
  c.n_matches = 80;
  c.seed = 31;
  const SyntheticData d = generate_synthetic(c);
  double diff = 0;
  int rounds = 0;
  for (const auto& m : d.matches) {
    for (const auto& r : m.rounds) {
      const auto states = replay_round(m, r);
      diff += states.front().outcome_label - d.truth.probability(states.front());
      ++rounds;
    }
  }
  ASSERT_GT(rounds, 1500);
  // About 3.5 standard errors of a Bernoulli mean.
  EXPECT_LT(std::fabs(diff / rounds), 3.5 * 0.5 / std::sqrt(rounds));
}

TEST(SyntheticTest, RejectsBadConfig) {
  SyntheticConfig c;
  c.skill_gap = 1.5;
  EXPECT_THROW(generate_synthetic(c), std::invalid_argument);
  c = {};
  c.n_teams = 1;
  EXPECT_THROW(generate_synthetic(c), std::invalid_argument);
  c = {};
  c.map_weights = {{"de_nuke", -1}};
  EXPECT_THROW(generate_synthetic(c), std::invalid_argument);
}

}  // namespace
}  // namespace wpa
