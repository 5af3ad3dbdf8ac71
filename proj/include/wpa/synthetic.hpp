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

#ifndef WPA_SYNTHETIC_HPP_
#define WPA_SYNTHETIC_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wpa/core.hpp"

namespace wpa {

struct SyntheticConfig {
  std::uint64_t seed = 7;
  int n_matches = 10;
  // Relative map frequencies; empty means the default pool, uniformly.
  std::vector<std::pair<std::string, double>> map_weights;
  // 0 gives balanced sides; 1 puts the favored side near-certain at round start.
  double skill_gap = 0.0;
  Side favored_side = Side::kCT;
  double mean_damage_events = 12.0;
  double mean_footsteps = 4.0;
  // Chance that a T-favoring step is a bomb plant rather than damage.
  double plant_chance = 0.25;
  // Adds a map-dependent equipment effect no additive model can represent.
  bool interaction = false;
  double interaction_strength = 0.1;
  int tick_rate = GameConstants::kDefaultTickRate;
  int n_teams = 8;
  std::string start_date = "2024-01-01";
  int days_between_matches = 2;

  void validate() const;
};

// The logistic model every generated round outcome is drawn from.
// Coefficients are in natural units: equipment per 1000, HP per 100,
// players per head.
struct GroundTruth {
  double intercept = 0.0;
  double equip_per_1000 = 0.08;  // +CT, -T
  double hp_per_100 = 0.5;       // +CT, -T
  double alive = 0.6;            // +CT, -T
  double bomb_planted = -0.8;
  double seconds = 0.0;
  std::map<std::string, double> map_offsets;
  std::map<std::string, double> interaction;  // per-map slope on the equipment gap, per 1000

  double logit(const GameState& s) const;
  double probability(const GameState& s) const;
  // Effective intercept on a map: intercept + map offset.
  double map_intercept(const std::string& map) const;
  // Named parameter vector, natural units.
  std::vector<std::pair<std::string, double>> parameters() const;
};

struct SyntheticData {
  std::vector<MatchRecord> matches;
  GroundTruth truth;
  std::map<PlayerId, double> player_skill;
};

// Deterministic for a given config. Every match passes validate_match, and
// for every replayed state P(CT wins | state) equals truth.probability(state).
SyntheticData generate_synthetic(const SyntheticConfig& config);

}  // namespace wpa

#endif  // WPA_SYNTHETIC_HPP_
