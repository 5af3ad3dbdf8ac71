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

#include "wpa/core.hpp"

namespace wpa {
namespace {

TEST(SideTest, OpponentAndNames) {
  EXPECT_EQ(opponent(Side::kCT), Side::kT);
  EXPECT_EQ(opponent(Side::kT), Side::kCT);
  EXPECT_EQ(to_string(Side::kCT), "CT");
  EXPECT_EQ(parse_side("T"), Side::kT);
  EXPECT_FALSE(parse_side("ct").has_value());
}

TEST(EnumTest, RoundTripNames) {
  for (auto r : {WinReason::kElimination, WinReason::kBombExploded, WinReason::kBombDefused,
                 WinReason::kTimeExpired}) {
    EXPECT_EQ(parse_win_reason(to_string(r)), r);
  }
  for (auto s : {BombSite::kNone, BombSite::kA, BombSite::kB}) {
    EXPECT_EQ(parse_bomb_site(to_string(s)), s);
  }
  EXPECT_FALSE(parse_win_reason("surrender").has_value());
}

TEST(GameStateTest, Defaults) {
  GameState s;
  EXPECT_EQ(s.players_alive(Side::kCT), 5);
  EXPECT_EQ(s.ct_hp_total, 500);
  EXPECT_FALSE(s.has_distances());
  s.ticks_since_start = 640;
  s.tick_rate = 128;
  EXPECT_DOUBLE_EQ(s.seconds_since_start(), 5.0);
}

TEST(GameConstantsTest, BombWindow) {
  EXPECT_EQ(GameConstants::bomb_window_ticks(128), 35 * 128);
  EXPECT_EQ(GameConstants::bomb_window_ticks(64), 35 * 64);
}

TEST(RoundRecordTest, SideOf) {
  RoundRecord r;
  r.ct_players = {"a", "b", "c", "d", "e"};
  r.t_players = {"f", "g", "h", "i", "j"};
  EXPECT_EQ(r.side_of("c"), Side::kCT);
  EXPECT_EQ(r.side_of("j"), Side::kT);
  EXPECT_FALSE(r.side_of("z").has_value());
  EXPECT_EQ(r.roster(Side::kT)[0], "f");
}

TEST(DistanceTest, Euclidean) {
  EXPECT_DOUBLE_EQ(distance({0, 0, 0}, {3, 4, 12}), 13.0);
}

TEST(ValidationErrorTest, CarriesLocation) {
  ValidationError e(3, 1234, "boom");
  EXPECT_EQ(e.round_num(), 3);
  EXPECT_EQ(e.tick(), 1234);
  EXPECT_NE(std::string(e.what()).find("round 3"), std::string::npos);
  EXPECT_NE(std::string(e.what()).find("tick 1234"), std::string::npos);
}

}  // namespace
}  // namespace wpa
