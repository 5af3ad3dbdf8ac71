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

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "test_util.hpp"
#include "wpa/binary_io.hpp"
#include "wpa/ingest.hpp"
#include "wpa/navmesh.hpp"
#include "wpa/replay.hpp"
#include "wpa/state_table.hpp"
#include "wpa/synthetic.hpp"

namespace wpa {
namespace {

using testing::fixture;

FormatError::Kind decode_error(const std::string& bytes) {
  try {
    decode_states(bytes);
  } catch (const FormatError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "decoded without error";
  return FormatError::Kind::kCorrupt;
}

TEST(StateTableTest, RoundTripFixture) {
  const MatchRecord m = load_match(fixture("match_small.json"));
  const MapNavigation nav(load_navmesh(fixture("mesh40.json")));
  const auto states = replay_match(m, &nav);
  const auto back = decode_states(encode_states(states));
  ASSERT_EQ(back.size(), states.size());
  for (std::size_t i = 0; i < states.size(); ++i) EXPECT_EQ(back[i], states[i]) << i;
  EXPECT_TRUE(std::isinf(back[0].ct_dist_to_a));
}

TEST(StateTableTest, RoundTripAcrossBlocks) {
  SyntheticConfig c;
  c.n_matches = 150;
  std::vector<GameState> states;
  for (const auto& m : generate_synthetic(c).matches) {
    auto s = replay_match(m);
    states.insert(states.end(), s.begin(), s.end());
  }
  ASSERT_GT(states.size(), kStateTableBlockRows);
  EXPECT_EQ(decode_states(encode_states(states)), states);
}

TEST(StateTableTest, EncodingIsDeterministic) {
  const auto states = replay_match(load_match(fixture("match_small.json")));
  EXPECT_EQ(encode_states(states), encode_states(states));
}

TEST(StateTableTest, Empty) {
  EXPECT_TRUE(decode_states(encode_states({})).empty());
}

TEST(StateTableTest, ColumnsCoverStateFields) {
  const auto& cols = state_table_columns();
  for (const char* name : {"match_id", "map_name", "round_num", "tick", "ct_equip_value",
                           "t_players_alive", "bomb_site", "t_dist_to_b", "outcome_label"}) {
    EXPECT_NE(std::find(cols.begin(), cols.end(), name), cols.end()) << name;
  }
}

TEST(StateTableTest, DetectsDamage) {
  const std::string good = encode_states(replay_match(load_match(fixture("match_small.json"))));
  std::string bad = good;
  bad[0] = 'X';
  EXPECT_EQ(decode_error(bad), FormatError::Kind::kBadMagic);

  bad = good;
  bad[4] = static_cast<char>(kStateTableVersion + 1);
  EXPECT_EQ(decode_error(bad), FormatError::Kind::kVersionMismatch);

  EXPECT_EQ(decode_error(good.substr(0, good.size() / 2)), FormatError::Kind::kTruncated);

  bad = good;
  bad[bad.size() - 1] ^= 0x5a;
  EXPECT_EQ(decode_error(bad), FormatError::Kind::kCorrupt);
}

TEST(StateTableTest, FileRoundTrip) {
  const auto dir = testing::scratch_dir("state_table");
  const auto states = replay_match(load_match(fixture("match_small.json")));
  write_states(states, (dir / "s.wst").string());
  EXPECT_EQ(read_states((dir / "s.wst").string()), states);
  EXPECT_THROW(read_states((dir / "missing.wst").string()), IoError);
}

}  // namespace
}  // namespace wpa
