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
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "test_util.hpp"
#include "wpa/ingest.hpp"
#include "wpa/navmesh.hpp"
#include "wpa/replay.hpp"

namespace wpa {
namespace {

using testing::fixture;

struct Row {
  Tick tick;
  int ct_alive, t_alive, ct_hp, t_hp;
  bool planted;
};

// Worked by hand from the event log of round 1.
const Row kRound1[] = {
    {1000, 5, 5, 500, 500, false},  // round start
    {1100, 5, 5, 500, 500, false},  // a1 moves
    {1200, 5, 5, 440, 500, false},  // b1 hits a1 for 60
    {1300, 5, 4, 440, 400, false},  // a1 kills b1
    {1400, 5, 4, 440, 400, false},  // b2 moves
    {1500, 4, 4, 400, 400, false},  // b2 finishes a1 (40)
    {1600, 4, 4, 400, 370, false},  // a2 hits b2 for 30
    {1700, 3, 4, 300, 370, false},  // b3 kills a2
    {1800, 3, 4, 300, 320, false},  // a3 hits b2 for 50
    {2500, 3, 4, 300, 320, true},   // plant at A
    {3000, 3, 4, 300, 320, true},
    {3500, 3, 4, 300, 295, true},   // a4 hits b3 for 25
    {4000, 3, 4, 300, 295, true},
};

TEST(ReplayTest, HandSimulatedRound) {
  const MatchRecord m = load_match(fixture("match_small.json"));
  const auto states = replay_round(m, m.rounds[0]);
  ASSERT_EQ(states.size(), std::size(kRound1));
  for (std::size_t i = 0; i < states.size(); ++i) {
    const GameState& s = states[i];
    const Row& r = kRound1[i];
    SCOPED_TRACE(i);
    EXPECT_EQ(s.tick, r.tick);
    EXPECT_EQ(s.ticks_since_start, r.tick - 1000);
    EXPECT_EQ(s.ct_players_alive, r.ct_alive);
    EXPECT_EQ(s.t_players_alive, r.t_alive);
    EXPECT_EQ(s.ct_hp_total, r.ct_hp);
    EXPECT_EQ(s.t_hp_total, r.t_hp);
    EXPECT_EQ(s.bomb_planted, r.planted);
    EXPECT_EQ(s.bomb_site, r.planted ? BombSite::kA : BombSite::kNone);
    EXPECT_EQ(s.ct_equip_value, 4000);
    EXPECT_EQ(s.t_equip_value, 4000);
    EXPECT_EQ(s.outcome_label, 0);
    EXPECT_EQ(s.round_num, 1);
    EXPECT_EQ(s.map_name, "de_dust2");
    EXPECT_EQ(s.match_date, "2024-03-05");
    EXPECT_FALSE(s.has_distances());
  }
}

TEST(ReplayTest, MatchConcatenatesRounds) {
  const MatchRecord m = load_match(fixture("match_small.json"));
  const auto all = replay_match(m);
  ASSERT_EQ(all.size(), 13u + 9u);
  const GameState& last = all.back();
  EXPECT_EQ(last.round_num, 2);
  EXPECT_EQ(last.outcome_label, 1);
  EXPECT_EQ(last.ct_equip_value, 15000);
  EXPECT_EQ(last.t_equip_value, 12000);
  EXPECT_EQ(last.ct_players_alive, 3);
  EXPECT_EQ(last.t_players_alive, 3);
  EXPECT_EQ(last.ct_hp_total, 500 - 100 - 30 - 100);
  EXPECT_EQ(last.t_hp_total, 500 - 100 - 100 - 20);
}

TEST(ReplayTest, RejectsBrokenRounds) {
  MatchRecord m = load_match(fixture("match_small.json"));
  m.rounds[0].events.back().tick = 9000;
  EXPECT_THROW(replay_round(m, m.rounds[0]), ValidationError);

  m = load_match(fixture("match_small.json"));
  std::get<DamageEvent>(m.rounds[0].events[4].payload).is_kill = false;
  try {
    replay_round(m, m.rounds[0]);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.round_num(), 1);
    EXPECT_EQ(e.tick(), 1500);
  }
}

// Multi-source BFS over the mesh file, independent of the library graph.
std::map<AreaId, double> bfs_to_tag(const NavMesh& mesh, const std::string& tag) {
  std::map<AreaId, std::vector<AreaId>> reverse;
  for (const auto& c : mesh.connections) reverse[c.to].push_back(c.from);
  std::map<AreaId, double> dist;
  std::deque<AreaId> q;
  for (const auto& a : mesh.areas) {
    if (a.has_tag(tag)) {
      dist[a.id] = 0;
      q.push_back(a.id);
    }
  }
  while (!q.empty()) {
    const AreaId u = q.front();
    q.pop_front();
    for (AreaId v : reverse[u]) {
      if (!dist.contains(v)) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
    }
  }
  return dist;
}

TEST(ReplayTest, DistancesFromMesh) {
  const MatchRecord m = load_match(fixture("match_small.json"));
  const MapNavigation nav(load_navmesh(fixture("mesh40.json")));
  const auto states = replay_round(m, m.rounds[0], &nav);
  const auto to_a = bfs_to_tag(nav.mesh(), "bombsite_A");
  const auto to_b = bfs_to_tag(nav.mesh(), "bombsite_B");
  const double inf = std::numeric_limits<double>::infinity();

  // Nobody has been seen yet.
  EXPECT_TRUE(states[0].has_distances());
  EXPECT_EQ(states[0].ct_dist_to_a, inf);
  EXPECT_EQ(states[0].t_dist_to_b, inf);

  // a1 steps at (-400, -800), on the border of areas 2 and 3. Equal gaps
  // keep the first area in file order.
  EXPECT_EQ(states[1].ct_dist_to_a, to_a.at(2));
  EXPECT_EQ(states[1].ct_dist_to_b, to_b.at(2));
  EXPECT_EQ(states[1].t_dist_to_a, inf);

  // b1 at (-300, -600) is also area 3 once seen attacking.
  EXPECT_EQ(states[2].t_dist_to_a, to_a.at(3));

  // (-200, -500) lies on the row 0 / row 1 border; row 0 sits at z 0 and wins.
  EXPECT_EQ(states[4].t_dist_to_b, to_b.at(3));

  // b3 fires from (100, 200), area 20. Both CT players seen so far are dead.
  EXPECT_EQ(states[7].t_dist_to_a, std::min(to_a.at(3), to_a.at(20)));
  EXPECT_EQ(states[7].ct_dist_to_a, inf);
}

}  // namespace
}  // namespace wpa
