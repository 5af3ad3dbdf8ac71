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

#ifndef WPA_REPLAY_HPP_
#define WPA_REPLAY_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "wpa/core.hpp"
#include "wpa/navmesh.hpp"

namespace wpa {

struct Violation {
  int round_num = 0;  // 0 for match-level rules
  Tick tick = 0;
  std::string rule;   // stable rule id, e.g. "side-swap", "hp-overflow"
  std::string message;
};

// Maps accepted by validation unless the caller supplies a pool.
const std::vector<std::string>& default_map_pool();

// Checks every structural and game-rule invariant of a match. Violations are
// returned as data; an empty list means the match is well formed.
std::vector<Violation> validate_match(const MatchRecord& match,
                                      const std::vector<std::string>& map_pool = default_map_pool());

// Replays a round into its state sequence: one initial state at start_tick
// followed by one state per event, each reflecting that event. Bombsite
// distances stay kDistanceUnavailable when `nav` is null.
//
// Throws ValidationError naming the offending tick on an inconsistent stream.
std::vector<GameState> replay_round(const MatchRecord& match, const RoundRecord& round,
                                    const MapNavigation* nav = nullptr);

// All rounds of a match, concatenated in round order.
std::vector<GameState> replay_match(const MatchRecord& match, const MapNavigation* nav = nullptr);

}  // namespace wpa

#endif  // WPA_REPLAY_HPP_
