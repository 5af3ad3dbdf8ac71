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

#ifndef WPA_CORE_HPP_
#define WPA_CORE_HPP_

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wpa {

using Tick = std::int64_t;
using AreaId = std::int32_t;
using PlayerId = std::string;

// Fixed game rules for regulation play.
struct GameConstants {
  static constexpr int kStartHp = 100;
  static constexpr int kBombTimerSeconds = 35;
  static constexpr int kDefaultTickRate = 128;
  static constexpr int kRoundsToWin = 16;
  static constexpr int kHalfLength = 15;
  static constexpr int kMaxRounds = 2 * kHalfLength;
  static constexpr int kPlayersPerSide = 5;
  static constexpr int kTeamHp = kStartHp * kPlayersPerSide;

  static constexpr Tick bomb_window_ticks(int tick_rate) {
    return static_cast<Tick>(kBombTimerSeconds) * tick_rate;
  }
};

enum class Side : std::uint8_t { kCT = 0, kT = 1 };
enum class BombSite : std::uint8_t { kNone = 0, kA = 1, kB = 2 };
enum class WinReason : std::uint8_t {
  kElimination = 0,
  kBombExploded = 1,
  kBombDefused = 2,
  kTimeExpired = 3,
};

constexpr Side opponent(Side s) { return s == Side::kCT ? Side::kT : Side::kCT; }

std::string_view to_string(Side s);
std::string_view to_string(BombSite s);
std::string_view to_string(WinReason r);
std::optional<Side> parse_side(std::string_view s);
std::optional<BombSite> parse_bomb_site(std::string_view s);
std::optional<WinReason> parse_win_reason(std::string_view s);

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

double distance(const Vec3& a, const Vec3& b);

struct FootstepEvent {
  PlayerId player_id;
  Side side = Side::kCT;
  Vec3 position;
  std::optional<AreaId> area_id;

  friend bool operator==(const FootstepEvent&, const FootstepEvent&) = default;
};

struct DamageEvent {
  PlayerId attacker_id;
  Side attacker_side = Side::kCT;
  PlayerId victim_id;
  Side victim_side = Side::kT;
  int hp_damage = 0;
  bool is_kill = false;
  std::optional<PlayerId> assister_id;
  Vec3 attacker_position;
  Vec3 victim_position;

  friend bool operator==(const DamageEvent&, const DamageEvent&) = default;
};

struct BombPlantEvent {
  PlayerId player_id;
  BombSite site = BombSite::kA;

  friend bool operator==(const BombPlantEvent&, const BombPlantEvent&) = default;
};

struct BombDefuseEvent {
  PlayerId player_id;

  friend bool operator==(const BombDefuseEvent&, const BombDefuseEvent&) = default;
};

using EventPayload =
    std::variant<FootstepEvent, DamageEvent, BombPlantEvent, BombDefuseEvent>;

struct GameEvent {
  Tick tick = 0;
  EventPayload payload;

  bool is_damage() const { return std::holds_alternative<DamageEvent>(payload); }
  const DamageEvent* damage() const { return std::get_if<DamageEvent>(&payload); }

  friend bool operator==(const GameEvent&, const GameEvent&) = default;
};

std::string_view event_type_name(const GameEvent& e);

struct RoundRecord {
  int round_num = 1;
  Tick start_tick = 0;
  Tick end_tick = 0;
  std::string ct_team;
  std::string t_team;
  int ct_equip_value = 0;
  int t_equip_value = 0;
  Side winner_side = Side::kCT;
  WinReason win_reason = WinReason::kElimination;
  std::vector<GameEvent> events;
  std::array<PlayerId, GameConstants::kPlayersPerSide> ct_players;
  std::array<PlayerId, GameConstants::kPlayersPerSide> t_players;

  const std::array<PlayerId, GameConstants::kPlayersPerSide>& roster(Side s) const {
    return s == Side::kCT ? ct_players : t_players;
  }
  // Side the player is on this round, if rostered.
  std::optional<Side> side_of(std::string_view player) const;

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct MatchRecord {
  std::string match_id;
  std::string map_name;
  int tick_rate = GameConstants::kDefaultTickRate;
  std::string date;  // ISO-8601, YYYY-MM-DD
  std::vector<RoundRecord> rounds;

  friend bool operator==(const MatchRecord&, const MatchRecord&) = default;
};

// Distance feature sentinels. Finite distances are always >= 0.
inline constexpr double kDistanceUnavailable = -1.0;
inline constexpr double kDistanceUnreachable = std::numeric_limits<double>::infinity();

// Snapshot of the modelled round information at one tick.
struct GameState {
  std::string match_id;
  std::string match_date;
  std::string map_name;
  int round_num = 1;
  int tick_rate = GameConstants::kDefaultTickRate;
  Tick tick = 0;
  Tick ticks_since_start = 0;
  int ct_equip_value = 0;
  int t_equip_value = 0;
  int ct_players_alive = GameConstants::kPlayersPerSide;
  int t_players_alive = GameConstants::kPlayersPerSide;
  int ct_hp_total = GameConstants::kTeamHp;
  int t_hp_total = GameConstants::kTeamHp;
  bool bomb_planted = false;
  BombSite bomb_site = BombSite::kNone;
  double ct_dist_to_a = kDistanceUnavailable;
  double ct_dist_to_b = kDistanceUnavailable;
  double t_dist_to_a = kDistanceUnavailable;
  double t_dist_to_b = kDistanceUnavailable;
  int outcome_label = 0;  // 1 if CT won the enclosing round

  bool has_distances() const { return ct_dist_to_a != kDistanceUnavailable; }
  double seconds_since_start() const {
    return static_cast<double>(ticks_since_start) / tick_rate;
  }
  int players_alive(Side s) const {
    return s == Side::kCT ? ct_players_alive : t_players_alive;
  }

  friend bool operator==(const GameState&, const GameState&) = default;
};

// Thrown when an event stream cannot be replayed.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(int round_num, Tick tick, const std::string& what)
      : std::runtime_error("round " + std::to_string(round_num) + ", tick " +
                           std::to_string(tick) + ": " + what),
        round_num_(round_num),
        tick_(tick) {}

  int round_num() const { return round_num_; }
  Tick tick() const { return tick_; }

 private:
  int round_num_;
  Tick tick_;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wpa

#endif  // WPA_CORE_HPP_
