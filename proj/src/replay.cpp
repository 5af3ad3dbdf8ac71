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

#include "wpa/replay.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>

namespace wpa {

const std::vector<std::string>& default_map_pool() {
  static const std::vector<std::string> pool = {
      "de_cache", "de_cbble",  "de_dust2", "de_inferno", "de_mirage",
      "de_nuke",  "de_overpass", "de_train", "de_vertigo"};
  return pool;
}

namespace {

constexpr int kSlots = 2 * GameConstants::kPlayersPerSide;

// Slot 0-4 are CT roster positions, 5-9 T.
std::optional<int> slot_of(const RoundRecord& round, std::string_view player) {
  for (int i = 0; i < GameConstants::kPlayersPerSide; ++i) {
    if (round.ct_players[i] == player) return i;
    if (round.t_players[i] == player) return GameConstants::kPlayersPerSide + i;
  }
  return std::nullopt;
}

Side slot_side(int slot) { return slot < GameConstants::kPlayersPerSide ? Side::kCT : Side::kT; }

struct RoundTracker {
  std::array<int, kSlots> hp;
  std::array<std::optional<AreaId>, kSlots> area;

  RoundTracker() { hp.fill(GameConstants::kStartHp); }
};

void update_distances(GameState& s, const RoundTracker& tracker, const MapNavigation& nav) {
  const auto& sites = nav.sites();
  double best[2][2] = {{kDistanceUnreachable, kDistanceUnreachable},
                       {kDistanceUnreachable, kDistanceUnreachable}};
  for (int slot = 0; slot < kSlots; ++slot) {
    if (tracker.hp[slot] <= 0 || !tracker.area[slot]) continue;
    const int side = static_cast<int>(slot_side(slot));
    if (sites.has_site(BombSite::kA)) {
      best[side][0] = std::min(best[side][0], sites.to_site(*tracker.area[slot], BombSite::kA));
    }
    if (sites.has_site(BombSite::kB)) {
      best[side][1] = std::min(best[side][1], sites.to_site(*tracker.area[slot], BombSite::kB));
    }
  }
  s.ct_dist_to_a = best[0][0];
  s.ct_dist_to_b = best[0][1];
  s.t_dist_to_a = best[1][0];
  s.t_dist_to_b = best[1][1];
}

std::optional<AreaId> resolve_area(const MapNavigation* nav, const Vec3& pos,
                                   std::optional<AreaId> given) {
  if (given) return given;
  if (nav == nullptr) return std::nullopt;
  return locate_area(nav->mesh(), pos);
}

}  // namespace

std::vector<GameState> replay_round(const MatchRecord& match, const RoundRecord& round,
                                    const MapNavigation* nav) {
  const int rn = round.round_num;
  if (round.start_tick >= round.end_tick) {
    throw ValidationError(rn, round.start_tick, "start_tick must precede end_tick");
  }

  std::vector<GameState> states;
  states.reserve(round.events.size() + 1);

  GameState s;
  s.match_id = match.match_id;
  s.match_date = match.date;
  s.map_name = match.map_name;
  s.round_num = rn;
  s.tick_rate = match.tick_rate;
  s.tick = round.start_tick;
  s.ticks_since_start = 0;
  s.ct_equip_value = round.ct_equip_value;
  s.t_equip_value = round.t_equip_value;
  s.outcome_label = round.winner_side == Side::kCT ? 1 : 0;

  RoundTracker tracker;
  if (nav != nullptr) update_distances(s, tracker, *nav);
  states.push_back(s);

  Tick previous = round.start_tick;
  for (const auto& event : round.events) {
    const Tick t = event.tick;
    if (t < round.start_tick) throw ValidationError(rn, t, "event before round start");
    if (t > round.end_tick) throw ValidationError(rn, t, "event after round end");
    if (t < previous) throw ValidationError(rn, t, "events out of tick order");
    previous = t;

    auto require_slot = [&](const PlayerId& id) {
      auto slot = slot_of(round, id);
      if (!slot) throw ValidationError(rn, t, "player '" + id + "' is not on either roster");
      return *slot;
    };

    if (const auto* step = std::get_if<FootstepEvent>(&event.payload)) {
      const int slot = require_slot(step->player_id);
      if (tracker.hp[slot] <= 0) {
        throw ValidationError(rn, t, "footstep from dead player '" + step->player_id + "'");
      }
      tracker.area[slot] = resolve_area(nav, step->position, step->area_id);
    } else if (const auto* dmg = std::get_if<DamageEvent>(&event.payload)) {
      const int attacker = require_slot(dmg->attacker_id);
      const int victim = require_slot(dmg->victim_id);
      if (slot_side(attacker) == slot_side(victim)) {
        throw ValidationError(rn, t, "team damage is not modelled");
      }
      if (dmg->hp_damage < 1 || dmg->hp_damage > GameConstants::kStartHp) {
        throw ValidationError(rn, t, "hp_damage outside 1..100");
      }
      int& hp = tracker.hp[victim];
      if (hp - dmg->hp_damage < 0) {
        throw ValidationError(rn, t, "HP below 0 for '" + dmg->victim_id + "'");
      }
      hp -= dmg->hp_damage;
      if ((hp == 0) != dmg->is_kill) {
        throw ValidationError(rn, t, "is_kill does not match remaining HP of '" +
                                         dmg->victim_id + "'");
      }
      if (slot_side(victim) == Side::kCT) {
        s.ct_hp_total -= dmg->hp_damage;
        if (dmg->is_kill) --s.ct_players_alive;
      } else {
        s.t_hp_total -= dmg->hp_damage;
        if (dmg->is_kill) --s.t_players_alive;
      }
      if (nav != nullptr) {
        if (tracker.hp[attacker] > 0) {
          tracker.area[attacker] = resolve_area(nav, dmg->attacker_position, std::nullopt);
        }
        if (hp > 0) tracker.area[victim] = resolve_area(nav, dmg->victim_position, std::nullopt);
      }
    } else if (const auto* plant = std::get_if<BombPlantEvent>(&event.payload)) {
      require_slot(plant->player_id);
      if (s.bomb_planted) throw ValidationError(rn, t, "bomb planted twice");
      if (plant->site == BombSite::kNone) throw ValidationError(rn, t, "bomb plant without site");
      s.bomb_planted = true;
      s.bomb_site = plant->site;
    } else if (const auto* defuse = std::get_if<BombDefuseEvent>(&event.payload)) {
      require_slot(defuse->player_id);
      if (!s.bomb_planted) throw ValidationError(rn, t, "bomb defused before any plant");
    }

    s.tick = t;
    s.ticks_since_start = t - round.start_tick;
    if (nav != nullptr) update_distances(s, tracker, *nav);
    states.push_back(s);
  }
  return states;
}

std::vector<GameState> replay_match(const MatchRecord& match, const MapNavigation* nav) {
  std::vector<GameState> all;
  for (const auto& round : match.rounds) {
    auto states = replay_round(match, round, nav);
    all.insert(all.end(), std::make_move_iterator(states.begin()),
               std::make_move_iterator(states.end()));
  }
  return all;
}

// --- validation -------------------------------------------------------------

namespace {

class ViolationSink {
 public:
  explicit ViolationSink(std::vector<Violation>& out) : out_(out) {}
  void add(int round, Tick tick, std::string rule, std::string message) {
    out_.push_back({round, tick, std::move(rule), std::move(message)});
  }

 private:
  std::vector<Violation>& out_;
};

void validate_round(const RoundRecord& round, ViolationSink& sink) {
  const int rn = round.round_num;
  if (round.start_tick >= round.end_tick) {
    sink.add(rn, round.start_tick, "tick-order", "start_tick must precede end_tick");
  }
  if (round.ct_equip_value < 0 || round.t_equip_value < 0) {
    sink.add(rn, round.start_tick, "equip-value", "equipment value must be non-negative");
  }
  if (round.win_reason == WinReason::kBombDefused && round.winner_side != Side::kCT) {
    sink.add(rn, round.end_tick, "win-reason", "bomb_defused rounds are won by CT");
  }
  if (round.win_reason == WinReason::kBombExploded && round.winner_side != Side::kT) {
    sink.add(rn, round.end_tick, "win-reason", "bomb_exploded rounds are won by T");
  }
  if (round.ct_team.empty() || round.t_team.empty() || round.ct_team == round.t_team) {
    sink.add(rn, round.start_tick, "teams", "CT and T teams must be distinct and named");
  }

  std::set<std::string_view> seen;
  for (const auto* roster : {&round.ct_players, &round.t_players}) {
    for (const auto& p : *roster) {
      if (p.empty() || !seen.insert(p).second) {
        sink.add(rn, round.start_tick, "roster", "rosters need 10 distinct non-empty ids");
      }
    }
  }

  std::array<int, kSlots> hp;
  hp.fill(GameConstants::kStartHp);
  std::array<int, kSlots> damage_taken{};
  Tick previous = round.start_tick;
  int plants = 0;

  for (const auto& event : round.events) {
    const Tick t = event.tick;
    if (t < round.start_tick || t > round.end_tick) {
      sink.add(rn, t, "event-range", "event tick outside [start_tick, end_tick]");
    }
    if (t < previous) sink.add(rn, t, "event-order", "events not sorted by tick");
    previous = std::max(previous, t);

    auto check_player = [&](const PlayerId& id, std::optional<Side> expected) -> std::optional<int> {
      auto slot = slot_of(round, id);
      if (!slot) {
        sink.add(rn, t, "unknown-player", "player '" + id + "' is not on either roster");
        return std::nullopt;
      }
      if (expected && slot_side(*slot) != *expected) {
        sink.add(rn, t, "player-side", "player '" + id + "' is not on side " +
                                           std::string(to_string(*expected)));
      }
      return slot;
    };

    if (const auto* step = std::get_if<FootstepEvent>(&event.payload)) {
      auto slot = check_player(step->player_id, step->side);
      if (slot && hp[*slot] <= 0) sink.add(rn, t, "dead-actor", "footstep from dead player");
    } else if (const auto* dmg = std::get_if<DamageEvent>(&event.payload)) {
      if (dmg->attacker_side == dmg->victim_side) {
        sink.add(rn, t, "team-damage", "attacker and victim on the same side");
      }
      if (dmg->hp_damage < 1 || dmg->hp_damage > GameConstants::kStartHp) {
        sink.add(rn, t, "hp-range", "hp_damage outside 1..100");
      }
      check_player(dmg->attacker_id, dmg->attacker_side);
      auto victim = check_player(dmg->victim_id, dmg->victim_side);
      if (dmg->assister_id) {
        auto assister = check_player(*dmg->assister_id, dmg->attacker_side);
        if (!dmg->is_kill) sink.add(rn, t, "assist", "assister set on a non-kill event");
        (void)assister;
      }
      if (victim) {
        damage_taken[*victim] += dmg->hp_damage;
        if (damage_taken[*victim] > GameConstants::kStartHp) {
          sink.add(rn, t, "hp-overflow", "cumulative damage to '" + dmg->victim_id + "' exceeds 100");
        }
        const bool was_alive = hp[*victim] > 0;
        hp[*victim] -= dmg->hp_damage;
        const bool lethal = was_alive && hp[*victim] <= 0;
        if (dmg->is_kill != lethal) {
          sink.add(rn, t, "kill-flag", "is_kill must be set exactly on the lethal damage event");
        }
      }
    } else if (const auto* plant = std::get_if<BombPlantEvent>(&event.payload)) {
      check_player(plant->player_id, Side::kT);
      if (++plants > 1) sink.add(rn, t, "bomb-plant-count", "more than one bomb plant");
      if (plant->site == BombSite::kNone) sink.add(rn, t, "bomb-site", "plant needs site A or B");
    } else if (const auto* defuse = std::get_if<BombDefuseEvent>(&event.payload)) {
      check_player(defuse->player_id, Side::kCT);
      if (plants == 0) sink.add(rn, t, "defuse-without-plant", "bomb defused before any plant");
    }
  }
}

}  // namespace

std::vector<Violation> validate_match(const MatchRecord& match,
                                      const std::vector<std::string>& map_pool) {
  std::vector<Violation> out;
  ViolationSink sink(out);

  if (match.match_id.empty()) sink.add(0, 0, "match-id", "match_id is empty");
  if (std::find(map_pool.begin(), map_pool.end(), match.map_name) == map_pool.end()) {
    sink.add(0, 0, "map-pool", "map '" + match.map_name + "' is not in the map pool");
  }
  if (match.tick_rate <= 0) sink.add(0, 0, "tick-rate", "tick_rate must be positive");
  if (match.rounds.size() > static_cast<std::size_t>(GameConstants::kMaxRounds)) {
    sink.add(0, 0, "round-count", "more than 30 rounds (overtime is not modelled)");
  }

  std::map<std::string, int> wins;
  bool decided = false;
  for (std::size_t i = 0; i < match.rounds.size(); ++i) {
    const auto& round = match.rounds[i];
    const int expected = static_cast<int>(i) + 1;
    if (round.round_num != expected) {
      sink.add(round.round_num, round.start_tick, "round-numbering",
               "expected round " + std::to_string(expected));
    }
    if (decided) {
      sink.add(round.round_num, round.start_tick, "match-end",
               "round played after a team reached 16 wins");
    }
    if (i > 0) {
      const auto& first = match.rounds.front();
      const bool second_half = expected > GameConstants::kHalfLength;
      const auto& want_ct = second_half ? first.t_team : first.ct_team;
      const auto& want_t = second_half ? first.ct_team : first.t_team;
      if (round.ct_team != want_ct || round.t_team != want_t) {
        sink.add(round.round_num, round.start_tick, "side-swap",
                 second_half ? "sides must swap after round 15"
                             : "sides must stay fixed within a half");
      }
      if (match.rounds[i - 1].end_tick > round.start_tick) {
        sink.add(round.round_num, round.start_tick, "round-overlap",
                 "round starts before the previous one ended");
      }
    }
    validate_round(round, sink);
    const auto& winner = round.winner_side == Side::kCT ? round.ct_team : round.t_team;
    if (++wins[winner] >= GameConstants::kRoundsToWin) decided = true;
  }
  return out;
}

}  // namespace wpa
