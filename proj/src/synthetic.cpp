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

// Synthetic matches whose outcomes follow a known logistic model.
//
// Each damage step picks between an outcome-raising and an outcome-lowering
// candidate so that the CT win probability is a martingale along the round;
// the round winner is finally drawn from the last state's probability. Hence
// P(CT wins | state) is exactly the ground-truth probability of every state.

#include "wpa/synthetic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "wpa/replay.hpp"

namespace wpa {

void SyntheticConfig::validate() const {
  if (n_matches < 0) throw std::invalid_argument("n_matches must be >= 0");
  if (skill_gap < 0.0 || skill_gap > 1.0) throw std::invalid_argument("skill gap must be in [0, 1]");
  if (mean_damage_events < 0.0 || mean_footsteps < 0.0) {
    throw std::invalid_argument("mean event counts must be >= 0");
  }
  if (plant_chance < 0.0 || plant_chance > 1.0) throw std::invalid_argument("plant chance must be in [0, 1]");
  if (tick_rate <= 0) throw std::invalid_argument("tick rate must be positive");
  if (n_teams < 2) throw std::invalid_argument("need at least 2 teams");
  if (days_between_matches < 0) throw std::invalid_argument("days between matches must be >= 0");
  for (const auto& [map, w] : map_weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("map weight for " + map + " must be >= 0");
  }
}

double GroundTruth::logit(const GameState& s) const {
  const double equip_gap = (s.ct_equip_value - s.t_equip_value) / 1000.0;
  double z = map_intercept(s.map_name);
  z += equip_per_1000 * equip_gap;
  z += hp_per_100 * (s.ct_hp_total - s.t_hp_total) / 100.0;
  z += alive * (s.ct_players_alive - s.t_players_alive);
  z += bomb_planted * (s.bomb_planted ? 1.0 : 0.0);
  z += seconds * s.seconds_since_start();
  if (auto it = interaction.find(s.map_name); it != interaction.end()) z += it->second * equip_gap;
  return z;
}

double GroundTruth::probability(const GameState& s) const {
  return 1.0 / (1.0 + std::exp(-logit(s)));
}

double GroundTruth::map_intercept(const std::string& map) const {
  auto it = map_offsets.find(map);
  return intercept + (it == map_offsets.end() ? 0.0 : it->second);
}

std::vector<std::pair<std::string, double>> GroundTruth::parameters() const {
  std::vector<std::pair<std::string, double>> out = {
      {"intercept", intercept},
      {"ct_equip_value_per_1000", equip_per_1000},
      {"t_equip_value_per_1000", -equip_per_1000},
      {"ct_hp_total_per_100", hp_per_100},
      {"t_hp_total_per_100", -hp_per_100},
      {"ct_players_alive", alive},
      {"t_players_alive", -alive},
      {"bomb_planted", bomb_planted},
      {"seconds_since_start", seconds},
  };
  for (const auto& [m, v] : map_offsets) out.emplace_back("map_offset[" + m + "]", v);
  for (const auto& [m, v] : interaction) out.emplace_back("interaction[" + m + "]", v);
  return out;
}

namespace {

constexpr int kRoundSeconds = 115;
constexpr int kFreezeSeconds = 20;

struct Player {
  PlayerId id;
  double skill = 0.0;
};

struct Team {
  std::string name;
  std::vector<Player> players;
};

std::string add_days(const std::string& iso, int days) {
  int y = 0;
  unsigned m = 0, d = 0;
  if (std::sscanf(iso.c_str(), "%d-%u-%u", &y, &m, &d) != 3) {
    throw std::invalid_argument("start date must be YYYY-MM-DD");
  }
  const std::chrono::year_month_day start{std::chrono::year{y}, std::chrono::month{m},
                                          std::chrono::day{d}};
  if (!start.ok()) throw std::invalid_argument("invalid start date " + iso);
  const std::chrono::year_month_day out{std::chrono::sys_days{start} + std::chrono::days{days}};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(out.year()),
                static_cast<unsigned>(out.month()), static_cast<unsigned>(out.day()));
  return buf;
}

class RoundSimulator {
 public:
  RoundSimulator(std::mt19937_64& rng, const GroundTruth& truth, const SyntheticConfig& config)
      : rng_(rng), truth_(truth), config_(config) {}

  RoundRecord play(const MatchRecord& match, int round_num, Tick start, const Team& ct,
                   const Team& t) {
    RoundRecord r;
    r.round_num = round_num;
    r.start_tick = start;
    r.ct_team = ct.name;
    r.t_team = t.name;
    for (int k = 0; k < GameConstants::kPlayersPerSide; ++k) {
      r.ct_players[k] = ct.players[k].id;
      r.t_players[k] = t.players[k].id;
    }
    const bool pistol = round_num == 1 || round_num == GameConstants::kHalfLength + 1;
    r.ct_equip_value = pistol ? 4000 : draw_equipment();
    r.t_equip_value = pistol ? 4000 : draw_equipment();

    state_ = GameState{};
    state_.match_id = match.match_id;
    state_.map_name = match.map_name;
    state_.tick_rate = match.tick_rate;
    state_.round_num = round_num;
    state_.ct_equip_value = r.ct_equip_value;
    state_.t_equip_value = r.t_equip_value;
    hp_[0].fill(GameConstants::kStartHp);
    hp_[1].fill(GameConstants::kStartHp);
    for (auto& row : dealt_) row.fill(0);
    ct_ = &ct;
    t_ = &t;

    const int rate = match.tick_rate;
    const Tick duration = static_cast<Tick>(kRoundSeconds) * rate;
    const Tick window = GameConstants::bomb_window_ticks(rate);
    const int damage = std::poisson_distribution<int>(config_.mean_damage_events)(rng_);
    const int steps = std::poisson_distribution<int>(config_.mean_footsteps)(rng_);
    std::vector<bool> is_damage(static_cast<std::size_t>(damage + steps), false);
    std::fill(is_damage.begin(), is_damage.begin() + damage, true);
    std::shuffle(is_damage.begin(), is_damage.end(), rng_);
    std::vector<Tick> offsets(is_damage.size());
    std::uniform_int_distribution<Tick> when(1, duration - 1);
    for (auto& o : offsets) o = when(rng_);
    std::sort(offsets.begin(), offsets.end());

    std::optional<Tick> plant_offset;
    for (std::size_t k = 0; k < offsets.size(); ++k) {
      Tick offset = offsets[k];
      if (plant_offset) {
        // Compress the rest of the round into the bomb window.
        offset = *plant_offset + 1 +
                 (offset - *plant_offset) * (window - 2) / std::max<Tick>(1, duration - *plant_offset);
      }
      const Tick tick = start + offset;
      if (is_damage[k] && damage_step(r, tick)) {
        if (state_.bomb_planted && !plant_offset) plant_offset = offset;
        continue;
      }
      footstep(r, tick);
    }

    const bool ct_wins = std::bernoulli_distribution(truth_.probability(state_))(rng_);
    r.winner_side = ct_wins ? Side::kCT : Side::kT;
    if (plant_offset) {
      r.end_tick = start + *plant_offset + window;
      r.win_reason = ct_wins ? WinReason::kBombDefused : WinReason::kBombExploded;
    } else {
      r.end_tick = start + duration;
      r.win_reason = ct_wins ? WinReason::kTimeExpired : WinReason::kElimination;
    }
    return r;
  }

 private:
  int draw_equipment() {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
    int lo = 20000, hi = 27000;
    if (u < 0.2) {
      lo = 3000;
      hi = 8000;
    } else if (u < 0.4) {
      lo = 9000;
      hi = 17000;
    }
    return 50 * std::uniform_int_distribution<int>(lo / 50, hi / 50)(rng_);
  }

  Vec3 position() {
    std::uniform_real_distribution<double> xy(-2000.0, 2000.0);
    return {xy(rng_), xy(rng_), 0.0};
  }

  const Team& team(Side s) const { return s == Side::kCT ? *ct_ : *t_; }
  int side_index(Side s) const { return s == Side::kCT ? 0 : 1; }

  std::vector<int> alive(Side s) const {
    std::vector<int> out;
    for (int k = 0; k < GameConstants::kPlayersPerSide; ++k) {
      if (hp_[side_index(s)][k] > 0) out.push_back(k);
    }
    return out;
  }

  // Skilled players attack more and get hit less; wounded players draw fire.
  int pick(const std::vector<int>& slots, Side s, double sign) {
    std::vector<double> w;
    for (int k : slots) {
      const double wounded = sign < 0.0 ? 1.0 + (100 - hp_[side_index(s)][k]) / 25.0 : 1.0;
      w.push_back(wounded * std::exp(sign * 0.5 * team(s).players[k].skill));
    }
    return slots[std::discrete_distribution<std::size_t>(w.begin(), w.end())(rng_)];
  }

  struct Candidate {
    bool valid = false;
    bool plant = false;
    BombSite site = BombSite::kNone;
    Side attacker_side = Side::kCT;
    int attacker = 0;
    int victim = 0;
    int amount = 0;
    GameState after;
  };

  Candidate damage_candidate(Side attacker_side) {
    Candidate c;
    const Side victim_side = opponent(attacker_side);
    const auto attackers = alive(attacker_side);
    const auto victims_alive = alive(victim_side);
    std::vector<int> victims;
    for (int k : victims_alive) {
      // The last defender standing never dies, and must be able to take a hit.
      if (victims_alive.size() > 1 || hp_[side_index(victim_side)][k] > 1) victims.push_back(k);
    }
    if (attackers.empty() || victims.empty()) return c;
    c.valid = true;
    c.attacker_side = attacker_side;
    c.attacker = pick(attackers, attacker_side, 1.0);
    c.victim = pick(victims, victim_side, -1.0);
    const int hp = hp_[side_index(victim_side)][c.victim];
    int amount = std::uniform_int_distribution<int>(20, 100)(rng_);
    if (victims_alive.size() == 1) amount = std::min(amount, hp - 1);
    c.amount = std::min(amount, hp);
    c.after = state_;
    const bool kill = c.amount == hp;
    if (victim_side == Side::kCT) {
      c.after.ct_hp_total -= c.amount;
      c.after.ct_players_alive -= kill ? 1 : 0;
    } else {
      c.after.t_hp_total -= c.amount;
      c.after.t_players_alive -= kill ? 1 : 0;
    }
    return c;
  }

  Candidate plant_candidate() {
    Candidate c;
    const auto planters = alive(Side::kT);
    if (state_.bomb_planted || planters.empty()) return c;
    c.valid = true;
    c.plant = true;
    c.attacker_side = Side::kT;
    c.attacker = pick(planters, Side::kT, 1.0);
    c.site = std::bernoulli_distribution(0.5)(rng_) ? BombSite::kA : BombSite::kB;
    c.after = state_;
    c.after.bomb_planted = true;
    c.after.bomb_site = c.site;
    return c;
  }

  bool damage_step(RoundRecord& r, Tick tick) {
    Candidate up = damage_candidate(Side::kCT);
    Candidate down = std::bernoulli_distribution(config_.plant_chance)(rng_) ? plant_candidate() : Candidate{};
    if (!down.valid) down = damage_candidate(Side::kT);
    if (!up.valid || !down.valid) return false;
    const double p = truth_.probability(state_);
    const double p_up = truth_.probability(up.after);
    const double p_down = truth_.probability(down.after);
    if (!(p_down < p && p < p_up)) return false;
    const double q = (p - p_down) / (p_up - p_down);
    const Candidate& c = std::bernoulli_distribution(q)(rng_) ? up : down;
    apply(r, tick, c);
    return true;
  }

  void apply(RoundRecord& r, Tick tick, const Candidate& c) {
    const Team& attackers = team(c.attacker_side);
    if (c.plant) {
      r.events.push_back({tick, BombPlantEvent{attackers.players[c.attacker].id, c.site}});
      state_ = c.after;
      return;
    }
    const Side victim_side = opponent(c.attacker_side);
    const int vs = side_index(victim_side);
    auto& victim_hp = hp_[vs][c.victim];
    victim_hp -= c.amount;
    DamageEvent d;
    d.attacker_id = attackers.players[c.attacker].id;
    d.attacker_side = c.attacker_side;
    d.victim_id = team(victim_side).players[c.victim].id;
    d.victim_side = victim_side;
    d.hp_damage = c.amount;
    d.is_kill = victim_hp == 0;
    d.attacker_position = position();
    d.victim_position = position();
    // Teammate with the most earlier damage on the victim gets the assist.
    auto& dealt = dealt_[side_index(c.attacker_side) * GameConstants::kPlayersPerSide + c.attacker];
    if (d.is_kill) {
      int best = 0, best_slot = -1;
      for (int k = 0; k < GameConstants::kPlayersPerSide; ++k) {
        if (k == c.attacker) continue;
        const int v = dealt_[side_index(c.attacker_side) * GameConstants::kPlayersPerSide + k][c.victim];
        if (v > best) {
          best = v;
          best_slot = k;
        }
      }
      if (best_slot >= 0) d.assister_id = attackers.players[best_slot].id;
    }
    dealt[c.victim] += c.amount;
    r.events.push_back({tick, std::move(d)});
    state_ = c.after;
  }

  void footstep(RoundRecord& r, Tick tick) {
    Side side = std::bernoulli_distribution(0.5)(rng_) ? Side::kCT : Side::kT;
    if (alive(side).empty()) side = opponent(side);
    const auto slots = alive(side);
    const int k = slots[std::uniform_int_distribution<std::size_t>(0, slots.size() - 1)(rng_)];
    r.events.push_back({tick, FootstepEvent{team(side).players[k].id, side, position(), std::nullopt}});
  }

  std::mt19937_64& rng_;
  const GroundTruth& truth_;
  const SyntheticConfig& config_;
  GameState state_;
  std::array<std::array<int, GameConstants::kPlayersPerSide>, 2> hp_{};
  // dealt_[attacker side * 5 + attacker][victim]: damage dealt this round.
  std::array<std::array<int, GameConstants::kPlayersPerSide>, 2 * GameConstants::kPlayersPerSide>
      dealt_{};
  const Team* ct_ = nullptr;
  const Team* t_ = nullptr;
};

}  // namespace

SyntheticData generate_synthetic(const SyntheticConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);

  std::vector<std::pair<std::string, double>> maps = config.map_weights;
  if (maps.empty()) {
    for (const auto& m : default_map_pool()) maps.emplace_back(m, 1.0);
  }
  std::sort(maps.begin(), maps.end());
  std::vector<double> weights;
  for (const auto& [m, w] : maps) weights.push_back(w);

  SyntheticData out;
  GroundTruth& truth = out.truth;
  truth.intercept =
      config.skill_gap * 4.0 * (config.favored_side == Side::kCT ? 1.0 : -1.0);
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const double offset =
        maps.size() == 1 ? 0.0 : -0.15 + 0.3 * static_cast<double>(k) / (maps.size() - 1);
    truth.map_offsets[maps[k].first] = offset;
    if (config.interaction) {
      truth.interaction[maps[k].first] =
          (k % 2 == 0 ? 1.0 : -1.0) * config.interaction_strength;
    }
  }

  std::vector<Team> teams(static_cast<std::size_t>(config.n_teams));
  std::normal_distribution<double> skill(0.0, 1.0);
  for (int t = 0; t < config.n_teams; ++t) {
    char name[32];
    std::snprintf(name, sizeof name, "team%02d", t + 1);
    teams[t].name = name;
    for (int k = 0; k < GameConstants::kPlayersPerSide; ++k) {
      char pid[32];
      std::snprintf(pid, sizeof pid, "p%03d", t * GameConstants::kPlayersPerSide + k + 1);
      teams[t].players.push_back({pid, skill(rng)});
      out.player_skill[pid] = teams[t].players.back().skill;
    }
  }

  RoundSimulator sim(rng, truth, config);
  for (int i = 0; i < config.n_matches; ++i) {
    MatchRecord m;
    char id[48];
    std::snprintf(id, sizeof id, "syn-%llu-%04d", static_cast<unsigned long long>(config.seed), i + 1);
    m.match_id = id;
    m.map_name = maps[std::discrete_distribution<std::size_t>(weights.begin(), weights.end())(rng)].first;
    m.tick_rate = config.tick_rate;
    m.date = add_days(config.start_date, i * config.days_between_matches);
    const auto a = std::uniform_int_distribution<int>(0, config.n_teams - 1)(rng);
    auto b = std::uniform_int_distribution<int>(0, config.n_teams - 2)(rng);
    if (b >= a) ++b;

    std::map<std::string, int> wins;
    Tick start = static_cast<Tick>(kFreezeSeconds) * config.tick_rate;
    for (int rn = 1; rn <= GameConstants::kMaxRounds; ++rn) {
      const bool second_half = rn > GameConstants::kHalfLength;
      const Team& ct = second_half ? teams[b] : teams[a];
      const Team& t = second_half ? teams[a] : teams[b];
      RoundRecord r = sim.play(m, rn, start, ct, t);
      start = r.end_tick + static_cast<Tick>(kFreezeSeconds) * config.tick_rate;
      const std::string winner = r.winner_side == Side::kCT ? r.ct_team : r.t_team;
      m.rounds.push_back(std::move(r));
      if (++wins[winner] >= GameConstants::kRoundsToWin) break;
    }
    out.matches.push_back(std::move(m));
  }
  return out;
}

}  // namespace wpa
