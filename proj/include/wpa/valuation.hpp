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

#ifndef WPA_VALUATION_HPP_
#define WPA_VALUATION_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wpa/core.hpp"
#include "wpa/navmesh.hpp"
#include "wpa/stats.hpp"
#include "wpa/winprob.hpp"

namespace wpa {

// Win-probability change caused by one damage event, in the CT frame.
struct ActionValue {
  std::string match_id;
  std::string match_date;
  std::string map_name;
  int round_num = 0;
  Tick tick = 0;
  std::size_t event_index = 0;
  PlayerId actor_id;
  Side actor_side = Side::kCT;
  PlayerId victim_id;
  int hp_damage = 0;
  bool is_kill = false;
  GameState pre_state;
  GameState post_state;
  double pre_prob = 0.5;   // P(CT wins) before the event
  double post_prob = 0.5;  // and after
  double v_ct = 0.0;       // post_prob - pre_prob
  double actor_credit = 0.0;     // v_ct for CT actors, -v_ct for T actors
  double receiver_credit = 0.0;  // -actor_credit, credited to the victim

  // Win probability of the actor's team before the event.
  double actor_pre_prob() const { return actor_side == Side::kCT ? pre_prob : 1.0 - pre_prob; }
};

// One ActionValue per damage event, in event order.
std::vector<ActionValue> value_actions(const MatchRecord& match, const WinProbModel& model,
                                       const MapNavigation* nav = nullptr);

// P(CT wins | b) - P(CT wins | a).
double value_between(const WinProbModel& model, const GameState& a, const GameState& b);

struct RoundRef {
  const MatchRecord* match = nullptr;
  const RoundRecord* round = nullptr;
};

struct AlivePattern {
  Side side = Side::kT;
  int side_alive = 1;
  int other_alive = 2;

  bool matches(const GameState& s) const {
    return s.players_alive(side) == side_alive && s.players_alive(opponent(side)) == other_alive;
  }
};

// Conjunction of the set predicates. Round predicates select rounds; state
// predicates select actions by their pre-event state.
struct ScenarioFilter {
  bool pistol_only = false;
  std::set<std::string> maps;  // empty: any map
  std::optional<AlivePattern> alive;
  // Range on the acting team's win probability before the event, inclusive.
  std::optional<std::pair<double, double>> win_prob;

  bool matches_round(const MatchRecord& match, const RoundRecord& round) const;
  bool matches_action(const ActionValue& a) const;
  bool has_state_predicates() const { return alive.has_value() || win_prob.has_value(); }
};

struct View {
  std::vector<RoundRef> rounds;
  std::vector<ActionValue> actions;

  bool empty() const { return rounds.empty(); }
};

View apply_filter(const ScenarioFilter& filter, const std::vector<MatchRecord>& matches,
                  const std::vector<ActionValue>& actions);
View full_view(const std::vector<MatchRecord>& matches, const std::vector<ActionValue>& actions);

// Rounds each player is rostered in within the view.
std::map<PlayerId, int> rounds_played(const View& view);

struct WpaOptions {
  bool include_received = true;  // count receiver credit of damage taken
};

// Per player (own actor credits + received credits) / rounds played. Players
// with actions but zero rounds make this throw std::invalid_argument.
std::map<PlayerId, double> wpa(const std::vector<ActionValue>& actions,
                               const std::map<PlayerId, int>& rounds_played,
                               const WpaOptions& options = {});

// WPA of one player in every view round they are rostered in, in view order.
std::vector<double> per_round_wpa(const View& view, const PlayerId& player,
                                  const WpaOptions& options = {});

struct ClassicConfig {
  double trade_window_seconds = 5.0;
  int assist_damage_threshold = 40;
  double c_kill = 0.679;
  double c_survival = 0.317;
  double c_multikill = 1.277;
};

struct ClassicMetrics {
  int rounds = 0;
  int kills = 0;
  int deaths = 0;
  int assists = 0;
  int damage = 0;
  int kast_rounds = 0;
  int survived = 0;
  int multikill_points = 0;  // sum over rounds of kills squared
  double kdr = 0.0;
  bool kdr_no_deaths = false;  // deaths were 0; kdr = kills
  double adr = 0.0;
  double kast = 0.0;  // fraction in [0, 1]
  double r_kill = 0.0;
  double r_survival = 0.0;
  double r_multikill = 0.0;
  double rating_1_0 = 0.0;
};

// (R_K + 0.7 R_S + R_MK) / 2.7
double rating_1_0(double r_kill, double r_survival, double r_multikill);

std::map<PlayerId, ClassicMetrics> classic_metrics(const View& view, const ClassicConfig& config = {});
std::map<PlayerId, ClassicMetrics> classic_metrics(const std::vector<MatchRecord>& matches,
                                                   const ClassicConfig& config = {});

struct BootstrapSummary {
  std::size_t b = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double p5 = 0.0;
  double p95 = 0.0;
  std::vector<double> samples;  // resampled means, in draw order
};

// Resamples the per-round values with replacement B times. Throws for B < 2
// or no rounds.
BootstrapSummary bootstrap_wpa(const std::vector<double>& per_round, int b, std::uint64_t seed);

struct PlayerValuation {
  PlayerId player_id;
  int rank = 0;
  int rounds_played = 0;
  double wpa_total = 0.0;
  double wpa_per_round = 0.0;
  ClassicMetrics classic;
  std::optional<BootstrapSummary> bootstrap;
};

struct RatingOptions {
  WpaOptions wpa;
  ClassicConfig classic;
  int bootstrap = 0;  // B; 0 disables
  std::uint64_t seed = 0;
  int min_rounds = 1;
};

// Players ranked by WPA per round (ties by id). Empty for an empty view.
std::vector<PlayerValuation> rate_players(const View& view, const RatingOptions& options = {});

struct PeriodRecord {
  PlayerId player;
  std::string period;  // YYYY-MM
  int rounds = 0;
  std::map<std::string, double> metrics;  // wpa, kdr, adr, kast, rating_1_0
};

// Per player and calendar month of match date.
std::vector<PeriodRecord> period_table(const std::vector<MatchRecord>& matches,
                                       const std::vector<ActionValue>& actions,
                                       const RatingOptions& options = {});

struct StabilityOptions {
  int min_rounds = 100;
  std::string reference_metric = "kdr";
  std::string focal_metric = "wpa";
};

struct StabilityRow {
  std::string metric;
  std::size_t n_pairs = 0;
  double autocorrelation = 0.0;  // consecutive periods, pooled over pairs
  double z = 0.0;
  double reference_correlation = 0.0;  // against the reference metric, same period
  std::size_t n_reference = 0;
  // Focal metric stability versus this metric's; p small means focal is more stable.
  std::optional<CorrelationTest> focal_test;
};

struct StabilityReport {
  std::size_t periods = 0;
  std::vector<StabilityRow> rows;
  std::vector<std::string> warnings;
};

// Throws std::invalid_argument with fewer than 2 periods or 4 qualifying pairs.
StabilityReport stability_analysis(const std::vector<PeriodRecord>& table,
                                   const StabilityOptions& options = {});

struct ImpactQuery {
  std::optional<double> threshold;  // minimum |actor_credit|
  std::optional<std::size_t> top_k;
  std::optional<std::pair<double, double>> actor_pre_prob;  // inclusive range
};

// Sorted by |actor_credit| descending, then match, round and tick.
std::vector<ActionValue> impact_plays(const std::vector<ActionValue>& actions,
                                      const ImpactQuery& query);

}  // namespace wpa

#endif  // WPA_VALUATION_HPP_
