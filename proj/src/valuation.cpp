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

#include "wpa/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "wpa/replay.hpp"

namespace wpa {

namespace {

using RoundKey = std::pair<std::string, int>;

RoundKey key_of(const ActionValue& a) { return {a.match_id, a.round_num}; }
RoundKey key_of(const RoundRef& r) { return {r.match->match_id, r.round->round_num}; }

}  // namespace

std::vector<ActionValue> value_actions(const MatchRecord& match, const WinProbModel& model,
                                       const MapNavigation* nav) {
  std::vector<GameState> states;
  std::vector<std::size_t> offsets;
  for (const auto& round : match.rounds) {
    offsets.push_back(states.size());
    auto rs = replay_round(match, round, nav);
    states.insert(states.end(), std::make_move_iterator(rs.begin()),
                  std::make_move_iterator(rs.end()));
  }
  const auto probs = predict_states(model, states);

  std::vector<ActionValue> out;
  for (std::size_t r = 0; r < match.rounds.size(); ++r) {
    const auto& round = match.rounds[r];
    for (std::size_t k = 0; k < round.events.size(); ++k) {
      const DamageEvent* d = round.events[k].damage();
      if (d == nullptr) continue;
      const std::size_t pre = offsets[r] + k;
      ActionValue a;
      a.match_id = match.match_id;
      a.match_date = match.date;
      a.map_name = match.map_name;
      a.round_num = round.round_num;
      a.tick = round.events[k].tick;
      a.event_index = k;
      a.actor_id = d->attacker_id;
      a.actor_side = d->attacker_side;
      a.victim_id = d->victim_id;
      a.hp_damage = d->hp_damage;
      a.is_kill = d->is_kill;
      a.pre_state = states[pre];
      a.post_state = states[pre + 1];
      a.pre_prob = probs[pre];
      a.post_prob = probs[pre + 1];
      a.v_ct = a.post_prob - a.pre_prob;
      a.actor_credit = a.actor_side == Side::kCT ? a.v_ct : -a.v_ct;
      a.receiver_credit = -a.actor_credit;
      out.push_back(std::move(a));
    }
  }
  return out;
}

double value_between(const WinProbModel& model, const GameState& a, const GameState& b) {
  const GameState pair[2] = {a, b};
  const auto p = predict_states(model, pair);
  return p[1] - p[0];
}

bool ScenarioFilter::matches_round(const MatchRecord& match, const RoundRecord& round) const {
  if (pistol_only && round.round_num != 1 && round.round_num != GameConstants::kHalfLength + 1) {
    return false;
  }
  return maps.empty() || maps.contains(match.map_name);
}

bool ScenarioFilter::matches_action(const ActionValue& a) const {
  if (alive && !alive->matches(a.pre_state)) return false;
  if (win_prob) {
    const double p = a.actor_pre_prob();
    if (p < win_prob->first || p > win_prob->second) return false;
  }
  return true;
}

View apply_filter(const ScenarioFilter& filter, const std::vector<MatchRecord>& matches,
                  const std::vector<ActionValue>& actions) {
  View v;
  std::set<RoundKey> keep;
  for (const auto& m : matches) {
    for (const auto& r : m.rounds) {
      if (!filter.matches_round(m, r)) continue;
      v.rounds.push_back({&m, &r});
      keep.insert({m.match_id, r.round_num});
    }
  }
  for (const auto& a : actions) {
    if (keep.contains(key_of(a)) && filter.matches_action(a)) v.actions.push_back(a);
  }
  return v;
}

View full_view(const std::vector<MatchRecord>& matches, const std::vector<ActionValue>& actions) {
  return apply_filter(ScenarioFilter{}, matches, actions);
}

std::map<PlayerId, int> rounds_played(const View& view) {
  std::map<PlayerId, int> out;
  for (const auto& r : view.rounds) {
    for (const auto& p : r.round->ct_players) ++out[p];
    for (const auto& p : r.round->t_players) ++out[p];
  }
  return out;
}

std::map<PlayerId, double> wpa(const std::vector<ActionValue>& actions,
                               const std::map<PlayerId, int>& rounds_played,
                               const WpaOptions& options) {
  std::map<PlayerId, double> total;
  for (const auto& [p, n] : rounds_played) total[p] = 0.0;
  for (const auto& a : actions) {
    total[a.actor_id] += a.actor_credit;
    if (options.include_received) total[a.victim_id] += a.receiver_credit;
  }
  for (auto& [p, t] : total) {
    auto it = rounds_played.find(p);
    if (it == rounds_played.end() || it->second <= 0) {
      throw std::invalid_argument("player '" + p + "' has actions but no rounds played");
    }
    t /= it->second;
  }
  return total;
}

std::vector<double> per_round_wpa(const View& view, const PlayerId& player,
                                  const WpaOptions& options) {
  std::map<RoundKey, double> by_round;
  for (const auto& a : view.actions) {
    if (a.actor_id == player) by_round[key_of(a)] += a.actor_credit;
    if (options.include_received && a.victim_id == player) by_round[key_of(a)] += a.receiver_credit;
  }
  std::vector<double> out;
  for (const auto& r : view.rounds) {
    if (!r.round->side_of(player)) continue;
    auto it = by_round.find(key_of(r));
    out.push_back(it == by_round.end() ? 0.0 : it->second);
  }
  return out;
}

double rating_1_0(double r_kill, double r_survival, double r_multikill) {
  return (r_kill + 0.7 * r_survival + r_multikill) / 2.7;
}

std::map<PlayerId, ClassicMetrics> classic_metrics(const View& view, const ClassicConfig& config) {
  std::map<PlayerId, ClassicMetrics> out;
  for (const auto& ref : view.rounds) {
    const MatchRecord& match = *ref.match;
    const RoundRecord& round = *ref.round;
    const Tick window = static_cast<Tick>(std::llround(config.trade_window_seconds * match.tick_rate));

    std::map<PlayerId, int> kills, assists;
    std::map<std::pair<PlayerId, PlayerId>, int> dealt;  // (attacker, victim)
    struct Death {
      PlayerId killer;
      Tick tick;
    };
    std::map<PlayerId, Death> deaths;
    std::map<PlayerId, Tick> death_tick;
    for (const auto& e : round.events) {
      const DamageEvent* d = e.damage();
      if (d == nullptr) continue;
      auto& m = out[d->attacker_id];
      m.damage += d->hp_damage;
      dealt[{d->attacker_id, d->victim_id}] += d->hp_damage;
      if (!d->is_kill) continue;
      ++kills[d->attacker_id];
      deaths[d->victim_id] = {d->attacker_id, e.tick};
      if (d->assister_id) {
        ++assists[*d->assister_id];
      } else {
        for (const auto& mate : round.roster(d->attacker_side)) {
          if (mate == d->attacker_id) continue;
          auto it = dealt.find({mate, d->victim_id});
          if (it != dealt.end() && it->second >= config.assist_damage_threshold) ++assists[mate];
        }
      }
    }

    for (const auto* roster : {&round.ct_players, &round.t_players}) {
      for (const auto& p : *roster) {
        auto& m = out[p];
        ++m.rounds;
        const int k = kills.contains(p) ? kills[p] : 0;
        const int a = assists.contains(p) ? assists[p] : 0;
        m.kills += k;
        m.assists += a;
        m.multikill_points += k * k;
        bool survived = true, traded = false;
        if (auto it = deaths.find(p); it != deaths.end()) {
          survived = false;
          ++m.deaths;
          auto killer_death = deaths.find(it->second.killer);
          traded = killer_death != deaths.end() && killer_death->second.tick >= it->second.tick &&
                   killer_death->second.tick <= it->second.tick + window;
        }
        m.survived += survived ? 1 : 0;
        if (k > 0 || a > 0 || survived || traded) ++m.kast_rounds;
      }
    }
  }

  for (auto it = out.begin(); it != out.end();) {
    auto& m = it->second;
    if (m.rounds == 0) {
      // Damage dealt outside any rostered round cannot happen in a valid view.
      it = out.erase(it);
      continue;
    }
    const double n = m.rounds;
    m.kdr_no_deaths = m.deaths == 0;
    m.kdr = static_cast<double>(m.kills) / std::max(1, m.deaths);
    m.adr = m.damage / n;
    m.kast = m.kast_rounds / n;
    m.r_kill = (m.kills / n) / config.c_kill;
    m.r_survival = (m.survived / n) / config.c_survival;
    m.r_multikill = (m.multikill_points / n) / config.c_multikill;
    m.rating_1_0 = rating_1_0(m.r_kill, m.r_survival, m.r_multikill);
    ++it;
  }
  return out;
}

std::map<PlayerId, ClassicMetrics> classic_metrics(const std::vector<MatchRecord>& matches,
                                                   const ClassicConfig& config) {
  return classic_metrics(full_view(matches, {}), config);
}

BootstrapSummary bootstrap_wpa(const std::vector<double>& per_round, int b, std::uint64_t seed) {
  if (b < 2) throw std::invalid_argument("bootstrap needs B >= 2");
  if (per_round.empty()) throw std::invalid_argument("bootstrap needs at least one round");
  BootstrapSummary s;
  s.b = static_cast<std::size_t>(b);
  s.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, per_round.size() - 1);
  s.samples.reserve(s.b);
  for (int i = 0; i < b; ++i) {
    double total = 0.0;
    for (std::size_t k = 0; k < per_round.size(); ++k) total += per_round[pick(rng)];
    s.samples.push_back(total / static_cast<double>(per_round.size()));
  }
  s.mean = mean(s.samples);
  s.stddev = sample_stddev(s.samples);
  s.p5 = percentile(s.samples, 0.05);
  s.p95 = percentile(s.samples, 0.95);
  return s;
}

std::vector<PlayerValuation> rate_players(const View& view, const RatingOptions& options) {
  std::vector<PlayerValuation> out;
  if (view.empty()) return out;
  const auto rounds = rounds_played(view);
  const auto per_round = wpa(view.actions, rounds, options.wpa);
  const auto classic = classic_metrics(view, options.classic);
  for (const auto& [p, n] : rounds) {
    if (n < options.min_rounds) continue;
    PlayerValuation v;
    v.player_id = p;
    v.rounds_played = n;
    v.wpa_per_round = per_round.at(p);
    v.wpa_total = v.wpa_per_round * n;
    v.classic = classic.at(p);
    if (options.bootstrap > 0) {
      v.bootstrap = bootstrap_wpa(per_round_wpa(view, p, options.wpa), options.bootstrap, options.seed);
    }
    out.push_back(std::move(v));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.wpa_per_round > b.wpa_per_round;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i + 1);
  return out;
}

std::vector<PeriodRecord> period_table(const std::vector<MatchRecord>& matches,
                                       const std::vector<ActionValue>& actions,
                                       const RatingOptions& options) {
  std::map<std::string, View> by_period;
  std::map<std::string, std::string> match_period;
  for (const auto& m : matches) {
    const std::string period = m.date.substr(0, 7);
    match_period[m.match_id] = period;
    for (const auto& r : m.rounds) by_period[period].rounds.push_back({&m, &r});
  }
  for (const auto& a : actions) {
    auto it = match_period.find(a.match_id);
    if (it != match_period.end()) by_period[it->second].actions.push_back(a);
  }
  RatingOptions opts = options;
  opts.bootstrap = 0;
  opts.min_rounds = 1;
  std::vector<PeriodRecord> out;
  for (const auto& [period, view] : by_period) {
    for (const auto& v : rate_players(view, opts)) {
      PeriodRecord rec;
      rec.player = v.player_id;
      rec.period = period;
      rec.rounds = v.rounds_played;
      rec.metrics = {{"wpa", v.wpa_per_round},
                     {"kdr", v.classic.kdr},
                     {"adr", v.classic.adr},
                     {"kast", v.classic.kast},
                     {"rating_1_0", v.classic.rating_1_0}};
      out.push_back(std::move(rec));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.period, a.player) < std::tie(b.period, b.player);
  });
  return out;
}

StabilityReport stability_analysis(const std::vector<PeriodRecord>& table,
                                   const StabilityOptions& options) {
  std::set<std::string> period_set, metric_set;
  std::map<std::pair<std::string, PlayerId>, const PeriodRecord*> index;
  for (const auto& rec : table) {
    period_set.insert(rec.period);
    for (const auto& [name, value] : rec.metrics) metric_set.insert(name);
    index[{rec.period, rec.player}] = &rec;
  }
  const std::vector<std::string> periods(period_set.begin(), period_set.end());
  if (periods.size() < 2) throw std::invalid_argument("stability analysis needs at least 2 periods");

  std::vector<std::string> metrics;
  if (metric_set.contains(options.focal_metric)) metrics.push_back(options.focal_metric);
  for (const auto& m : metric_set) {
    if (m != options.focal_metric) metrics.push_back(m);
  }

  StabilityReport report;
  report.periods = periods.size();
  auto qualifies = [&](const PeriodRecord* r) { return r != nullptr && r->rounds >= options.min_rounds; };
  auto find = [&](const std::string& period, const PlayerId& p) -> const PeriodRecord* {
    auto it = index.find({period, p});
    return it == index.end() ? nullptr : it->second;
  };

  for (const auto& metric : metrics) {
    StabilityRow row;
    row.metric = metric;
    std::vector<double> x, y;
    for (std::size_t i = 0; i + 1 < periods.size(); ++i) {
      for (const auto& rec : table) {
        if (rec.period != periods[i]) continue;
        const PeriodRecord* next = find(periods[i + 1], rec.player);
        if (!qualifies(&rec) || !qualifies(next)) continue;
        x.push_back(rec.metrics.at(metric));
        y.push_back(next->metrics.at(metric));
      }
    }
    row.n_pairs = x.size();
    if (row.n_pairs <= 3) {
      throw std::invalid_argument("stability analysis needs at least 4 qualifying player pairs, got " +
                                  std::to_string(row.n_pairs));
    }
    row.autocorrelation = pearson(x, y);
    if (std::isnan(row.autocorrelation)) {
      report.warnings.push_back(metric + ": zero variance, correlation undefined");
      row.z = row.autocorrelation;
    } else {
      row.z = fisher_z(row.autocorrelation, &report.warnings);
    }

    std::vector<double> a, b;
    for (const auto& rec : table) {
      if (!qualifies(&rec) || !rec.metrics.contains(options.reference_metric)) continue;
      a.push_back(rec.metrics.at(metric));
      b.push_back(rec.metrics.at(options.reference_metric));
    }
    row.n_reference = a.size();
    row.reference_correlation = pearson(a, b);
    report.rows.push_back(std::move(row));
  }

  if (!report.rows.empty() && report.rows.front().metric == options.focal_metric) {
    const StabilityRow focal = report.rows.front();
    for (auto& row : report.rows) {
      if (row.metric == focal.metric || std::isnan(row.autocorrelation) ||
          std::isnan(focal.autocorrelation)) {
        continue;
      }
      row.focal_test = compare_correlations(focal.autocorrelation, focal.n_pairs, row.autocorrelation,
                                            row.n_pairs, &report.warnings);
    }
  }
  return report;
}

std::vector<ActionValue> impact_plays(const std::vector<ActionValue>& actions,
                                      const ImpactQuery& query) {
  std::vector<ActionValue> out;
  for (const auto& a : actions) {
    if (query.threshold && std::fabs(a.actor_credit) < *query.threshold) continue;
    if (query.actor_pre_prob) {
      const double p = a.actor_pre_prob();
      if (p < query.actor_pre_prob->first || p > query.actor_pre_prob->second) continue;
    }
    out.push_back(a);
  }
  std::stable_sort(out.begin(), out.end(), [](const ActionValue& a, const ActionValue& b) {
    const double x = std::fabs(a.actor_credit), y = std::fabs(b.actor_credit);
    if (x != y) return x > y;
    return std::tie(a.match_id, a.round_num, a.tick, a.event_index) <
           std::tie(b.match_id, b.round_num, b.tick, b.event_index);
  });
  if (query.top_k && out.size() > *query.top_k) out.resize(*query.top_k);
  return out;
}

}  // namespace wpa
