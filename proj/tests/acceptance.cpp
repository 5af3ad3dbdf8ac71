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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wpa/binary_io.hpp"
#include "wpa/features.hpp"
#include "wpa/ingest.hpp"
#include "wpa/metrics.hpp"
#include "wpa/navmesh.hpp"
#include "wpa/replay.hpp"
#include "wpa/stats.hpp"
#include "wpa/synthetic.hpp"
#include "wpa/valuation.hpp"
#include "wpa/winprob.hpp"

namespace {

using namespace wpa;
using Clock = std::chrono::steady_clock;
namespace fs = std::filesystem;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fixture(const std::string& name) { return std::string(WPA_FIXTURE_DIR) + "/" + name; }

std::vector<GameState> replay_all(const std::vector<MatchRecord>& matches) {
  std::vector<GameState> out;
  for (const auto& m : matches) {
    auto s = replay_match(m);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

// ---------------------------------------------------------------------------

Outcome baseline_identities() {
  const auto start = Clock::now();
  const std::size_t n = 10000;
  std::mt19937_64 rng(1);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i < n / 2 ? 1 : 0;
  std::shuffle(labels.begin(), labels.end(), rng);
  std::vector<GameState> states(n);
  std::uniform_int_distribution<int> alive(1, 5);
  for (std::size_t i = 0; i < n; ++i) {
    states[i].map_name = "de_mirage";
    states[i].ct_players_alive = alive(rng);
    states[i].outcome_label = labels[i];
  }
  const FeatureSchema schema = fit_schema(states);
  const FeatureMatrix matrix = vectorize(states, schema);
  const WinProbModel base = train_baseline(matrix, schema);
  const Metrics m = evaluate(base, matrix).overall;
  const std::vector<double> half(n, 0.5);
  const Metrics c = compute_metrics(half, labels);
  const double elapsed = seconds_since(start);

  const bool ok = std::fabs(m.log_loss - std::log(2.0)) <= 1e-6 &&
                  std::fabs(m.brier - 0.25) <= 1e-6 && std::fabs(m.auc - 0.5) <= 0.01 &&
                  std::fabs(c.log_loss - std::log(2.0)) <= 1e-6 &&
                  std::fabs(c.brier - 0.25) <= 1e-6 && std::fabs(c.auc - 0.5) <= 0.01 &&
                  elapsed < 1.0;
  return {ok, "n=10000 log_loss=" + num(m.log_loss, 10) + " brier=" + num(m.brier, 10) +
                  " auc=" + num(m.auc) + " runtime=" + num(elapsed, 3) + "s"};
}

// Shared by the ordering, calibration and time-slice criteria.
struct OrderingRun {
  std::size_t train_rows = 0, test_rows = 0;
  double elapsed = 0.0;
  EvalReport base, logistic, gbt;
  std::vector<TimeBinMetrics> gbt_by_time;
};

const OrderingRun& ordering_run() {
  static const OrderingRun run = [] {
    OrderingRun r;
    const auto start = Clock::now();
    SyntheticConfig c;
    c.interaction = true;
    c.interaction_strength = 0.1;
    c.seed = 11;
    c.n_matches = 1000;
    const auto train = replay_all(generate_synthetic(c).matches);
    c.seed = 12;
    c.n_matches = 1100;
    const auto test = replay_all(generate_synthetic(c).matches);
    const FeatureSchema schema = fit_schema(train);
    const FeatureMatrix x = vectorize(train, schema);
    const FeatureMatrix xt = vectorize(test, schema);
    r.train_rows = x.rows();
    r.test_rows = xt.rows();
    r.base = evaluate(train_baseline(x, schema), xt);
    r.logistic = evaluate(train_logistic(x, schema), xt);
    const WinProbModel gbt = train_gbt(x, schema);
    r.gbt = evaluate(gbt, xt);
    r.elapsed = seconds_since(start);
    r.gbt_by_time = evaluate_by_time(gbt, xt, 15.0);
    return r;
  }();
  return run;
}

Outcome model_ordering() {
  const OrderingRun& r = ordering_run();
  const double g = r.gbt.overall.log_loss, l = r.logistic.overall.log_loss,
               b = r.base.overall.log_loss;
  const bool ok = r.train_rows >= 200000 && r.test_rows >= 50000 && l - g >= 0.005 &&
                  b - l >= 0.005 && r.elapsed < 120.0;
  return {ok, "train=" + std::to_string(r.train_rows) + " test=" + std::to_string(r.test_rows) +
                  " gbt=" + num(g) + " logistic=" + num(l) + " baseline=" + num(b) +
                  " runtime=" + num(r.elapsed, 3) + "s"};
}

double max_calibration_gap(const std::vector<CalibrationBin>& bins, int* used) {
  double gap = 0.0;
  *used = 0;
  for (const auto& b : bins) {
    if (b.count < 100) continue;
    ++*used;
    gap = std::max(gap, std::fabs(b.mean_predicted - b.mean_observed));
  }
  return gap;
}

Outcome calibration() {
  const OrderingRun& r = ordering_run();
  int used_g = 0, used_l = 0;
  const double g = max_calibration_gap(r.gbt.calibration, &used_g);
  const double l = max_calibration_gap(r.logistic.calibration, &used_l);
  const bool ok = r.gbt.calibration.size() == 100 && r.logistic.calibration.size() == 100 &&
                  used_g > 0 && used_l > 0 && g < 0.05 && l < 0.05;
  return {ok, "bins=100 gbt_max=" + num(g, 4) + " (" + std::to_string(used_g) +
                  " bins) logistic_max=" + num(l, 4) + " (" + std::to_string(used_l) + " bins)"};
}

Outcome time_trend() {
  const OrderingRun& r = ordering_run();
  std::vector<double> index, loss;
  for (const auto& b : r.gbt_by_time) {
    if (b.metrics.count < 100) continue;
    index.push_back(b.bin);
    loss.push_back(b.metrics.log_loss);
  }
  const double rho = index.size() >= 2 ? spearman(index, loss) : 0.0;
  const bool ok = index.size() >= 5 && rho < -0.5;
  return {ok, "gbt 15s bins=" + std::to_string(index.size()) + " spearman=" + num(rho, 4)};
}

Outcome gradient_check() {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> x(0.0, 1.0);
  std::bernoulli_distribution y(0.45);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t rows = 10 + trial, width = 2 + trial % 6;
    FeatureMatrix m;
    m.columns.resize(width);
    m.values.resize(rows * width);
    for (double& v : m.values) v = x(rng);
    for (std::size_t i = 0; i < rows; ++i) m.labels.push_back(y(rng) ? 1 : 0);
    m.map_codes.assign(rows, 0);
    std::vector<double> w(width);
    for (double& v : w) v = 0.5 * x(rng);
    const double b = 0.5 * x(rng);

    std::vector<double> grad;
    logistic_loss_and_gradient(m, w, b, &grad);
    const double h = 1e-5;
    double diff2 = 0.0, a2 = 0.0, n2 = 0.0;
    for (std::size_t j = 0; j <= width; ++j) {
      auto wp = w, wm = w;
      double bp = b, bm = b;
      if (j < width) {
        wp[j] += h;
        wm[j] -= h;
      } else {
        bp += h;
        bm -= h;
      }
      const double numeric = (logistic_loss_and_gradient(m, wp, bp, nullptr) -
                              logistic_loss_and_gradient(m, wm, bm, nullptr)) /
                             (2 * h);
      diff2 += (numeric - grad[j]) * (numeric - grad[j]);
      a2 += grad[j] * grad[j];
      n2 += numeric * numeric;
    }
    const double rel = std::sqrt(diff2) / std::max(std::sqrt(std::max(a2, n2)), 1e-300);
    worst = std::max(worst, rel);
  }
  return {worst < 1e-5, "instances=20 max_relative_error=" + num(worst, 3)};
}

Outcome coefficient_recovery() {
  SyntheticConfig c;
  c.seed = 6006;
  c.n_matches = 4000;
  c.map_weights = {{"de_dust2", 1.0}};
  c.mean_footsteps = 0.0;
  c.mean_damage_events = 6.0;
  const SyntheticData data = generate_synthetic(c);
  std::vector<GameState> states;
  for (const auto& m : data.matches) {
    auto s = replay_match(m);
    states.insert(states.end(), s.begin(), s.end());
    if (states.size() >= 200000) break;
  }
  const FeatureSchema sc = fit_schema(states);
  const FeatureMatrix x = vectorize(states, sc);
  LogisticConfig lc;
  lc.epochs = 1500;
  lc.learning_rate = 1.0;
  const WinProbModel lg = train_logistic(x, sc, lc);

  // Back to natural units: per 1000 equipment, per 100 HP, per player, per second.
  const GroundTruth& t = data.truth;
  const double unit[8] = {0, 1000, 1000, 1, 1, 100, 100, 1};
  const double truth[8] = {0,      t.equip_per_1000, -t.equip_per_1000, t.alive,
                           -t.alive, t.hp_per_100,   -t.hp_per_100,     0};
  auto natural = [&](std::size_t j) { return lg.coefficients[j] / sc.stddevs[j]; };
  std::vector<std::pair<std::string, double>> err;
  for (std::size_t j = 1; j < 7; ++j) err.emplace_back(sc.numeric_names[j], natural(j) * unit[j] - truth[j]);
  err.emplace_back("seconds", natural(0) * GameConstants::kDefaultTickRate - t.seconds);
  // The planted flag and the site one-hot share the bomb effect.
  const std::size_t so = sc.site_offset();
  err.emplace_back("bomb_planted_A", natural(7) + lg.coefficients[so + 1] - lg.coefficients[so] - t.bomb_planted);
  err.emplace_back("bomb_planted_B", natural(7) + lg.coefficients[so + 2] - lg.coefficients[so] - t.bomb_planted);
  // Intercept, read at the pistol-round start state.
  GameState ref;
  ref.map_name = "de_dust2";
  ref.ct_equip_value = 4000;
  ref.t_equip_value = 4000;
  const double p = predict_state(lg, ref);
  err.emplace_back("intercept", std::log(p / (1 - p)) - t.logit(ref));

  double worst = 0.0;
  std::string worst_name;
  for (const auto& [name, e] : err) {
    if (std::fabs(e) > worst) {
      worst = std::fabs(e);
      worst_name = name;
    }
  }
  return {states.size() >= 200000 && worst <= 0.05,
          "states=" + std::to_string(states.size()) + " params=" + std::to_string(err.size()) +
              " max_abs_error=" + num(worst, 4) + " (" + worst_name + ")"};
}

// Dijkstra with a binary heap, indexed by position in mesh.areas.
std::vector<double> dijkstra(const NavMesh& mesh, std::size_t source, Weighting w) {
  const std::size_t n = mesh.areas.size();
  std::map<AreaId, std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) idx[mesh.areas[i].id] = i;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& c : mesh.connections) {
    const auto& a = mesh.areas[idx[c.from]].centroid;
    const auto& b = mesh.areas[idx[c.to]].centroid;
    adj[idx[c.from]].push_back(
        {idx[c.to], w == Weighting::kUnit ? 1.0 : std::hypot(a.x - b.x, a.y - b.y, a.z - b.z)});
  }
  std::vector<double> d(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> q;
  d[source] = 0;
  q.push({0, source});
  while (!q.empty()) {
    auto [du, u] = q.top();
    q.pop();
    if (du > d[u]) continue;
    for (auto [v, len] : adj[u]) {
      if (du + len < d[v]) {
        d[v] = du + len;
        q.push({d[v], v});
      }
    }
  }
  return d;
}

Outcome graph_oracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> size(2, 30);
  std::uniform_real_distribution<double> coord(-2000, 2000), density(0.03, 0.3);
  long pairs = 0, mismatches = 0;
  for (int g = 0; g < 50; ++g) {
    NavMesh mesh;
    const int n = size(rng);
    const double p = density(rng);
    std::bernoulli_distribution edge(p);
    for (int i = 0; i < n; ++i) {
      NavArea a;
      a.id = 10 + 7 * i;
      a.centroid = {coord(rng), coord(rng), coord(rng) / 20};
      mesh.areas.push_back(a);
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && edge(rng)) mesh.connections.push_back({mesh.areas[i].id, mesh.areas[j].id});
    for (Weighting w : {Weighting::kUnit, Weighting::kEuclidean}) {
      const NavGraph graph = NavGraph::build(mesh, w);
      for (int s = 0; s < n; ++s) {
        const auto oracle = dijkstra(mesh, s, w);
        for (int t = 0; t < n; ++t) {
          ++pairs;
          const double got = graph_distance(graph, mesh.areas[s].id, mesh.areas[t].id).distance;
          const double want = oracle[t];
          const bool same = std::isinf(want) ? std::isinf(got)
                                             : std::fabs(got - want) <= 1e-9 * std::max(1.0, want);
          if (!same) ++mismatches;
        }
      }
    }
  }
  const NavMesh ledge = load_navmesh(fixture("ledge.json"));
  const NavGraph lg = NavGraph::build(ledge);
  const AreaId b = ledge.find_by_name("B")->id, c = ledge.find_by_name("C")->id;
  const double bc = graph_distance(lg, b, c).distance, cb = graph_distance(lg, c, b).distance;
  const double elapsed = seconds_since(start);
  return {mismatches == 0 && bc < cb && elapsed < 10.0,
          "graphs=50 pairs=" + std::to_string(pairs) + " mismatches=" + std::to_string(mismatches) +
              " d(B,C)=" + num(bc) + " d(C,B)=" + num(cb) + " runtime=" + num(elapsed, 3) + "s"};
}

Outcome valuation_algebra() {
  SyntheticConfig c;
  c.seed = 808;
  c.n_matches = 60;
  SyntheticData data = generate_synthetic(c);
  std::vector<MatchRecord> matches;
  int rounds = 0;
  for (auto& m : data.matches) {
    if (rounds >= 1000) break;
    rounds += static_cast<int>(m.rounds.size());
    matches.push_back(std::move(m));
  }
  const int synthetic_rounds = rounds;
  for (const char* f : {"match_small.json", "match_sim.json"}) matches.push_back(load_match(fixture(f)));

  SyntheticConfig tc;
  tc.seed = 809;
  tc.n_matches = 40;
  const auto train = replay_all(generate_synthetic(tc).matches);
  const FeatureSchema schema = fit_schema(train);
  const WinProbModel model = train_logistic(vectorize(train, schema), schema);

  long actions = 0, range_bad = 0, sum_bad = 0, telescope_bad = 0;
  double worst_telescope = 0.0;
  for (const auto& m : matches) {
    const auto acts = value_actions(m, model);
    for (const auto& a : acts) {
      ++actions;
      if (!(a.v_ct >= -1.0 && a.v_ct <= 1.0)) ++range_bad;
      if (a.actor_credit + a.receiver_credit != 0.0) ++sum_bad;
    }
    std::size_t next = 0;
    for (const auto& r : m.rounds) {
      const auto states = replay_round(m, r);
      const auto p = predict_states(model, states);
      double total = 0.0;
      for (std::size_t k = 0; k < r.events.size(); ++k) {
        if (r.events[k].is_damage()) {
          total += acts[next++].v_ct;
        } else {
          total += p[k + 1] - p[k];
        }
      }
      const double err = std::fabs(total - (p.back() - p.front()));
      worst_telescope = std::max(worst_telescope, err);
      if (err > 1e-9) ++telescope_bad;
    }
    if (next != acts.size()) ++telescope_bad;
  }
  return {synthetic_rounds >= 1000 && range_bad == 0 && sum_bad == 0 && telescope_bad == 0,
          "synthetic_rounds=" + std::to_string(synthetic_rounds) + " fixtures=2 actions=" +
              std::to_string(actions) + " out_of_range=" + std::to_string(range_bad) +
              " nonzero_sum=" + std::to_string(sum_bad) +
              " max_telescope_error=" + num(worst_telescope, 3)};
}

Outcome classic_fixture() {
  struct Hand {
    const char* id;
    int k, d, damage, kast, survived, mk;
  };
  // Worked out by hand from the fixture event list, 2 rounds, 5 s trades.
  const Hand ledger[] = {
      {"a1", 1, 1, 120, 2, 1, 1}, {"a2", 0, 1, 30, 1, 1, 0},  {"a3", 1, 1, 195, 2, 1, 1},
      {"a4", 0, 1, 25, 2, 1, 0},  {"a5", 1, 0, 55, 2, 2, 1},  {"b1", 0, 2, 60, 1, 0, 0},
      {"b2", 2, 1, 140, 2, 1, 2}, {"b3", 1, 0, 100, 2, 2, 1}, {"b4", 1, 0, 130, 2, 2, 1},
      {"b5", 0, 0, 0, 2, 2, 0},
  };
  const std::vector<MatchRecord> m = {load_match(fixture("match_small.json"))};
  ClassicConfig cfg;
  cfg.trade_window_seconds = 5.0;
  const auto got = classic_metrics(m, cfg);
  int mismatches = 0;
  for (const auto& h : ledger) {
    const double n = 2.0;
    const double kdr = static_cast<double>(h.k) / std::max(1, h.d);
    const double adr = h.damage / n;
    const double kast = h.kast / n;
    const double rating =
        ((h.k / n) / 0.679 + 0.7 * ((h.survived / n) / 0.317) + (h.mk / n) / 1.277) / 2.7;
    const auto it = got.find(h.id);
    if (it == got.end() || it->second.kdr != kdr || it->second.adr != adr ||
        it->second.kast != kast || it->second.rating_1_0 != rating) {
      ++mismatches;
    }
  }
  ClassicConfig unit;
  unit.c_kill = 1.0;
  unit.c_survival = 0.5;
  unit.c_multikill = 1.0;
  const double b2 = classic_metrics(m, unit).at("b2").rating_1_0;
  const double direct = rating_1_0(1.0, 1.0, 1.0);
  return {mismatches == 0 && got.size() == 10 && b2 == 1.0 && direct == 1.0,
          "players=10 mismatches=" + std::to_string(mismatches) + " unit_rating=" + num(direct, 17) +
              " unit_rating_b2=" + num(b2, 17)};
}

Outcome bootstrap() {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> x(0.0, 0.05);
  std::vector<double> per_round(180);
  for (double& v : per_round) v = x(rng);
  const int b = 100;
  const BootstrapSummary one = bootstrap_wpa(per_round, b, 2024);
  const BootstrapSummary two = bootstrap_wpa(per_round, b, 2024);
  auto bytes = [](const BootstrapSummary& s) {
    ByteWriter w;
    for (double v : s.samples) w.put(v);
    w.put(s.mean);
    w.put(s.stddev);
    w.put(s.p5);
    w.put(s.p95);
    return w.take();
  };
  const bool same = bytes(one) == bytes(two);
  const BootstrapSummary flat = bootstrap_wpa(std::vector<double>(40, 0.0123), b, 2024);
  return {same && one.samples.size() == 100 && flat.stddev == 0.0,
          "B=" + std::to_string(one.samples.size()) + " byte_identical=" + (same ? "yes" : "no") +
              " degenerate_stddev=" + num(flat.stddev)};
}

Outcome fisher() {
  const double z0 = fisher_z(0.0);
  const double z5 = fisher_z(0.5);
  const CorrelationTest t = compare_correlations(0.42, 150, 0.42, 150);
  return {z0 == 0.0 && std::fabs(z5 - 0.549306) <= 1e-5 && std::fabs(t.p_one_sided - 0.5) <= 1e-6,
          "z(0)=" + num(z0) + " z(0.5)=" + num(z5, 9) + " p_equal=" + num(t.p_one_sided, 9)};
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(WPA_CLI_PATH) + " " + args + " >>" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome throughput() {
  SyntheticConfig c;
  c.seed = 99;
  c.n_matches = 150;
  std::vector<std::string> docs;
  for (const auto& m : generate_synthetic(c).matches) docs.push_back(serialize_match(m));

  const auto start = Clock::now();
  std::vector<GameState> states;
  for (const auto& d : docs) {
    const MatchRecord m = parse_match(d);
    auto s = replay_match(m);
    states.insert(states.end(), s.begin(), s.end());
  }
  const FeatureMatrix x = vectorize(states, fit_schema(states));
  const double elapsed = seconds_since(start);
  const double rate = static_cast<double>(x.rows()) / elapsed;

  const fs::path dir = fs::temp_directory_path() / "wpa_acceptance_smoke";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path log = dir / "log.txt";
  const std::string d = dir.string();
  const auto smoke_start = Clock::now();
  int failed = 0;
  failed += run_cli("simulate --seed 7 --matches 5 --out " + d + "/sim", log) != 0;
  failed += run_cli("ingest " + d + "/sim/matches --out " + d + "/states.wst", log) != 0;
  failed += run_cli("train --states " + d + "/states.wst --model baseline --out " + d + "/base.wpm", log) != 0;
  failed += run_cli("train --states " + d + "/states.wst --model logreg --out " + d + "/logreg.wpm", log) != 0;
  failed += run_cli("train --states " + d + "/states.wst --model gbt --out " + d + "/gbt.wpm", log) != 0;
  failed += run_cli("eval --states " + d + "/states.wst --model " + d + "/base.wpm --model " + d +
                        "/logreg.wpm --model " + d + "/gbt.wpm",
                    log) != 0;
  failed += run_cli("rate " + d + "/sim/matches --model " + d + "/logreg.wpm --bootstrap 100", log) != 0;
  const double smoke = seconds_since(smoke_start);
  return {rate >= 100000.0 && failed == 0 && smoke < 180.0,
          "states=" + std::to_string(x.rows()) + " states_per_second=" + num(rate, 4) +
              " smoke_failed_steps=" + std::to_string(failed) + " smoke_runtime=" + num(smoke, 3) + "s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"baseline identities", baseline_identities},
      {"model ordering", model_ordering},
      {"calibration", calibration},
      {"time-sliced trend", time_trend},
      {"logistic gradient check", gradient_check},
      {"coefficient recovery", coefficient_recovery},
      {"graph-distance oracle", graph_oracle},
      {"valuation algebra", valuation_algebra},
      {"classic-metric fixture", classic_fixture},
      {"bootstrap", bootstrap},
      {"fisher statistics", fisher},
      {"throughput", throughput},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("criterion %2zu %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed;
}
