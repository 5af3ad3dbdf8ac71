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

#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_support.hpp"
#include "json.hpp"
#include "wpa/binary_io.hpp"
#include "wpa/features.hpp"
#include "wpa/ingest.hpp"
#include "wpa/metrics.hpp"
#include "wpa/navmesh.hpp"
#include "wpa/replay.hpp"
#include "wpa/state_table.hpp"
#include "wpa/synthetic.hpp"
#include "wpa/valuation.hpp"
#include "wpa/winprob.hpp"

namespace {

using namespace wpa;
using namespace wpa::cli;
namespace fs = std::filesystem;

constexpr std::uint64_t kDefaultSeed = 7;

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

// Per-map navigation built from --mesh files.
class NavSet {
 public:
  NavSet(const std::vector<std::string>& paths, const std::string& weighting) {
    const auto w = parse_weighting(weighting);
    if (!w) throw CliError(kExitUsage, "unknown weighting '" + weighting + "'");
    for (const auto& p : paths) {
      NavMesh mesh = load_navmesh(p);
      const std::string name = mesh.map_name;
      if (by_map_.contains(name)) throw CliError(kExitUsage, "two meshes given for map " + name);
      by_map_.emplace(name, std::make_unique<MapNavigation>(std::move(mesh), *w));
    }
  }

  const MapNavigation* find(const std::string& map) const {
    auto it = by_map_.find(map);
    return it == by_map_.end() ? nullptr : it->second.get();
  }

 private:
  std::map<std::string, std::unique_ptr<MapNavigation>> by_map_;
};

std::vector<MatchRecord> load_matches(const std::vector<std::string>& inputs,
                                      const ParseOptions& options) {
  std::vector<MatchRecord> out;
  for (const auto& path : collect_json_files(inputs)) {
    try {
      out.push_back(load_match(path, options));
    } catch (const ParseError& e) {
      throw CliError(kExitValidation, path + ": " + e.what());
    }
  }
  if (out.empty()) throw CliError(kExitIo, "no match files found");
  return out;
}

WinProbModel load_model_checked(const std::string& path) {
  try {
    return load_model(path);
  } catch (const FormatError& e) {
    throw CliError(kExitModel, path + ": " + e.what());
  }
}

std::vector<GameState> load_states(const std::string& path, const std::string& from,
                                   const std::string& until) {
  std::vector<GameState> states;
  try {
    states = read_states(path);
  } catch (const FormatError& e) {
    throw CliError(kExitIo, path + ": " + e.what());
  }
  states = select_dates(std::move(states), from, until);
  if (states.empty()) throw CliError(kExitValidation, "no states in the selected date range");
  return states;
}

const MapNavigation* nav_for(const NavSet& navs, const WinProbModel& model, const std::string& map) {
  const MapNavigation* nav = navs.find(map);
  if (model.schema.has_distances && nav == nullptr) {
    throw CliError(kExitModel, "model uses graph distances but no mesh was given for map " + map);
  }
  return nav;
}

std::vector<ActionValue> value_all(const std::vector<MatchRecord>& matches,
                                   const WinProbModel& model, const NavSet& navs) {
  std::vector<ActionValue> out;
  for (const auto& m : matches) {
    auto v = value_actions(m, model, nav_for(navs, model, m.map_name));
    out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  }
  return out;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct Common {
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool out_required = false) {
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  auto* o = cmd->add_option("--out", c.out, out_required ? "Output path" : "Output path (default stdout)");
  if (out_required) o->required();
}

// ingest

struct IngestArgs {
  Common common;
  std::vector<std::string> inputs;
  std::vector<std::string> meshes;
  std::string weighting = "unit";
  std::string map_pool;
};

void run_ingest(const IngestArgs& a) {
  ParseOptions opts;
  if (!a.map_pool.empty()) opts.map_pool = split_commas(a.map_pool);
  const NavSet navs(a.meshes, a.weighting);
  std::vector<GameState> states;
  std::ostringstream report;
  report << "match_id,map_name,rounds,events,states\n";
  for (const auto& path : collect_json_files(a.inputs)) {
    MatchRecord m;
    try {
      m = load_match(path, opts);
    } catch (const ParseError& e) {
      throw CliError(kExitValidation, path + ": " + e.what());
    }
    std::vector<GameState> ms;
    try {
      ms = replay_match(m, navs.find(m.map_name));
    } catch (const ValidationError& e) {
      throw CliError(kExitValidation, path + ": " + e.what());
    }
    std::size_t events = 0;
    for (const auto& r : m.rounds) events += r.events.size();
    report << m.match_id << ',' << m.map_name << ',' << m.rounds.size() << ',' << events << ','
           << ms.size() << '\n';
    states.insert(states.end(), ms.begin(), ms.end());
  }
  write_states(states, a.common.out);
  std::cout << report.str();
}

// train

struct TrainArgs {
  Common common;
  std::string states;
  std::string kind;
  std::string from, until;
  std::string config;
  std::optional<int> epochs, trees, depth;
  std::optional<double> lr, unreachable;
  std::string importance_out;
};

void run_train(const TrainArgs& a) {
  ConfigOverrides cfg;
  if (!a.config.empty()) cfg = load_config(a.config);
  const auto states = load_states(a.states, a.from, a.until);
  FitOptions fit;
  if (a.unreachable) fit.unreachable_distance = *a.unreachable;
  const FeatureSchema schema = fit_schema(states, fit);
  const FeatureMatrix matrix = vectorize(states, schema);

  WinProbModel model;
  if (a.kind == "baseline") {
    model = train_baseline(matrix, schema);
  } else if (a.kind == "logreg") {
    LogisticConfig lc = cfg.logistic;
    lc.seed = a.common.seed;
    if (a.epochs) lc.epochs = *a.epochs;
    if (a.lr) lc.learning_rate = *a.lr;
    model = train_logistic(matrix, schema, lc);
  } else {
    GbtConfig gc = cfg.gbt;
    gc.seed = a.common.seed;
    if (a.trees) gc.n_trees = *a.trees;
    if (a.depth) gc.max_depth = *a.depth;
    if (a.lr) gc.learning_rate = *a.lr;
    try {
      gc.validate();
    } catch (const std::invalid_argument& e) {
      throw CliError(kExitUsage, e.what());
    }
    model = train_gbt(matrix, schema, gc);
  }
  model.metadata["train_rows"] = std::to_string(matrix.rows());
  model.metadata["train_from"] = a.from.empty() ? "*" : a.from;
  model.metadata["train_until"] = a.until.empty() ? "*" : a.until;
  save_model(model, a.common.out);

  const auto pred = predict(model, matrix);
  std::cout << "model," << to_string(model.kind) << "\nrows," << matrix.rows()
            << "\ntrain_log_loss," << fmt(log_loss(pred, matrix.labels)) << '\n';
  if (!a.importance_out.empty()) {
    if (model.kind != ModelKind::kGbt) {
      throw CliError(kExitUsage, "--importance-out needs --model gbt");
    }
    std::ostringstream imp;
    imp << "feature,importance\n";
    for (const auto& f : feature_importance(model)) imp << f.feature << ',' << fmt(f.importance) << '\n';
    write_file(a.importance_out, imp.str());
  }
}

// eval

struct EvalArgs {
  Common common;
  std::string states;
  std::vector<std::string> models;
  std::string from, until;
  bool by_time = false;
  double bin_seconds = 10.0;
};

std::string metrics_cells(const Metrics& m) {
  return std::to_string(m.count) + ',' + fmt(m.log_loss) + ',' + fmt(m.brier) + ',' + fmt(m.auc) +
         ',' + fmt(m.accuracy);
}

void run_eval(const EvalArgs& a) {
  if (a.bin_seconds <= 0.0) throw CliError(kExitUsage, "--bin-seconds must be positive");
  const auto states = load_states(a.states, a.from, a.until);
  std::ostringstream out;
  out << (a.by_time ? "model,kind,bin,start_seconds,end_seconds," : "model,kind,")
      << "count,log_loss,brier,auc,accuracy\n";
  for (const auto& path : a.models) {
    const WinProbModel model = load_model_checked(path);
    const FeatureMatrix matrix = vectorize(states, model.schema);
    const std::string head = path + ',' + std::string(to_string(model.kind)) + ',';
    if (a.by_time) {
      for (const auto& b : evaluate_by_time(model, matrix, a.bin_seconds)) {
        out << head << b.bin << ',' << fmt(b.start_seconds) << ',' << fmt(b.end_seconds) << ','
            << metrics_cells(b.metrics) << '\n';
      }
    } else {
      out << head << metrics_cells(evaluate(model, matrix).overall) << '\n';
    }
  }
  emit(a.common.out, out.str());
}

// calibrate

struct CalibrateArgs {
  Common common;
  std::string states;
  std::string model;
  std::string from, until;
  int bins = 100;
};

void run_calibrate(const CalibrateArgs& a) {
  if (a.bins < 2) throw CliError(kExitUsage, "--bins must be at least 2");
  const auto states = load_states(a.states, a.from, a.until);
  const WinProbModel model = load_model_checked(a.model);
  const FeatureMatrix matrix = vectorize(states, model.schema);
  std::ostringstream out;
  out << "bin,lower,upper,mean_predicted,mean_observed,count\n";
  for (const auto& b : calibration_curve(model, matrix, a.bins)) {
    out << b.bin << ',' << fmt(b.lower) << ',' << fmt(b.upper) << ',' << fmt(b.mean_predicted)
        << ',' << fmt(b.mean_observed) << ',' << b.count << '\n';
  }
  emit(a.common.out, out.str());
}

// rate

struct RateArgs {
  Common common;
  std::vector<std::string> inputs;
  std::string model;
  std::vector<std::string> meshes;
  std::string weighting = "unit";
  bool pistol_only = false;
  std::vector<std::string> filters;
  int bootstrap = 0;
  std::string samples_out;
  int min_rounds = 1;
  std::string format = "csv";
  std::string config;
  bool exclude_received = false;
  bool stability = false;
  int stability_min_rounds = 100;
};

void run_stability(const RateArgs& a, const std::vector<MatchRecord>& matches,
                   const std::vector<ActionValue>& actions, const RatingOptions& opts) {
  StabilityOptions so;
  so.min_rounds = a.stability_min_rounds;
  const auto table = period_table(matches, actions, opts);
  StabilityReport rep;
  try {
    rep = stability_analysis(table, so);
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitValidation, e.what());
  }
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
  std::ostringstream out;
  out << "metric,n_pairs,autocorrelation,z,reference_correlation,n_reference,"
         "focal_statistic,focal_p_one_sided\n";
  for (const auto& r : rep.rows) {
    out << r.metric << ',' << r.n_pairs << ',' << fmt(r.autocorrelation) << ',' << fmt(r.z) << ','
        << fmt(r.reference_correlation) << ',' << r.n_reference << ',';
    if (r.focal_test) out << fmt(r.focal_test->statistic) << ',' << fmt(r.focal_test->p_one_sided);
    else out << ',';
    out << '\n';
  }
  emit(a.common.out, out.str());
}

void run_rate(const RateArgs& a) {
  ConfigOverrides cfg;
  if (!a.config.empty()) cfg = load_config(a.config);
  ScenarioFilter filter;
  filter.pistol_only = a.pistol_only;
  for (const auto& f : a.filters) apply_filter_expression(f, filter);
  if (a.bootstrap == 1 || a.bootstrap < 0) throw CliError(kExitUsage, "--bootstrap needs B >= 2");
  if (a.min_rounds < 1) throw CliError(kExitUsage, "--min-rounds must be positive");

  const auto matches = load_matches(a.inputs, {});
  const WinProbModel model = load_model_checked(a.model);
  const NavSet navs(a.meshes, a.weighting);
  const auto actions = value_all(matches, model, navs);

  RatingOptions opts;
  opts.wpa.include_received = !a.exclude_received;
  opts.classic = cfg.classic;
  opts.bootstrap = a.bootstrap;
  opts.seed = a.common.seed;
  opts.min_rounds = a.min_rounds;

  if (a.stability) {
    run_stability(a, matches, actions, opts);
    return;
  }

  const View view = apply_filter(filter, matches, actions);
  if (view.empty()) std::cerr << "no data: the filter selects no rounds\n";
  const auto ratings = rate_players(view, opts);
  emit(a.common.out, a.format == "json" ? ratings_json(ratings) : ratings_csv(ratings));

  if (!a.samples_out.empty()) {
    std::ostringstream s;
    s << "player_id,draw,wpa_per_round\n";
    for (const auto& r : ratings) {
      if (!r.bootstrap) continue;
      for (std::size_t i = 0; i < r.bootstrap->samples.size(); ++i) {
        s << r.player_id << ',' << i << ',' << fmt(r.bootstrap->samples[i]) << '\n';
      }
    }
    write_file(a.samples_out, s.str());
  }
}

// impact

struct ImpactArgs {
  Common common;
  std::vector<std::string> inputs;
  std::string model;
  std::vector<std::string> meshes;
  std::string weighting = "unit";
  std::optional<double> threshold;
  std::optional<std::size_t> top_k;
  std::string prob_range;
  std::vector<std::string> filters;
  std::string format = "csv";
};

void run_impact(const ImpactArgs& a) {
  ScenarioFilter filter;
  for (const auto& f : a.filters) apply_filter_expression(f, filter);
  ImpactQuery q;
  q.threshold = a.threshold;
  q.top_k = a.top_k;
  if (!a.prob_range.empty()) q.actor_pre_prob = parse_probability_range(a.prob_range);

  const auto matches = load_matches(a.inputs, {});
  const WinProbModel model = load_model_checked(a.model);
  const NavSet navs(a.meshes, a.weighting);
  const View view = apply_filter(filter, matches, value_all(matches, model, navs));
  const auto plays = impact_plays(view.actions, q);

  if (a.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : plays) {
      arr.push_back({{"match_id", p.match_id},
                     {"round_num", p.round_num},
                     {"tick", p.tick},
                     {"actor_id", p.actor_id},
                     {"actor_side", std::string(to_string(p.actor_side))},
                     {"victim_id", p.victim_id},
                     {"hp_damage", p.hp_damage},
                     {"is_kill", p.is_kill},
                     {"ct_alive", p.pre_state.ct_players_alive},
                     {"t_alive", p.pre_state.t_players_alive},
                     {"actor_pre_prob", p.actor_pre_prob()},
                     {"pre_prob", p.pre_prob},
                     {"post_prob", p.post_prob},
                     {"v_ct", p.v_ct},
                     {"actor_credit", p.actor_credit}});
    }
    emit(a.common.out, arr.dump(2) + "\n");
    return;
  }
  std::ostringstream out;
  out << "match_id,round_num,tick,actor_id,actor_side,victim_id,hp_damage,is_kill,ct_alive,t_alive,"
         "actor_pre_prob,pre_prob,post_prob,v_ct,actor_credit\n";
  for (const auto& p : plays) {
    out << p.match_id << ',' << p.round_num << ',' << p.tick << ',' << p.actor_id << ','
        << to_string(p.actor_side) << ',' << p.victim_id << ',' << p.hp_damage << ','
        << (p.is_kill ? 1 : 0) << ',' << p.pre_state.ct_players_alive << ','
        << p.pre_state.t_players_alive << ',' << fmt(p.actor_pre_prob()) << ',' << fmt(p.pre_prob)
        << ',' << fmt(p.post_prob) << ',' << fmt(p.v_ct) << ',' << fmt(p.actor_credit) << '\n';
  }
  emit(a.common.out, out.str());
}

// dist

struct DistArgs {
  Common common;
  std::string mesh;
  std::string from, to;
  std::string weighting = "unit";
};

const NavArea& resolve_area(const NavMesh& mesh, const std::string& key) {
  if (const NavArea* a = mesh.find_by_name(key)) return *a;
  try {
    std::size_t used = 0;
    const int id = std::stoi(key, &used);
    if (used == key.size()) {
      if (const NavArea* a = mesh.find(id)) return *a;
    }
  } catch (const std::exception&) {
  }
  throw CliError(kExitValidation, "no area named or numbered '" + key + "' in " + mesh.map_name);
}

void run_dist(const DistArgs& a) {
  const auto w = parse_weighting(a.weighting);
  if (!w) throw CliError(kExitUsage, "unknown weighting '" + a.weighting + "'");
  const NavMesh mesh = load_navmesh(a.mesh);
  const NavGraph graph = NavGraph::build(mesh, *w);
  const NavArea& from = resolve_area(mesh, a.from);
  const NavArea& to = resolve_area(mesh, a.to);
  const PathResult r = graph_distance(graph, from.id, to.id);
  std::ostringstream path;
  for (std::size_t i = 0; i < r.path.size(); ++i) {
    const NavArea* area = mesh.find(r.path[i]);
    path << (i ? ">" : "") << (area->name.empty() ? std::to_string(area->id) : area->name);
  }
  std::ostringstream out;
  out << "from,to,weighting,distance,path\n"
      << a.from << ',' << a.to << ',' << a.weighting << ','
      << (r.reachable() ? fmt(r.distance) : "unreachable") << ',' << path.str() << '\n';
  emit(a.common.out, out.str());
}

// simulate

struct SimulateArgs {
  Common common;
  int matches = 10;
  std::string maps;
  std::optional<double> interaction;
  double skill_gap = 0.0;
  std::string favored = "CT";
  double damage_events = SyntheticConfig{}.mean_damage_events;
  double footsteps = SyntheticConfig{}.mean_footsteps;
  double plant_chance = SyntheticConfig{}.plant_chance;
  int teams = SyntheticConfig{}.n_teams;
  std::string start_date = SyntheticConfig{}.start_date;
  int days_between = SyntheticConfig{}.days_between_matches;
};

void run_simulate(const SimulateArgs& a) {
  SyntheticConfig c;
  c.seed = a.common.seed;
  c.n_matches = a.matches;
  for (const auto& m : split_commas(a.maps)) c.map_weights.emplace_back(m, 1.0);
  if (a.interaction) {
    c.interaction = true;
    c.interaction_strength = *a.interaction;
  }
  c.skill_gap = a.skill_gap;
  const auto side = parse_side(a.favored);
  if (!side) throw CliError(kExitUsage, "--favored must be CT or T");
  c.favored_side = *side;
  c.mean_damage_events = a.damage_events;
  c.mean_footsteps = a.footsteps;
  c.plant_chance = a.plant_chance;
  c.n_teams = a.teams;
  c.start_date = a.start_date;
  c.days_between_matches = a.days_between;
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitUsage, e.what());
  }
  const SyntheticData data = generate_synthetic(c);

  const fs::path dir = fs::path(a.common.out) / "matches";
  fs::create_directories(dir);
  for (const auto& m : data.matches) save_match(m, (dir / (m.match_id + ".json")).string());
  nlohmann::json truth;
  for (const auto& [name, v] : data.truth.parameters()) truth["parameters"][name] = v;
  for (const auto& [p, s] : data.player_skill) truth["player_skill"][p] = s;
  truth["seed"] = c.seed;
  truth["n_matches"] = c.n_matches;
  write_file((fs::path(a.common.out) / "truth.json").string(), truth.dump(2) + "\n");
  std::cout << "matches," << data.matches.size() << '\n';
}

void add_dates(CLI::App* cmd, std::string& from, std::string& until) {
  cmd->add_option("--from", from, "Keep states with match date >= this ISO date");
  cmd->add_option("--until", until, "Keep states with match date < this ISO date");
}

void add_meshes(CLI::App* cmd, std::vector<std::string>& meshes, std::string& weighting) {
  cmd->add_option("--mesh", meshes, "Navigation mesh JSON, one per map (repeatable)");
  cmd->add_option("--weighting", weighting, "Graph edge weighting")
      ->check(CLI::IsMember({"unit", "euclidean"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Win-probability modelling and player valuation for round-based shooter matches"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Parse, validate and replay matches into a state table");
  c_ingest->add_option("inputs", ingest.inputs, "Match JSON files or directories")->required();
  add_meshes(c_ingest, ingest.meshes, ingest.weighting);
  c_ingest->add_option("--map-pool", ingest.map_pool, "Comma-separated accepted map names");
  add_common(c_ingest, ingest.common, true);

  TrainArgs train;
  auto* c_train = app.add_subcommand("train", "Fit a win-probability model on a state table");
  c_train->add_option("--states", train.states, "State table file")->required();
  c_train->add_option("--model", train.kind, "Model kind")
      ->required()
      ->check(CLI::IsMember({"baseline", "logreg", "gbt"}));
  add_dates(c_train, train.from, train.until);
  c_train->add_option("--config", train.config, "JSON overrides for hyperparameters");
  c_train->add_option("--epochs", train.epochs, "Logistic epochs");
  c_train->add_option("--lr", train.lr, "Learning rate (logistic step or GBT shrinkage)");
  c_train->add_option("--trees", train.trees, "GBT trees");
  c_train->add_option("--depth", train.depth, "GBT max depth");
  c_train->add_option("--unreachable", train.unreachable,
                      "Feature value for unreachable graph distances");
  c_train->add_option("--importance-out", train.importance_out, "Write GBT feature importance CSV");
  add_common(c_train, train.common, true);

  EvalArgs eval;
  auto* c_eval = app.add_subcommand("eval", "Score models on a state table");
  c_eval->add_option("--states", eval.states, "State table file")->required();
  c_eval->add_option("--model", eval.models, "Model file (repeatable)")
      ->required();
  add_dates(c_eval, eval.from, eval.until);
  auto* by_time = c_eval->add_flag("--by-time", eval.by_time, "Report metrics per time-since-start bin");
  c_eval->add_option("--bin-seconds", eval.bin_seconds, "Width of time bins in seconds")
      ->needs(by_time)
      ->capture_default_str();
  add_common(c_eval, eval.common);

  CalibrateArgs cal;
  auto* c_cal = app.add_subcommand("calibrate", "Reliability table of predicted vs observed win rate");
  c_cal->add_option("--states", cal.states, "State table file")->required();
  c_cal->add_option("--model", cal.model, "Model file")->required();
  add_dates(c_cal, cal.from, cal.until);
  c_cal->add_option("--bins", cal.bins, "Equal-width probability bins")->capture_default_str();
  add_common(c_cal, cal.common);

  RateArgs rate;
  auto* c_rate = app.add_subcommand("rate", "Rank players by WPA alongside classic metrics");
  c_rate->add_option("inputs", rate.inputs, "Match JSON files or directories")->required();
  c_rate->add_option("--model", rate.model, "Model file")->required();
  add_meshes(c_rate, rate.meshes, rate.weighting);
  c_rate->add_flag("--pistol-only", rate.pistol_only, "Only rounds 1 and 16");
  c_rate->add_option("--filter", rate.filters,
                     "Scenario filter: pistol, maps=A+B, alive=T:1v2, winprob=LO:HI (repeatable)");
  auto* boot = c_rate->add_option("--bootstrap", rate.bootstrap, "Bootstrap resamples B (0 disables)");
  c_rate->add_option("--samples-out", rate.samples_out, "Write bootstrap samples CSV")->needs(boot);
  c_rate->add_option("--min-rounds", rate.min_rounds, "Drop players with fewer rounds")
      ->capture_default_str();
  c_rate->add_option("--format", rate.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  c_rate->add_option("--config", rate.config, "JSON overrides for trade window and rating constants");
  c_rate->add_flag("--exclude-received", rate.exclude_received,
                   "Do not credit victims with the value of damage they take");
  auto* stab = c_rate->add_flag("--stability", rate.stability,
                                "Month-to-month stability of each metric instead of a ranking");
  c_rate->add_option("--stability-min-rounds", rate.stability_min_rounds,
                     "Rounds a player needs in both months of a pair")
      ->needs(stab)
      ->capture_default_str();
  stab->excludes(boot);
  add_common(c_rate, rate.common);

  ImpactArgs impact;
  auto* c_imp = app.add_subcommand("impact", "List the highest-value individual actions");
  c_imp->add_option("inputs", impact.inputs, "Match JSON files or directories")->required();
  c_imp->add_option("--model", impact.model, "Model file")->required();
  add_meshes(c_imp, impact.meshes, impact.weighting);
  c_imp->add_option("--threshold", impact.threshold, "Minimum |actor credit|");
  c_imp->add_option("--top-k", impact.top_k, "Keep the K largest");
  c_imp->add_option("--prob-range", impact.prob_range,
                    "Acting team's pre-event win probability range LO:HI");
  c_imp->add_option("--filter", impact.filters, "Scenario filter, as for rate (repeatable)");
  c_imp->add_option("--format", impact.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  add_common(c_imp, impact.common);

  DistArgs dist;
  auto* c_dist = app.add_subcommand("dist", "Directed graph distance between two mesh areas");
  c_dist->add_option("--mesh", dist.mesh, "Navigation mesh JSON")->required();
  c_dist->add_option("--from", dist.from, "Source area name or id")->required();
  c_dist->add_option("--to", dist.to, "Target area name or id")->required();
  c_dist->add_option("--weighting", dist.weighting, "Edge weighting")
      ->check(CLI::IsMember({"unit", "euclidean"}))
      ->capture_default_str();
  add_common(c_dist, dist.common);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Generate synthetic matches with a known outcome model");
  c_sim->add_option("--matches", sim.matches, "Number of matches")->capture_default_str();
  c_sim->add_option("--maps", sim.maps, "Comma-separated maps (default: the full pool)");
  c_sim->add_option("--interaction", sim.interaction,
                    "Enable the map-by-equipment interaction with this strength");
  c_sim->add_option("--skill-gap", sim.skill_gap, "Side imbalance in [0, 1]")->capture_default_str();
  c_sim->add_option("--favored", sim.favored, "Side favored by --skill-gap")
      ->check(CLI::IsMember({"CT", "T"}))
      ->capture_default_str();
  c_sim->add_option("--damage-events", sim.damage_events, "Mean damage steps per round")
      ->capture_default_str();
  c_sim->add_option("--footsteps", sim.footsteps, "Mean footsteps per round")->capture_default_str();
  c_sim->add_option("--plant-chance", sim.plant_chance, "Chance a T step is a plant")
      ->capture_default_str();
  c_sim->add_option("--teams", sim.teams, "Number of teams")->capture_default_str();
  c_sim->add_option("--start-date", sim.start_date, "Date of the first match")->capture_default_str();
  c_sim->add_option("--days-between", sim.days_between, "Days between matches")->capture_default_str();
  add_common(c_sim, sim.common, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c_ingest) run_ingest(ingest);
    else if (*c_train) run_train(train);
    else if (*c_eval) run_eval(eval);
    else if (*c_cal) run_calibrate(cal);
    else if (*c_rate) run_rate(rate);
    else if (*c_imp) run_impact(impact);
    else if (*c_dist) run_dist(dist);
    else if (*c_sim) run_simulate(sim);
  } catch (...) {
    std::string message;
    const int code = exit_code_for_current_exception(&message);
    std::cerr << "error: " << message << '\n';
    return code;
  }
  return kExitOk;
}
