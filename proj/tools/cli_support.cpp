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

#include "cli_support.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wpa/binary_io.hpp"
#include "wpa/features.hpp"
#include "wpa/ingest.hpp"
#include "wpa/navmesh.hpp"

namespace wpa::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

int exit_code_for_current_exception(std::string* message) {
  try {
    throw;
  } catch (const CliError& e) {
    *message = e.what();
    return e.code();
  } catch (const ParseError& e) {
    *message = e.what();
    return kExitValidation;
  } catch (const ValidationError& e) {
    *message = e.what();
    return kExitValidation;
  } catch (const NavError& e) {
    *message = e.what();
    return kExitValidation;
  } catch (const SchemaError& e) {
    *message = e.what();
    return kExitModel;
  } catch (const FormatError& e) {
    *message = e.what();
    return kExitModel;
  } catch (const TrainingError& e) {
    *message = e.what();
    return kExitModel;
  } catch (const IoError& e) {
    *message = e.what();
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    *message = e.what();
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    *message = e.what();
    return kExitValidation;
  } catch (const std::exception& e) {
    *message = e.what();
    return kExitValidation;
  }
}

namespace {

double parse_number(const std::string& text, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw CliError(kExitUsage, "bad number '" + text + "' in " + context);
  }
  return v;
}

int parse_count(const std::string& text, const std::string& context) {
  const double v = parse_number(text, context);
  if (v != std::floor(v) || v < 0 || v > GameConstants::kPlayersPerSide) {
    throw CliError(kExitUsage, "bad player count '" + text + "' in " + context);
  }
  return static_cast<int>(v);
}

}  // namespace

std::pair<double, double> parse_probability_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw CliError(kExitUsage, "expected a range lo:hi, got '" + text + "'");
  }
  const double lo = parse_number(text.substr(0, colon), text);
  const double hi = parse_number(text.substr(colon + 1), text);
  if (lo < 0.0 || hi > 1.0 || lo > hi) {
    throw CliError(kExitUsage, "probability range must satisfy 0 <= lo <= hi <= 1: '" + text + "'");
  }
  return {lo, hi};
}

void apply_filter_expression(const std::string& expr, ScenarioFilter& filter) {
  if (expr == "pistol") {
    filter.pistol_only = true;
    return;
  }
  const auto eq = expr.find('=');
  if (eq == std::string::npos) throw CliError(kExitUsage, "unknown filter '" + expr + "'");
  const std::string key = expr.substr(0, eq);
  const std::string value = expr.substr(eq + 1);
  if (key == "maps") {
    std::stringstream ss(value);
    std::string m;
    while (std::getline(ss, m, '+')) {
      if (m.empty()) throw CliError(kExitUsage, "empty map name in '" + expr + "'");
      filter.maps.insert(m);
    }
    if (filter.maps.empty()) throw CliError(kExitUsage, "no maps in '" + expr + "'");
  } else if (key == "alive") {
    // SIDE:NvM
    const auto colon = value.find(':');
    const auto v = value.find('v', colon == std::string::npos ? 0 : colon);
    if (colon == std::string::npos || v == std::string::npos) {
      throw CliError(kExitUsage, "expected alive=SIDE:NvM, got '" + expr + "'");
    }
    const auto side = parse_side(value.substr(0, colon));
    if (!side) throw CliError(kExitUsage, "unknown side in '" + expr + "'");
    if (filter.alive) throw CliError(kExitUsage, "alive filter given twice");
    filter.alive = AlivePattern{*side, parse_count(value.substr(colon + 1, v - colon - 1), expr),
                                parse_count(value.substr(v + 1), expr)};
  } else if (key == "winprob") {
    if (filter.win_prob) throw CliError(kExitUsage, "winprob filter given twice");
    filter.win_prob = parse_probability_range(value);
  } else {
    throw CliError(kExitUsage, "unknown filter '" + key + "'");
  }
}

std::vector<std::string> collect_json_files(const std::vector<std::string>& inputs) {
  std::set<std::string> out;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      for (const auto& e : fs::recursive_directory_iterator(p)) {
        if (e.is_regular_file() && e.path().extension() == ".json") out.insert(e.path().string());
      }
    } else if (fs::exists(p)) {
      out.insert(p.string());
    } else {
      throw CliError(kExitIo, "no such file or directory: " + in);
    }
  }
  return {out.begin(), out.end()};
}

namespace {

template <typename T>
void take(json& obj, const char* key, T& target) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    target = it->get<T>();
  } catch (const json::exception&) {
    throw CliError(kExitUsage, std::string("config key '") + key + "' has the wrong type");
  }
  obj.erase(it);
}

void reject_rest(const json& obj, const std::string& where) {
  if (!obj.empty()) {
    throw CliError(kExitUsage, "unknown config key '" + obj.begin().key() + "' in " + where);
  }
}

}  // namespace

ConfigOverrides load_config(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw CliError(kExitUsage, "config " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw CliError(kExitUsage, "config " + path + " must be a JSON object");

  ConfigOverrides c;
  take(doc, "trade_window_seconds", c.classic.trade_window_seconds);
  take(doc, "assist_damage_threshold", c.classic.assist_damage_threshold);
  if (auto it = doc.find("rating"); it != doc.end()) {
    json r = *it;
    take(r, "kill", c.classic.c_kill);
    take(r, "survival", c.classic.c_survival);
    take(r, "multikill", c.classic.c_multikill);
    reject_rest(r, "rating");
    doc.erase(it);
  }
  if (auto it = doc.find("gbt"); it != doc.end()) {
    json g = *it;
    take(g, "n_trees", c.gbt.n_trees);
    take(g, "max_depth", c.gbt.max_depth);
    take(g, "min_child_weight", c.gbt.min_child_weight);
    take(g, "learning_rate", c.gbt.learning_rate);
    take(g, "n_histogram_bins", c.gbt.n_histogram_bins);
    take(g, "l2", c.gbt.l2);
    reject_rest(g, "gbt");
    doc.erase(it);
  }
  if (auto it = doc.find("logistic"); it != doc.end()) {
    json l = *it;
    take(l, "epochs", c.logistic.epochs);
    take(l, "learning_rate", c.logistic.learning_rate);
    reject_rest(l, "logistic");
    doc.erase(it);
  }
  reject_rest(doc, path);
  if (c.classic.trade_window_seconds < 0.0) throw CliError(kExitUsage, "trade window must be >= 0");
  try {
    c.gbt.validate();
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitUsage, std::string("config gbt: ") + e.what());
  }
  return c;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::vector<GameState> select_dates(std::vector<GameState> states, const std::string& from,
                                    const std::string& until) {
  std::erase_if(states, [&](const GameState& s) {
    return (!from.empty() && s.match_date < from) || (!until.empty() && s.match_date >= until);
  });
  return states;
}

std::string ratings_csv(const std::vector<PlayerValuation>& ratings) {
  const bool boot = std::any_of(ratings.begin(), ratings.end(),
                                [](const auto& r) { return r.bootstrap.has_value(); });
  std::ostringstream out;
  out << "rank,player_id,rounds,wpa_per_round,wpa_total,kills,deaths,assists,kdr,adr,kast,"
         "rating_1_0";
  if (boot) out << ",boot_mean,boot_stddev,boot_p5,boot_p95";
  out << ",hltv_rank\n";
  for (const auto& r : ratings) {
    const auto& c = r.classic;
    out << r.rank << ',' << r.player_id << ',' << r.rounds_played << ',' << fmt(r.wpa_per_round)
        << ',' << fmt(r.wpa_total) << ',' << c.kills << ',' << c.deaths << ',' << c.assists << ','
        << fmt(c.kdr) << ',' << fmt(c.adr) << ',' << fmt(c.kast) << ',' << fmt(c.rating_1_0);
    if (boot) {
      if (r.bootstrap) {
        out << ',' << fmt(r.bootstrap->mean) << ',' << fmt(r.bootstrap->stddev) << ','
            << fmt(r.bootstrap->p5) << ',' << fmt(r.bootstrap->p95);
      } else {
        out << ",,,,";
      }
    }
    out << ",\n";
  }
  return out.str();
}

std::string ratings_json(const std::vector<PlayerValuation>& ratings) {
  json arr = json::array();
  for (const auto& r : ratings) {
    const auto& c = r.classic;
    json o = {{"rank", r.rank},
              {"player_id", r.player_id},
              {"rounds", r.rounds_played},
              {"wpa_per_round", r.wpa_per_round},
              {"wpa_total", r.wpa_total},
              {"kills", c.kills},
              {"deaths", c.deaths},
              {"assists", c.assists},
              {"kdr", c.kdr},
              {"kdr_no_deaths", c.kdr_no_deaths},
              {"adr", c.adr},
              {"kast", c.kast},
              {"rating_1_0", c.rating_1_0},
              {"hltv_rank", nullptr}};
    if (r.bootstrap) {
      o["bootstrap"] = {{"b", r.bootstrap->b},
                        {"seed", r.bootstrap->seed},
                        {"mean", r.bootstrap->mean},
                        {"stddev", r.bootstrap->stddev},
                        {"p5", r.bootstrap->p5},
                        {"p95", r.bootstrap->p95}};
    }
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

}  // namespace wpa::cli
