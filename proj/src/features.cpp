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

#include "wpa/features.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace wpa {

const std::vector<std::string>& base_numeric_features() {
  static const std::vector<std::string> names = {
      "ticks_since_start", "ct_equip_value", "t_equip_value", "ct_players_alive",
      "t_players_alive",   "ct_hp_total",    "t_hp_total",    "bomb_planted"};
  return names;
}

const std::vector<std::string>& distance_features() {
  static const std::vector<std::string> names = {"ct_dist_to_a", "ct_dist_to_b", "t_dist_to_a",
                                                 "t_dist_to_b"};
  return names;
}

namespace {

double mapped_distance(double d, double unreachable) {
  return std::isinf(d) ? unreachable : d;
}

// Raw (unscaled) numeric feature j of a state, in schema order.
double raw_numeric(const GameState& s, std::size_t j, double unreachable) {
  switch (j) {
    case 0: return static_cast<double>(s.ticks_since_start);
    case 1: return s.ct_equip_value;
    case 2: return s.t_equip_value;
    case 3: return s.ct_players_alive;
    case 4: return s.t_players_alive;
    case 5: return s.ct_hp_total;
    case 6: return s.t_hp_total;
    case 7: return s.bomb_planted ? 1.0 : 0.0;
    case 8: return mapped_distance(s.ct_dist_to_a, unreachable);
    case 9: return mapped_distance(s.ct_dist_to_b, unreachable);
    case 10: return mapped_distance(s.t_dist_to_a, unreachable);
    case 11: return mapped_distance(s.t_dist_to_b, unreachable);
    default: break;
  }
  return 0.0;
}

}  // namespace

std::vector<std::string> FeatureSchema::column_names() const {
  std::vector<std::string> out = numeric_names;
  for (const auto& m : map_vocabulary) out.push_back("map=" + m);
  out.emplace_back("bomb_site=none");
  out.emplace_back("bomb_site=A");
  out.emplace_back("bomb_site=B");
  return out;
}

std::vector<std::string> FeatureSchema::column_groups() const {
  std::vector<std::string> out = numeric_names;
  out.insert(out.end(), map_vocabulary.size(), "map");
  out.insert(out.end(), 3, "bomb_site");
  return out;
}

std::optional<std::int32_t> FeatureSchema::map_code(const std::string& map) const {
  auto it = std::lower_bound(map_vocabulary.begin(), map_vocabulary.end(), map);
  if (it == map_vocabulary.end() || *it != map) return std::nullopt;
  return static_cast<std::int32_t>(it - map_vocabulary.begin());
}

FeatureSchema FeatureSchema::unscaled(std::vector<std::string> maps, bool with_distances,
                                      double unreachable_distance) {
  FeatureSchema s;
  s.numeric_names = base_numeric_features();
  if (with_distances) {
    const auto& d = distance_features();
    s.numeric_names.insert(s.numeric_names.end(), d.begin(), d.end());
  }
  s.means.assign(s.numeric_names.size(), 0.0);
  s.stddevs.assign(s.numeric_names.size(), 1.0);
  std::sort(maps.begin(), maps.end());
  maps.erase(std::unique(maps.begin(), maps.end()), maps.end());
  s.map_vocabulary = std::move(maps);
  s.has_distances = with_distances;
  s.unreachable_distance = unreachable_distance;
  return s;
}

void FeatureSchema::write(ByteWriter& w) const {
  w.put(kVersion);
  w.put(static_cast<std::uint32_t>(numeric_names.size()));
  for (std::size_t j = 0; j < numeric_names.size(); ++j) {
    w.put_string(numeric_names[j]);
    w.put(means[j]);
    w.put(stddevs[j]);
  }
  w.put(static_cast<std::uint32_t>(map_vocabulary.size()));
  for (const auto& m : map_vocabulary) w.put_string(m);
  w.put(static_cast<std::uint8_t>(has_distances ? 1 : 0));
  w.put(unreachable_distance);
}

FeatureSchema FeatureSchema::read(ByteReader& r) {
  const auto version = r.get<std::uint16_t>();
  if (version != kVersion) {
    throw FormatError(FormatError::Kind::kVersionMismatch,
                      "feature schema version " + std::to_string(version));
  }
  FeatureSchema s;
  const auto n = r.get<std::uint32_t>();
  for (std::uint32_t j = 0; j < n; ++j) {
    s.numeric_names.push_back(r.get_string());
    s.means.push_back(r.get<double>());
    s.stddevs.push_back(r.get<double>());
  }
  const auto maps = r.get<std::uint32_t>();
  for (std::uint32_t j = 0; j < maps; ++j) s.map_vocabulary.push_back(r.get_string());
  s.has_distances = r.get<std::uint8_t>() != 0;
  s.unreachable_distance = r.get<double>();
  return s;
}

FeatureSchema fit_schema(std::span<const GameState> states, const FitOptions& options) {
  if (states.empty()) throw std::invalid_argument("fit_schema: no states");

  const bool distances = std::all_of(states.begin(), states.end(),
                                     [](const GameState& s) { return s.has_distances(); });
  double unreachable = options.unreachable_distance;
  if (distances && unreachable <= 0.0) {
    double max_finite = 0.0;
    for (const auto& s : states) {
      for (double d : {s.ct_dist_to_a, s.ct_dist_to_b, s.t_dist_to_a, s.t_dist_to_b}) {
        if (std::isfinite(d)) max_finite = std::max(max_finite, d);
      }
    }
    unreachable = max_finite + 1.0;
  }

  std::set<std::string> maps;
  for (const auto& s : states) maps.insert(s.map_name);
  FeatureSchema schema =
      FeatureSchema::unscaled({maps.begin(), maps.end()}, distances, distances ? unreachable : 0.0);

  // Two-pass mean / population variance.
  const std::size_t k = schema.numeric_count();
  const double n = static_cast<double>(states.size());
  std::vector<double> sum(k, 0.0);
  for (const auto& s : states) {
    for (std::size_t j = 0; j < k; ++j) sum[j] += raw_numeric(s, j, unreachable);
  }
  for (std::size_t j = 0; j < k; ++j) schema.means[j] = sum[j] / n;
  std::vector<double> sq(k, 0.0);
  for (const auto& s : states) {
    for (std::size_t j = 0; j < k; ++j) {
      const double d = raw_numeric(s, j, unreachable) - schema.means[j];
      sq[j] += d * d;
    }
  }
  for (std::size_t j = 0; j < k; ++j) {
    schema.stddevs[j] = std::sqrt(sq[j] / n);
    if (!(schema.stddevs[j] > 0.0)) schema.stddevs[j] = 0.0;
  }
  return schema;
}

FeatureMatrix FeatureMatrix::slice(std::size_t begin, std::size_t end) const {
  std::vector<bool> keep(rows(), false);
  for (std::size_t i = begin; i < end && i < rows(); ++i) keep[i] = true;
  return select(keep);
}

FeatureMatrix FeatureMatrix::select(const std::vector<bool>& keep) const {
  FeatureMatrix out;
  out.columns = columns;
  out.groups = groups;
  const std::size_t w = width();
  for (std::size_t i = 0; i < rows(); ++i) {
    if (!keep[i]) continue;
    out.values.insert(out.values.end(), values.begin() + i * w, values.begin() + (i + 1) * w);
    out.map_codes.push_back(map_codes[i]);
    out.labels.push_back(labels[i]);
    out.meta.push_back(meta[i]);
    if (map_codes[i] < 0) ++out.unseen_map_rows;
  }
  return out;
}

FeatureMatrix vectorize(std::span<const GameState> states, const FeatureSchema& schema) {
  FeatureMatrix m;
  m.columns = schema.column_names();
  m.groups = schema.column_groups();
  const std::size_t w = schema.width();
  const std::size_t k = schema.numeric_count();
  m.values.assign(states.size() * w, 0.0);
  m.map_codes.resize(states.size());
  m.labels.resize(states.size());
  m.meta.resize(states.size());

  for (std::size_t i = 0; i < states.size(); ++i) {
    const GameState& s = states[i];
    if (schema.has_distances && !s.has_distances()) {
      throw SchemaError("schema expects bombsite distances but state at tick " +
                        std::to_string(s.tick) + " has none (no navigation mesh?)");
    }
    double* row = m.values.data() + i * w;
    for (std::size_t j = 0; j < k; ++j) {
      const double raw = raw_numeric(s, j, schema.unreachable_distance);
      row[j] = schema.stddevs[j] > 0.0 ? (raw - schema.means[j]) / schema.stddevs[j] : raw;
    }
    const auto code = schema.map_code(s.map_name);
    if (code) {
      row[schema.map_offset() + static_cast<std::size_t>(*code)] = 1.0;
      m.map_codes[i] = *code;
    } else {
      m.map_codes[i] = -1;
      ++m.unseen_map_rows;
    }
    row[schema.site_offset() + static_cast<std::size_t>(s.bomb_site)] = 1.0;
    m.labels[i] = s.outcome_label;
    m.meta[i] = {s.match_id, s.match_date, s.round_num, s.tick, s.ticks_since_start,
                 s.seconds_since_start()};
  }
  return m;
}

}  // namespace wpa
