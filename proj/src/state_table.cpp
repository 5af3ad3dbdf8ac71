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

#include "wpa/state_table.hpp"

#include <algorithm>
#include <unordered_map>

namespace wpa {

namespace {

constexpr std::string_view kMagic = "WPAS";
constexpr std::string_view kTrailer = "SAPW";

enum class ColumnType : std::uint8_t { kI64 = 0, kF64 = 1, kStr = 2 };

struct Column {
  std::string_view name;
  ColumnType type;
  std::int64_t (*get_int)(const GameState&) = nullptr;
  void (*set_int)(GameState&, std::int64_t) = nullptr;
  double (*get_f64)(const GameState&) = nullptr;
  void (*set_f64)(GameState&, double) = nullptr;
  std::string GameState::*str = nullptr;
};

#define WPA_INT_COLUMN(field, cast)                                                   \
  Column {                                                                            \
    #field, ColumnType::kI64,                                                         \
        [](const GameState& s) { return static_cast<std::int64_t>(s.field); },        \
        [](GameState& s, std::int64_t v) { s.field = static_cast<cast>(v); }          \
  }

#define WPA_F64_COLUMN(field)                                                         \
  Column {                                                                            \
    #field, ColumnType::kF64, nullptr, nullptr,                                       \
        [](const GameState& s) { return s.field; }, [](GameState& s, double v) { s.field = v; } \
  }

#define WPA_STR_COLUMN(field) \
  Column { #field, ColumnType::kStr, nullptr, nullptr, nullptr, nullptr, &GameState::field }

const std::vector<Column>& columns() {
  static const std::vector<Column> cols = {
      WPA_STR_COLUMN(match_id),
      WPA_STR_COLUMN(match_date),
      WPA_STR_COLUMN(map_name),
      WPA_INT_COLUMN(round_num, int),
      WPA_INT_COLUMN(tick_rate, int),
      WPA_INT_COLUMN(tick, Tick),
      WPA_INT_COLUMN(ticks_since_start, Tick),
      WPA_INT_COLUMN(ct_equip_value, int),
      WPA_INT_COLUMN(t_equip_value, int),
      WPA_INT_COLUMN(ct_players_alive, int),
      WPA_INT_COLUMN(t_players_alive, int),
      WPA_INT_COLUMN(ct_hp_total, int),
      WPA_INT_COLUMN(t_hp_total, int),
      WPA_INT_COLUMN(bomb_planted, bool),
      WPA_INT_COLUMN(bomb_site, BombSite),
      WPA_F64_COLUMN(ct_dist_to_a),
      WPA_F64_COLUMN(ct_dist_to_b),
      WPA_F64_COLUMN(t_dist_to_a),
      WPA_F64_COLUMN(t_dist_to_b),
      WPA_INT_COLUMN(outcome_label, int),
  };
  return cols;
}

#undef WPA_INT_COLUMN
#undef WPA_F64_COLUMN
#undef WPA_STR_COLUMN

}  // namespace

const std::vector<std::string>& state_table_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& c : columns()) out.emplace_back(c.name);
    return out;
  }();
  return names;
}

std::string encode_states(std::span<const GameState> states) {
  const auto& cols = columns();
  ByteWriter w;
  w.put_bytes(kMagic);
  w.put(kStateTableVersion);
  w.put(static_cast<std::uint16_t>(cols.size()));
  for (const auto& c : cols) {
    w.put(static_cast<std::uint8_t>(c.type));
    w.put_string(c.name);
  }

  // String dictionary in first-seen order.
  std::vector<std::string_view> dictionary;
  std::unordered_map<std::string_view, std::uint32_t> lookup;
  for (const auto& s : states) {
    for (const auto& c : cols) {
      if (c.type != ColumnType::kStr) continue;
      const std::string& v = s.*(c.str);
      if (lookup.emplace(v, static_cast<std::uint32_t>(dictionary.size())).second) {
        dictionary.push_back(v);
      }
    }
  }
  w.put(static_cast<std::uint32_t>(dictionary.size()));
  for (auto v : dictionary) w.put_string(v);

  w.put(static_cast<std::uint64_t>(states.size()));
  for (std::size_t begin = 0; begin < states.size(); begin += kStateTableBlockRows) {
    const std::size_t end = std::min(states.size(), begin + kStateTableBlockRows);
    w.put(static_cast<std::uint32_t>(end - begin));
    for (const auto& c : cols) {
      for (std::size_t i = begin; i < end; ++i) {
        switch (c.type) {
          case ColumnType::kI64: w.put(c.get_int(states[i])); break;
          case ColumnType::kF64: w.put(c.get_f64(states[i])); break;
          case ColumnType::kStr: w.put(lookup.at(states[i].*(c.str))); break;
        }
      }
    }
  }
  w.put_bytes(kTrailer);
  return w.take();
}

std::vector<GameState> decode_states(std::string_view bytes) {
  const auto& cols = columns();
  ByteReader r(bytes);
  if (r.get_bytes(kMagic.size()) != kMagic) {
    throw FormatError(FormatError::Kind::kBadMagic, "not a state table (bad magic)");
  }
  const auto version = r.get<std::uint16_t>();
  if (version != kStateTableVersion) {
    throw FormatError(FormatError::Kind::kVersionMismatch,
                      "state table version " + std::to_string(version) + ", expected " +
                          std::to_string(kStateTableVersion));
  }
  const auto ncols = r.get<std::uint16_t>();
  if (ncols != cols.size()) {
    throw FormatError(FormatError::Kind::kCorrupt, "unexpected state table column count");
  }
  for (const auto& c : cols) {
    const auto type = r.get<std::uint8_t>();
    const auto name = r.get_string();
    if (type != static_cast<std::uint8_t>(c.type) || name != c.name) {
      throw FormatError(FormatError::Kind::kCorrupt,
                        "state table column '" + name + "' does not match expected '" +
                            std::string(c.name) + "'");
    }
  }
  const auto nstrings = r.get<std::uint32_t>();
  std::vector<std::string> dictionary;
  dictionary.reserve(nstrings);
  for (std::uint32_t i = 0; i < nstrings; ++i) dictionary.push_back(r.get_string());

  const auto nrows = r.get<std::uint64_t>();
  std::vector<GameState> states;
  states.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(nrows, r.remaining())));
  while (states.size() < nrows) {
    const auto block = r.get<std::uint32_t>();
    // Every column stores at least 4 bytes per row.
    if (block == 0 || states.size() + block > nrows) {
      throw FormatError(FormatError::Kind::kCorrupt, "bad state table block size");
    }
    if (static_cast<std::uint64_t>(block) * cols.size() * 4 > r.remaining()) {
      throw FormatError(FormatError::Kind::kTruncated, "unexpected end of state table");
    }
    const std::size_t base = states.size();
    states.resize(base + block);
    for (const auto& c : cols) {
      for (std::size_t i = base; i < base + block; ++i) {
        switch (c.type) {
          case ColumnType::kI64: c.set_int(states[i], r.get<std::int64_t>()); break;
          case ColumnType::kF64: c.set_f64(states[i], r.get<double>()); break;
          case ColumnType::kStr: {
            const auto idx = r.get<std::uint32_t>();
            if (idx >= dictionary.size()) {
              throw FormatError(FormatError::Kind::kCorrupt, "string index out of range");
            }
            states[i].*(c.str) = dictionary[idx];
            break;
          }
        }
      }
    }
  }
  if (r.get_bytes(kTrailer.size()) != kTrailer) {
    throw FormatError(FormatError::Kind::kCorrupt, "missing state table trailer");
  }
  return states;
}

void write_states(std::span<const GameState> states, const std::string& path) {
  write_file(path, encode_states(states));
}

std::vector<GameState> read_states(const std::string& path) {
  return decode_states(read_file(path));
}

}  // namespace wpa
