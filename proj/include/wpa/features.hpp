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

#ifndef WPA_FEATURES_HPP_
#define WPA_FEATURES_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpa/binary_io.hpp"
#include "wpa/core.hpp"

namespace wpa {

// Rows or states do not fit the schema a model was trained with.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed, versioned description of the model input.
//
// Column layout of a FeatureMatrix:
//   [numeric features, standardized] [one-hot map] [one-hot bomb site none/A/B]
// The map is additionally exposed as a native category code for trees.
struct FeatureSchema {
  static constexpr std::uint16_t kVersion = 1;

  std::vector<std::string> numeric_names;
  std::vector<double> means;
  std::vector<double> stddevs;  // 0 marks a zero-variance passthrough column
  std::vector<std::string> map_vocabulary;
  bool has_distances = false;
  double unreachable_distance = 0.0;  // replaces infinite graph distances

  std::size_t numeric_count() const { return numeric_names.size(); }
  std::size_t map_offset() const { return numeric_count(); }
  std::size_t site_offset() const { return map_offset() + map_vocabulary.size(); }
  std::size_t width() const { return site_offset() + 3; }

  std::vector<std::string> column_names() const;
  // Source feature of each column; one-hot blocks share "map" / "bomb_site".
  std::vector<std::string> column_groups() const;
  std::optional<std::int32_t> map_code(const std::string& map) const;

  // Schema with no scaling (mean 0, stddev 1 everywhere) for hand-built models.
  static FeatureSchema unscaled(std::vector<std::string> maps, bool with_distances,
                                double unreachable_distance = 0.0);

  void write(ByteWriter& w) const;
  static FeatureSchema read(ByteReader& r);

  friend bool operator==(const FeatureSchema&, const FeatureSchema&) = default;
};

const std::vector<std::string>& base_numeric_features();
const std::vector<std::string>& distance_features();

struct FitOptions {
  // Replacement for unreachable distances; <= 0 picks the largest finite
  // distance seen plus one. Callers holding a mesh pass its node count.
  double unreachable_distance = 0.0;
};

// Fits standardization statistics and vocabularies on the given states.
// Distance features are part of the schema only if every state carries them.
FeatureSchema fit_schema(std::span<const GameState> states, const FitOptions& options = {});

struct RowMeta {
  std::string match_id;
  std::string match_date;
  int round_num = 0;
  Tick tick = 0;
  Tick ticks_since_start = 0;
  double seconds_since_start = 0.0;
};

struct FeatureMatrix {
  std::vector<std::string> columns;
  std::vector<std::string> groups;
  std::vector<double> values;          // row-major, rows() x width()
  std::vector<std::int32_t> map_codes;  // -1 for maps unseen at fit time
  std::vector<int> labels;              // CT win indicator
  std::vector<RowMeta> meta;
  std::size_t unseen_map_rows = 0;

  std::size_t rows() const { return labels.size(); }
  std::size_t width() const { return columns.size(); }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * width(), width()};
  }
  double at(std::size_t i, std::size_t j) const { return values[i * width() + j]; }

  // Rows [begin, end) as a new matrix.
  FeatureMatrix slice(std::size_t begin, std::size_t end) const;
  // Rows whose index satisfies the mask.
  FeatureMatrix select(const std::vector<bool>& keep) const;
};

// Deterministic row per state, in state order. Throws SchemaError when the
// schema expects distance features the states do not carry.
FeatureMatrix vectorize(std::span<const GameState> states, const FeatureSchema& schema);

}  // namespace wpa

#endif  // WPA_FEATURES_HPP_
