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

#ifndef WPA_WINPROB_HPP_
#define WPA_WINPROB_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpa/core.hpp"
#include "wpa/features.hpp"
#include "wpa/metrics.hpp"

namespace wpa {

// Training could not proceed (empty input, single-class labels, divergence).
class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ModelKind : std::uint8_t { kMapAverage = 0, kLogistic = 1, kGbt = 2 };

std::string_view to_string(ModelKind kind);

struct TreeNode {
  std::int32_t feature = -1;  // matrix column; -1 marks a leaf
  bool categorical = false;   // split on the map category code
  double threshold = 0.0;     // numeric: value < threshold goes left
  std::vector<std::uint8_t> left_categories;  // categorical: 1 = goes left
  std::int32_t left = -1;
  std::int32_t right = -1;
  double value = 0.0;  // leaf output in log-odds
  double gain = 0.0;

  bool is_leaf() const { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double evaluate(std::span<const double> row, std::int32_t map_code) const;
  friend bool operator==(const Tree&, const Tree&) = default;
};

struct GbtConfig {
  int n_trees = 100;
  int max_depth = 8;
  double min_child_weight = 1.0;
  double learning_rate = 0.1;
  int n_histogram_bins = 256;
  double l2 = 1.0;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument for out-of-range values.
  void validate() const;
};

struct LogisticConfig {
  int epochs = 500;
  double learning_rate = 0.1;
  std::uint64_t seed = 0;
};

struct WinProbModel {
  ModelKind kind = ModelKind::kMapAverage;
  FeatureSchema schema;
  std::map<std::string, std::string> metadata;

  // map average
  std::vector<double> map_rates;  // indexed by map code
  double global_rate = 0.5;

  // logistic
  std::vector<double> coefficients;  // one per matrix column
  double intercept = 0.0;
  std::vector<double> loss_history;  // training loss before each epoch, then final

  // gbt
  double base_score = 0.0;  // log-odds prior
  std::vector<Tree> trees;

  // Probability for a single row, clamped to [kProbabilityFloor, 1 - kProbabilityFloor].
  double predict_row(std::span<const double> row, std::int32_t map_code) const;

  friend bool operator==(const WinProbModel&, const WinProbModel&) = default;
};

double sigmoid(double z);

// Per-map CT win rate; maps unseen in training fall back to the global rate.
WinProbModel train_baseline(const FeatureMatrix& matrix, const FeatureSchema& schema);

// Mean log loss of a logistic model and its gradient (grad has width + 1
// entries; the last is the intercept).
double logistic_loss_and_gradient(const FeatureMatrix& matrix, std::span<const double> weights,
                                  double intercept, std::vector<double>* grad);

WinProbModel train_logistic(const FeatureMatrix& matrix, const FeatureSchema& schema,
                            const LogisticConfig& config = {});
WinProbModel train_gbt(const FeatureMatrix& matrix, const FeatureSchema& schema,
                       const GbtConfig& config = {});

// Throws SchemaError if the matrix columns differ from the model schema.
std::vector<double> predict(const WinProbModel& model, const FeatureMatrix& matrix);
std::vector<double> predict_states(const WinProbModel& model, std::span<const GameState> states);
double predict_state(const WinProbModel& model, const GameState& state);

struct EvalReport {
  Metrics overall;
  std::vector<TimeBinMetrics> by_time;
  std::vector<CalibrationBin> calibration;
};

EvalReport evaluate(const WinProbModel& model, const FeatureMatrix& matrix);
std::vector<CalibrationBin> calibration_curve(const WinProbModel& model,
                                              const FeatureMatrix& matrix, int n_bins = 100);
std::vector<TimeBinMetrics> evaluate_by_time(const WinProbModel& model,
                                             const FeatureMatrix& matrix, double bin_seconds);

struct FeatureImportance {
  std::string feature;
  double importance = 0.0;
};

// Total split gain per source feature, normalized to sum to 100, descending.
// Throws std::invalid_argument for non-tree models.
std::vector<FeatureImportance> feature_importance(const WinProbModel& model);

inline constexpr std::uint16_t kModelFileVersion = 1;

std::string encode_model(const WinProbModel& model);
WinProbModel decode_model(std::string_view bytes);
void save_model(const WinProbModel& model, const std::string& path);
WinProbModel load_model(const std::string& path);

}  // namespace wpa

#endif  // WPA_WINPROB_HPP_
