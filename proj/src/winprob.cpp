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

#include "wpa/winprob.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wpa {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kMapAverage: return "map_average";
    case ModelKind::kLogistic: return "logistic";
    case ModelKind::kGbt: return "gbt";
  }
  return "unknown";
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double Tree::evaluate(std::span<const double> row, std::int32_t map_code) const {
  std::size_t i = 0;
  while (!nodes[i].is_leaf()) {
    const TreeNode& n = nodes[i];
    bool left;
    if (n.categorical) {
      left = map_code >= 0 && static_cast<std::size_t>(map_code) < n.left_categories.size() &&
             n.left_categories[map_code] != 0;
    } else {
      left = row[n.feature] < n.threshold;
    }
    i = static_cast<std::size_t>(left ? n.left : n.right);
  }
  return nodes[i].value;
}

double WinProbModel::predict_row(std::span<const double> row, std::int32_t map_code) const {
  double p = 0.5;
  switch (kind) {
    case ModelKind::kMapAverage:
      p = map_code >= 0 && static_cast<std::size_t>(map_code) < map_rates.size()
              ? map_rates[map_code]
              : global_rate;
      break;
    case ModelKind::kLogistic: {
      double z = intercept;
      for (std::size_t j = 0; j < coefficients.size(); ++j) z += coefficients[j] * row[j];
      p = sigmoid(z);
      break;
    }
    case ModelKind::kGbt: {
      double z = base_score;
      for (const auto& t : trees) z += t.evaluate(row, map_code);
      p = sigmoid(z);
      break;
    }
  }
  return clamp_probability(p);
}

namespace {

void require_rows(const FeatureMatrix& matrix) {
  if (matrix.rows() == 0) throw TrainingError("no training rows");
}

std::pair<std::size_t, std::size_t> label_counts(const FeatureMatrix& matrix) {
  std::size_t pos = 0;
  for (int y : matrix.labels) pos += y != 0 ? 1 : 0;
  return {pos, matrix.rows() - pos};
}

void require_both_classes(const FeatureMatrix& matrix) {
  const auto [pos, neg] = label_counts(matrix);
  if (pos == 0 || neg == 0) throw TrainingError("degenerate labels: only one class present");
}

void check_columns(const WinProbModel& model, const FeatureMatrix& matrix) {
  const auto expected = model.schema.column_names();
  if (matrix.columns != expected) {
    std::ostringstream os;
    os << "feature columns do not match the model schema (model has " << expected.size()
       << " columns, rows have " << matrix.columns.size() << ")";
    throw SchemaError(os.str());
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

WinProbModel train_baseline(const FeatureMatrix& matrix, const FeatureSchema& schema) {
  require_rows(matrix);
  const std::size_t vocab = schema.map_vocabulary.size();
  std::vector<double> wins(vocab, 0.0), counts(vocab, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    const auto code = matrix.map_codes[i];
    if (code < 0 || static_cast<std::size_t>(code) >= vocab) {
      throw TrainingError("baseline rows need a known map");
    }
    wins[code] += matrix.labels[i];
    counts[code] += 1.0;
    total += matrix.labels[i];
  }
  WinProbModel m;
  m.kind = ModelKind::kMapAverage;
  m.schema = schema;
  m.global_rate = total / static_cast<double>(matrix.rows());
  m.map_rates.resize(vocab);
  for (std::size_t c = 0; c < vocab; ++c) {
    m.map_rates[c] = counts[c] > 0.0 ? wins[c] / counts[c] : m.global_rate;
  }
  m.metadata["rows"] = std::to_string(matrix.rows());
  return m;
}

double logistic_loss_and_gradient(const FeatureMatrix& matrix, std::span<const double> weights,
                                  double intercept, std::vector<double>* grad) {
  const std::size_t n = matrix.rows();
  const std::size_t w = matrix.width();
  if (weights.size() != w) throw std::invalid_argument("weight count does not match matrix width");
  if (grad != nullptr) grad->assign(w + 1, 0.0);
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* x = matrix.values.data() + i * w;
    double z = intercept;
    for (std::size_t j = 0; j < w; ++j) z += weights[j] * x[j];
    const double y = matrix.labels[i] != 0 ? 1.0 : 0.0;
    // log(1 + e^z) - y z, evaluated stably.
    loss += (z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z))) - y * z;
    if (grad != nullptr) {
      const double r = sigmoid(z) - y;
      double* g = grad->data();
      for (std::size_t j = 0; j < w; ++j) g[j] += r * x[j];
      g[w] += r;
    }
  }
  const double inv = 1.0 / static_cast<double>(n);
  if (grad != nullptr) {
    for (double& g : *grad) g *= inv;
  }
  return loss * inv;
}

WinProbModel train_logistic(const FeatureMatrix& matrix, const FeatureSchema& schema,
                            const LogisticConfig& config) {
  require_rows(matrix);
  require_both_classes(matrix);
  if (config.epochs < 0 || !(config.learning_rate > 0.0)) {
    throw std::invalid_argument("logistic: epochs must be >= 0 and learning rate > 0");
  }
  WinProbModel m;
  m.kind = ModelKind::kLogistic;
  m.schema = schema;
  const std::size_t w = matrix.width();
  m.coefficients.assign(w, 0.0);
  std::vector<double> grad;
  for (int epoch = 0;; ++epoch) {
    const double loss = logistic_loss_and_gradient(matrix, m.coefficients, m.intercept, &grad);
    if (!std::isfinite(loss)) {
      throw TrainingError("logistic: non-finite loss at epoch " + std::to_string(epoch) +
                          " (learning rate " + fmt(config.learning_rate) +
                          "); are the features standardized?");
    }
    m.loss_history.push_back(loss);
    if (epoch == config.epochs) break;
    for (std::size_t j = 0; j < w; ++j) m.coefficients[j] -= config.learning_rate * grad[j];
    m.intercept -= config.learning_rate * grad[w];
  }
  m.metadata["epochs"] = std::to_string(config.epochs);
  m.metadata["learning_rate"] = fmt(config.learning_rate);
  m.metadata["seed"] = std::to_string(config.seed);
  m.metadata["rows"] = std::to_string(matrix.rows());
  return m;
}

std::vector<double> predict(const WinProbModel& model, const FeatureMatrix& matrix) {
  check_columns(model, matrix);
  std::vector<double> out(matrix.rows());
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    out[i] = model.predict_row(matrix.row(i), matrix.map_codes[i]);
  }
  return out;
}

std::vector<double> predict_states(const WinProbModel& model, std::span<const GameState> states) {
  return predict(model, vectorize(states, model.schema));
}

double predict_state(const WinProbModel& model, const GameState& state) {
  return predict_states(model, std::span<const GameState>(&state, 1)).front();
}

EvalReport evaluate(const WinProbModel& model, const FeatureMatrix& matrix) {
  if (matrix.rows() == 0) throw std::invalid_argument("evaluate: no rows");
  const auto p = predict(model, matrix);
  EvalReport r;
  r.overall = compute_metrics(p, matrix.labels);
  r.calibration = calibration_table(p, matrix.labels, 100);
  return r;
}

std::vector<CalibrationBin> calibration_curve(const WinProbModel& model,
                                              const FeatureMatrix& matrix, int n_bins) {
  if (n_bins < 2) throw std::invalid_argument("calibration needs at least 2 bins");
  const auto p = predict(model, matrix);
  return calibration_table(p, matrix.labels, n_bins);
}

std::vector<TimeBinMetrics> evaluate_by_time(const WinProbModel& model,
                                             const FeatureMatrix& matrix, double bin_seconds) {
  const auto p = predict(model, matrix);
  std::vector<double> seconds(matrix.rows());
  for (std::size_t i = 0; i < matrix.rows(); ++i) seconds[i] = matrix.meta[i].seconds_since_start;
  return metrics_by_time(p, matrix.labels, seconds, bin_seconds);
}

std::vector<FeatureImportance> feature_importance(const WinProbModel& model) {
  if (model.kind != ModelKind::kGbt) {
    throw std::invalid_argument("feature importance needs a tree model, got " +
                                std::string(to_string(model.kind)));
  }
  const auto groups = model.schema.column_groups();
  std::map<std::string, double> gain;
  for (const auto& g : groups) gain.emplace(g, 0.0);
  double total = 0.0;
  for (const auto& t : model.trees) {
    for (const auto& n : t.nodes) {
      if (n.is_leaf()) continue;
      gain[groups.at(n.feature)] += n.gain;
      total += n.gain;
    }
  }
  std::vector<FeatureImportance> out;
  for (const auto& [name, g] : gain) out.push_back({name, total > 0.0 ? 100.0 * g / total : 0.0});
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.importance > b.importance;
  });
  return out;
}

}  // namespace wpa
