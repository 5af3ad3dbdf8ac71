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

#ifndef WPA_METRICS_HPP_
#define WPA_METRICS_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace wpa {

// Probabilities are clamped to [kProbabilityFloor, 1 - kProbabilityFloor]
// so log loss stays finite.
inline constexpr double kProbabilityFloor = 1e-6;

double clamp_probability(double p);

// Mean negative log-likelihood of clamped predictions.
double log_loss(std::span<const double> predictions, std::span<const int> labels);
double brier_score(std::span<const double> predictions, std::span<const int> labels);
// Rank statistic with midranks (ties credit 0.5). NaN if only one class.
double roc_auc(std::span<const double> predictions, std::span<const int> labels);
// Fraction of rows where (p >= 0.5) matches the label.
double accuracy(std::span<const double> predictions, std::span<const int> labels);

struct Metrics {
  std::size_t count = 0;
  double log_loss = 0.0;
  double brier = 0.0;
  double auc = 0.0;
  double accuracy = 0.0;
};

// Throws std::invalid_argument on empty or mismatched input.
Metrics compute_metrics(std::span<const double> predictions, std::span<const int> labels);

struct CalibrationBin {
  int bin = 0;
  double lower = 0.0;
  double upper = 0.0;
  double mean_predicted = 0.0;
  double mean_observed = 0.0;
  std::size_t count = 0;
};

// Equal-width bins on [0, 1]; empty bins are omitted. Throws for n_bins < 2.
std::vector<CalibrationBin> calibration_table(std::span<const double> predictions,
                                              std::span<const int> labels, int n_bins = 100);

struct TimeBinMetrics {
  int bin = 0;
  double start_seconds = 0.0;
  double end_seconds = 0.0;
  Metrics metrics;
};

// Rows grouped into [k * width, (k + 1) * width) second bins; empty bins omitted.
std::vector<TimeBinMetrics> metrics_by_time(std::span<const double> predictions,
                                            std::span<const int> labels,
                                            std::span<const double> seconds, double bin_seconds);

}  // namespace wpa

#endif  // WPA_METRICS_HPP_
