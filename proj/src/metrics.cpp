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

#include "wpa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace wpa {

namespace {

void check_inputs(std::span<const double> p, std::span<const int> y) {
  if (p.size() != y.size()) throw std::invalid_argument("predictions and labels differ in length");
  if (p.empty()) throw std::invalid_argument("no rows to evaluate");
}

}  // namespace

double clamp_probability(double p) {
  return std::clamp(p, kProbabilityFloor, 1.0 - kProbabilityFloor);
}

double log_loss(std::span<const double> predictions, std::span<const int> labels) {
  check_inputs(predictions, labels);
  double total = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double p = clamp_probability(predictions[i]);
    total -= labels[i] != 0 ? std::log(p) : std::log1p(-p);
  }
  return total / static_cast<double>(predictions.size());
}

double brier_score(std::span<const double> predictions, std::span<const int> labels) {
  check_inputs(predictions, labels);
  double total = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double d = predictions[i] - (labels[i] != 0 ? 1.0 : 0.0);
    total += d * d;
  }
  return total / static_cast<double>(predictions.size());
}

double roc_auc(std::span<const double> predictions, std::span<const int> labels) {
  check_inputs(predictions, labels);
  const std::size_t n = predictions.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return predictions[a] < predictions[b]; });

  // Sum of midranks of the positives (Mann-Whitney U).
  double positive_rank_sum = 0.0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && predictions[order[j]] == predictions[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] != 0) {
        positive_rank_sum += midrank;
        ++positives;
      }
    }
    i = j;
  }
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) return std::numeric_limits<double>::quiet_NaN();
  const double np = static_cast<double>(positives);
  const double u = positive_rank_sum - np * (np + 1.0) / 2.0;
  return u / (np * static_cast<double>(negatives));
}

double accuracy(std::span<const double> predictions, std::span<const int> labels) {
  check_inputs(predictions, labels);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if ((predictions[i] >= 0.5) == (labels[i] != 0)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

Metrics compute_metrics(std::span<const double> predictions, std::span<const int> labels) {
  Metrics m;
  m.count = predictions.size();
  m.log_loss = log_loss(predictions, labels);
  m.brier = brier_score(predictions, labels);
  m.auc = roc_auc(predictions, labels);
  m.accuracy = accuracy(predictions, labels);
  return m;
}

std::vector<CalibrationBin> calibration_table(std::span<const double> predictions,
                                              std::span<const int> labels, int n_bins) {
  if (n_bins < 2) throw std::invalid_argument("calibration needs at least 2 bins");
  check_inputs(predictions, labels);
  std::vector<double> sum_p(n_bins, 0.0);
  std::vector<double> sum_y(n_bins, 0.0);
  std::vector<std::size_t> count(n_bins, 0);
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double p = predictions[i];
    int b = static_cast<int>(std::floor(p * n_bins));
    b = std::clamp(b, 0, n_bins - 1);
    sum_p[b] += p;
    sum_y[b] += labels[i] != 0 ? 1.0 : 0.0;
    ++count[b];
  }
  std::vector<CalibrationBin> out;
  for (int b = 0; b < n_bins; ++b) {
    if (count[b] == 0) continue;
    const double c = static_cast<double>(count[b]);
    out.push_back({b, static_cast<double>(b) / n_bins, static_cast<double>(b + 1) / n_bins,
                   sum_p[b] / c, sum_y[b] / c, count[b]});
  }
  return out;
}

std::vector<TimeBinMetrics> metrics_by_time(std::span<const double> predictions,
                                            std::span<const int> labels,
                                            std::span<const double> seconds, double bin_seconds) {
  if (!(bin_seconds > 0.0)) throw std::invalid_argument("bin width must be positive");
  if (seconds.size() != predictions.size()) {
    throw std::invalid_argument("seconds and predictions differ in length");
  }
  std::map<long, std::pair<std::vector<double>, std::vector<int>>> bins;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const long b = static_cast<long>(std::floor(seconds[i] / bin_seconds));
    auto& slot = bins[b];
    slot.first.push_back(predictions[i]);
    slot.second.push_back(labels[i]);
  }
  std::vector<TimeBinMetrics> out;
  for (const auto& [b, rows] : bins) {
    TimeBinMetrics t;
    t.bin = static_cast<int>(b);
    t.start_seconds = static_cast<double>(b) * bin_seconds;
    t.end_seconds = static_cast<double>(b + 1) * bin_seconds;
    t.metrics = compute_metrics(rows.first, rows.second);
    out.push_back(t);
  }
  return out;
}

}  // namespace wpa
