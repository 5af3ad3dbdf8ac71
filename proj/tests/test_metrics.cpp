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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "wpa/metrics.hpp"

namespace wpa {
namespace {

// Fraction of (positive, negative) pairs ranked correctly, ties count half.
double pairwise_auc(const std::vector<double>& p, const std::vector<int>& y) {
  double good = 0, pairs = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (y[i] != 1) continue;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (y[j] != 0) continue;
      pairs += 1;
      good += p[i] > p[j] ? 1.0 : (p[i] == p[j] ? 0.5 : 0.0);
    }
  }
  return good / pairs;
}

void random_data(std::uint64_t seed, std::size_t n, std::vector<double>& p, std::vector<int>& y) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  p.clear();
  y.clear();
  for (std::size_t i = 0; i < n; ++i) {
    // Coarse rounding forces ties.
    const double q = std::round(u(rng) * 20) / 20;
    p.push_back(q);
    y.push_back(u(rng) < q ? 1 : 0);
  }
}

TEST(MetricsTest, LogLossAndBrierByHand) {
  const std::vector<double> p = {0.9, 0.2, 0.6, 0.5};
  const std::vector<int> y = {1, 0, 0, 1};
  const double ll = -(std::log(0.9) + std::log(0.8) + std::log(0.4) + std::log(0.5)) / 4;
  EXPECT_NEAR(log_loss(p, y), ll, 1e-15);
  const double brier = (0.01 + 0.04 + 0.36 + 0.25) / 4;
  EXPECT_NEAR(brier_score(p, y), brier, 1e-15);
  EXPECT_DOUBLE_EQ(accuracy(p, y), 0.75);  // 0.5 counts as a CT call
}

TEST(MetricsTest, ClampingKeepsLossFinite) {
  const std::vector<double> p = {0.0, 1.0};
  const std::vector<int> y = {1, 0};
  EXPECT_NEAR(log_loss(p, y), -std::log(kProbabilityFloor), 1e-9);
  EXPECT_EQ(clamp_probability(2.0), 1.0 - kProbabilityFloor);
}

TEST(MetricsTest, AucMatchesPairCounting) {
  std::vector<double> p;
  std::vector<int> y;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    random_data(seed, 300, p, y);
    EXPECT_NEAR(roc_auc(p, y), pairwise_auc(p, y), 1e-12) << seed;
  }
}

TEST(MetricsTest, AucEdgeCases) {
  EXPECT_DOUBLE_EQ(roc_auc(std::vector<double>{0.1, 0.9}, std::vector<int>{0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(roc_auc(std::vector<double>{0.9, 0.1}, std::vector<int>{0, 1}), 0.0);
  EXPECT_DOUBLE_EQ(roc_auc(std::vector<double>{0.5, 0.5}, std::vector<int>{0, 1}), 0.5);
  EXPECT_TRUE(std::isnan(roc_auc(std::vector<double>{0.2, 0.3}, std::vector<int>{1, 1})));
}

TEST(MetricsTest, RejectsBadInput) {
  EXPECT_THROW(log_loss(std::vector<double>{0.5}, std::vector<int>{1, 0}), std::invalid_argument);
  EXPECT_THROW(brier_score(std::vector<double>{}, std::vector<int>{}), std::invalid_argument);
  EXPECT_THROW(calibration_table(std::vector<double>{0.5}, std::vector<int>{1}, 1),
               std::invalid_argument);
}

TEST(MetricsTest, CalibrationBinsByHand) {
  const std::vector<double> p = {0.05, 0.15, 0.12, 0.95, 1.0, 0.0};
  const std::vector<int> y = {0, 1, 0, 1, 1, 0};
  const auto bins = calibration_table(p, y, 10);
  ASSERT_EQ(bins.size(), 3u);
  EXPECT_EQ(bins[0].bin, 0);
  EXPECT_EQ(bins[0].count, 2u);
  EXPECT_DOUBLE_EQ(bins[0].mean_predicted, 0.025);
  EXPECT_DOUBLE_EQ(bins[0].mean_observed, 0.0);
  EXPECT_EQ(bins[1].bin, 1);
  EXPECT_DOUBLE_EQ(bins[1].mean_predicted, (0.15 + 0.12) / 2);
  EXPECT_DOUBLE_EQ(bins[1].mean_observed, 0.5);
  EXPECT_EQ(bins[2].bin, 9);  // 1.0 joins the top bin
  EXPECT_EQ(bins[2].count, 2u);
  EXPECT_DOUBLE_EQ(bins[2].lower, 0.9);
  EXPECT_DOUBLE_EQ(bins[2].upper, 1.0);
}

TEST(MetricsTest, CalibrationCountsSumToN) {
  std::vector<double> p;
  std::vector<int> y;
  random_data(11, 1000, p, y);
  std::size_t total = 0;
  for (const auto& b : calibration_table(p, y, 100)) total += b.count;
  EXPECT_EQ(total, 1000u);
}

TEST(MetricsTest, TimeBins) {
  const std::vector<double> p = {0.5, 0.5, 0.9, 0.1, 0.8};
  const std::vector<int> y = {1, 0, 1, 0, 0};
  const std::vector<double> t = {1.0, 9.9, 10.0, 25.0, 29.0};
  const auto bins = metrics_by_time(p, y, t, 10.0);
  ASSERT_EQ(bins.size(), 3u);
  EXPECT_EQ(bins[0].bin, 0);
  EXPECT_EQ(bins[0].metrics.count, 2u);
  EXPECT_NEAR(bins[0].metrics.log_loss, std::log(2.0), 1e-15);
  EXPECT_EQ(bins[1].bin, 1);
  EXPECT_NEAR(bins[1].metrics.log_loss, -std::log(0.9), 1e-15);
  EXPECT_EQ(bins[2].bin, 2);
  EXPECT_DOUBLE_EQ(bins[2].start_seconds, 20.0);
  EXPECT_NEAR(bins[2].metrics.log_loss, -(std::log(0.9) + std::log(0.2)) / 2, 1e-15);
  EXPECT_THROW(metrics_by_time(p, y, t, 0.0), std::invalid_argument);
}

TEST(MetricsTest, ComputeMetricsBundlesAll) {
  std::vector<double> p;
  std::vector<int> y;
  random_data(3, 200, p, y);
  const Metrics m = compute_metrics(p, y);
  EXPECT_EQ(m.count, 200u);
  EXPECT_DOUBLE_EQ(m.log_loss, log_loss(p, y));
  EXPECT_DOUBLE_EQ(m.brier, brier_score(p, y));
  EXPECT_DOUBLE_EQ(m.auc, roc_auc(p, y));
  EXPECT_DOUBLE_EQ(m.accuracy, accuracy(p, y));
}

}  // namespace
}  // namespace wpa
