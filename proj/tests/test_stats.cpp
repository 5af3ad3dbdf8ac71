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
#include <vector>

#include "wpa/stats.hpp"

namespace wpa {
namespace {

TEST(StatsTest, MeanAndStddev) {
  const std::vector<double> x = {2, 4, 4, 4, 5, 5, 7, 9};
  EXPECT_DOUBLE_EQ(mean(x), 5.0);
  EXPECT_NEAR(sample_stddev(x), std::sqrt(32.0 / 7.0), 1e-15);
  EXPECT_EQ(sample_stddev(std::vector<double>{3.0}), 0.0);
  EXPECT_EQ(sample_stddev(std::vector<double>(7, 0.1)), 0.0);
}

TEST(StatsTest, PercentileInterpolates) {
  const std::vector<double> x = {10, 1, 3, 7};  // sorted: 1 3 7 10
  EXPECT_DOUBLE_EQ(percentile(x, 0.0), 1);
  EXPECT_DOUBLE_EQ(percentile(x, 1.0), 10);
  EXPECT_DOUBLE_EQ(percentile(x, 0.5), 5);        // h = 1.5
  EXPECT_DOUBLE_EQ(percentile(x, 0.05), 1.3);     // h = 0.15
  EXPECT_DOUBLE_EQ(percentile(x, 0.95), 9.55);    // h = 2.85
  EXPECT_THROW(percentile({}, 0.5), std::invalid_argument);
  EXPECT_THROW(percentile(x, 1.5), std::invalid_argument);
}

TEST(StatsTest, Pearson) {
  const std::vector<double> x = {1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(pearson(x, std::vector<double>{2, 4, 6, 8}), 1.0);
  EXPECT_DOUBLE_EQ(pearson(x, std::vector<double>{8, 6, 4, 2}), -1.0);
  EXPECT_NEAR(pearson(x, std::vector<double>{1, 3, 2, 4}), 0.8, 1e-15);
  EXPECT_TRUE(std::isnan(pearson(x, std::vector<double>{1, 1, 1, 1})));
  EXPECT_THROW(pearson(x, std::vector<double>{1}), std::invalid_argument);
}

TEST(StatsTest, SpearmanWithTies) {
  // Ranks by hand: x -> 1, 2.5, 2.5, 4 ; y -> 4, 3, 1.5, 1.5
  const std::vector<double> x = {1, 5, 5, 9};
  const std::vector<double> y = {8, 6, 2, 2};
  const std::vector<double> rx = {1, 2.5, 2.5, 4}, ry = {4, 3, 1.5, 1.5};
  EXPECT_NEAR(spearman(x, y), pearson(rx, ry), 1e-15);
  EXPECT_NEAR(spearman(x, std::vector<double>{1, 2, 3, 4}), pearson(rx, std::vector<double>{1, 2, 3, 4}),
              1e-15);
}

TEST(StatsTest, NormalCdf) {
  EXPECT_DOUBLE_EQ(normal_cdf(0), 0.5);
  EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-12);
}

TEST(FisherTest, KnownValues) {
  EXPECT_EQ(fisher_z(0.0), 0.0);
  EXPECT_NEAR(fisher_z(0.5), 0.5493061443340549, 1e-15);
  EXPECT_NEAR(fisher_z(-0.5), -0.5493061443340549, 1e-15);
  EXPECT_NEAR(fisher_z(0.9), std::atanh(0.9), 1e-14);
}

TEST(FisherTest, PerfectCorrelationWarns) {
  std::vector<std::string> warnings;
  EXPECT_TRUE(std::isinf(fisher_z(1.0, &warnings)));
  EXPECT_LT(fisher_z(-1.0, &warnings), 0);
  EXPECT_EQ(warnings.size(), 2u);
  EXPECT_THROW(fisher_z(1.2), std::invalid_argument);
}

TEST(FisherTest, EqualCorrelationsGiveHalf) {
  const CorrelationTest t = compare_correlations(0.4, 120, 0.4, 80);
  EXPECT_EQ(t.statistic, 0.0);
  EXPECT_DOUBLE_EQ(t.p_one_sided, 0.5);
}

TEST(FisherTest, StatisticByHand) {
  const CorrelationTest t = compare_correlations(0.6, 53, 0.3, 28);
  const double z = (std::atanh(0.6) - std::atanh(0.3)) / std::sqrt(1.0 / 50 + 1.0 / 25);
  EXPECT_NEAR(t.statistic, z, 1e-12);
  EXPECT_NEAR(t.p_one_sided, 1 - normal_cdf(z), 1e-12);
  EXPECT_LT(t.p_one_sided, 0.5);
  EXPECT_THROW(compare_correlations(0.1, 3, 0.2, 10), std::invalid_argument);
}

}  // namespace
}  // namespace wpa
