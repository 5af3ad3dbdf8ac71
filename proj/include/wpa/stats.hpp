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

#ifndef WPA_STATS_HPP_
#define WPA_STATS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wpa {

double mean(std::span<const double> xs);
// Sample standard deviation (n - 1); exactly 0 for fewer than two values or
// a constant sample.
double sample_stddev(std::span<const double> xs);
// Linear interpolation between order statistics (R type 7), q in [0, 1].
double percentile(std::vector<double> xs, double q);

// NaN when either input has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);
// Pearson on midranks.
double spearman(std::span<const double> x, std::span<const double> y);

double normal_cdf(double x);

// 0.5 * ln((1 + r) / (1 - r)). |r| = 1 yields +/-infinity and appends a
// warning when `warnings` is given.
double fisher_z(double r, std::vector<std::string>* warnings = nullptr);

struct CorrelationTest {
  double r1 = 0.0, r2 = 0.0;
  std::size_t n1 = 0, n2 = 0;
  double z1 = 0.0, z2 = 0.0;
  double statistic = 0.0;  // (z1 - z2) / sqrt(1/(n1-3) + 1/(n2-3))
  double p_one_sided = 0.5;  // P(Z >= statistic): evidence that r1 > r2
};

// Throws std::invalid_argument when either n <= 3.
CorrelationTest compare_correlations(double r1, std::size_t n1, double r2, std::size_t n2,
                                     std::vector<std::string>* warnings = nullptr);

}  // namespace wpa

#endif  // WPA_STATS_HPP_
