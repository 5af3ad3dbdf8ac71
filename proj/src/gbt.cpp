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

// Histogram gradient boosting on the logistic objective.

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

#include "wpa/winprob.hpp"

namespace wpa {

void GbtConfig::validate() const {
  if (n_trees < 0) throw std::invalid_argument("gbt: n_trees must be >= 0");
  if (max_depth < 1 || max_depth > 16) throw std::invalid_argument("gbt: max_depth must be in 1..16");
  if (!(min_child_weight > 0.0)) throw std::invalid_argument("gbt: min_child_weight must be > 0");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("gbt: learning_rate must be > 0");
  if (n_histogram_bins < 2 || n_histogram_bins > 256) {
    throw std::invalid_argument("gbt: n_histogram_bins must be in 2..256");
  }
  if (!(l2 >= 0.0)) throw std::invalid_argument("gbt: l2 must be >= 0");
}

namespace {

struct FeatureSpec {
  std::int32_t column = 0;
  bool categorical = false;
  std::vector<double> cuts;  // numeric only
  std::size_t n_bins = 0;
};

std::vector<double> numeric_cuts(std::vector<double> values, int max_bins) {
  std::sort(values.begin(), values.end());
  std::vector<double> unique = values;
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  std::vector<double> cuts;
  if (unique.size() <= static_cast<std::size_t>(max_bins)) {
    for (std::size_t i = 1; i < unique.size(); ++i) cuts.push_back(0.5 * (unique[i - 1] + unique[i]));
    return cuts;
  }
  const std::size_t n = values.size();
  for (int i = 1; i < max_bins; ++i) {
    const double v = values[static_cast<std::size_t>(i) * n / static_cast<std::size_t>(max_bins)];
    if (v > values.front() && (cuts.empty() || v > cuts.back())) cuts.push_back(v);
  }
  return cuts;
}

struct Split {
  double gain = 0.0;
  std::size_t feature = 0;  // index into specs
  std::size_t bin = 0;      // numeric: bins <= bin go left
  std::vector<std::uint8_t> left_categories;
  bool found = false;
};

double split_gain(double gl, double hl, double gr, double hr, double g, double h, double l2) {
  return 0.5 * (gl * gl / (hl + l2) + gr * gr / (hr + l2) - g * g / (h + l2));
}

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<FeatureSpec>& specs, const std::vector<std::uint16_t>& bins,
              std::size_t vocab, const GbtConfig& config)
      : specs_(specs), bins_(bins), vocab_(vocab), config_(config) {
    for (const auto& s : specs_) {
      offsets_.push_back(hist_width_);
      hist_width_ += s.n_bins;
    }
  }

  // Grows one tree on (g, h); writes each row's leaf output into `out`.
  Tree build(const std::vector<double>& g, const std::vector<double>& h, std::vector<double>& out) {
    const std::size_t n = g.size();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0u);

    Tree tree;
    struct Work {
      std::size_t node, begin, end;
      int depth;
    };
    std::deque<Work> queue;
    tree.nodes.emplace_back();
    queue.push_back({0, 0, n, 0});
    while (!queue.empty()) {
      const Work w = queue.front();
      queue.pop_front();
      double gs = 0.0, hs = 0.0;
      for (std::size_t k = w.begin; k < w.end; ++k) {
        gs += g[order_[k]];
        hs += h[order_[k]];
      }
      const double leaf = -gs / (hs + config_.l2) * config_.learning_rate;
      tree.nodes[w.node].value = leaf;

      Split best;
      if (w.depth < config_.max_depth && hs >= 2.0 * config_.min_child_weight) {
        best = find_split(g, h, w.begin, w.end, gs, hs);
      }
      if (!best.found) {
        for (std::size_t k = w.begin; k < w.end; ++k) out[order_[k]] = leaf;
        continue;
      }

      const FeatureSpec& spec = specs_[best.feature];
      const std::size_t nf = specs_.size();
      auto goes_left = [&](std::uint32_t row) {
        const std::uint16_t b = bins_[row * nf + best.feature];
        if (spec.categorical) return b < best.left_categories.size() && best.left_categories[b] != 0;
        return b <= best.bin;
      };
      auto mid = std::stable_partition(order_.begin() + static_cast<std::ptrdiff_t>(w.begin),
                                       order_.begin() + static_cast<std::ptrdiff_t>(w.end), goes_left);
      const std::size_t split_at = static_cast<std::size_t>(mid - order_.begin());

      const auto left = tree.nodes.size();
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      TreeNode& node = tree.nodes[w.node];
      node.feature = spec.column;
      node.categorical = spec.categorical;
      node.gain = best.gain;
      node.left = static_cast<std::int32_t>(left);
      node.right = static_cast<std::int32_t>(left + 1);
      if (spec.categorical) {
        node.left_categories.assign(best.left_categories.begin(),
                                    best.left_categories.begin() + static_cast<std::ptrdiff_t>(vocab_));
      } else {
        node.threshold = spec.cuts[best.bin];
      }
      queue.push_back({left, w.begin, split_at, w.depth + 1});
      queue.push_back({left + 1, split_at, w.end, w.depth + 1});
    }
    return tree;
  }

 private:
  Split find_split(const std::vector<double>& g, const std::vector<double>& h, std::size_t begin,
                   std::size_t end, double gs, double hs) {
    hist_g_.assign(hist_width_, 0.0);
    hist_h_.assign(hist_width_, 0.0);
    const std::size_t nf = specs_.size();
    for (std::size_t k = begin; k < end; ++k) {
      const std::uint32_t row = order_[k];
      const std::uint16_t* rb = bins_.data() + static_cast<std::size_t>(row) * nf;
      const double gi = g[row], hi = h[row];
      for (std::size_t f = 0; f < nf; ++f) {
        const std::size_t slot = offsets_[f] + rb[f];
        hist_g_[slot] += gi;
        hist_h_[slot] += hi;
      }
    }

    Split best;
    const double mcw = config_.min_child_weight;
    for (std::size_t f = 0; f < nf; ++f) {
      const FeatureSpec& spec = specs_[f];
      const double* hg = hist_g_.data() + offsets_[f];
      const double* hh = hist_h_.data() + offsets_[f];
      if (!spec.categorical) {
        double gl = 0.0, hl = 0.0;
        for (std::size_t b = 0; b + 1 < spec.n_bins; ++b) {
          gl += hg[b];
          hl += hh[b];
          const double gr = gs - gl, hr = hs - hl;
          if (hl < mcw || hr < mcw) continue;
          const double gain = split_gain(gl, hl, gr, hr, gs, hs, config_.l2);
          if (gain > best.gain) {
            best.gain = gain;
            best.feature = f;
            best.bin = b;
            best.found = true;
          }
        }
        continue;
      }
      // Categories present in the node, ordered by gradient ratio; the last
      // bin holds unseen codes and always goes right.
      std::vector<std::size_t> cats;
      for (std::size_t c = 0; c < vocab_; ++c) {
        if (hh[c] > 0.0) cats.push_back(c);
      }
      std::stable_sort(cats.begin(), cats.end(), [&](std::size_t a, std::size_t b) {
        return hg[a] / hh[a] < hg[b] / hh[b];
      });
      double gl = 0.0, hl = 0.0;
      for (std::size_t k = 0; k + 1 < cats.size(); ++k) {
        gl += hg[cats[k]];
        hl += hh[cats[k]];
        const double gr = gs - gl, hr = hs - hl;
        if (hl < mcw || hr < mcw) continue;
        const double gain = split_gain(gl, hl, gr, hr, gs, hs, config_.l2);
        if (gain > best.gain) {
          best.gain = gain;
          best.feature = f;
          best.found = true;
          best.left_categories.assign(spec.n_bins, 0);
          for (std::size_t j = 0; j <= k; ++j) best.left_categories[cats[j]] = 1;
        }
      }
    }
    return best;
  }

  const std::vector<FeatureSpec>& specs_;
  const std::vector<std::uint16_t>& bins_;
  std::size_t vocab_;
  const GbtConfig& config_;
  std::vector<std::size_t> offsets_;
  std::size_t hist_width_ = 0;
  std::vector<std::uint32_t> order_;
  std::vector<double> hist_g_, hist_h_;
};

double mean_log_loss(const std::vector<double>& score, const std::vector<int>& labels) {
  double total = 0.0;
  for (std::size_t i = 0; i < score.size(); ++i) {
    const double z = score[i];
    total += (z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z))) -
             (labels[i] != 0 ? z : 0.0);
  }
  return total / static_cast<double>(score.size());
}

}  // namespace

WinProbModel train_gbt(const FeatureMatrix& matrix, const FeatureSchema& schema,
                       const GbtConfig& config) {
  config.validate();
  if (matrix.rows() == 0) throw TrainingError("no training rows");
  const std::size_t n = matrix.rows();
  double positives = 0.0;
  for (int y : matrix.labels) positives += y != 0 ? 1.0 : 0.0;
  if (positives == 0.0 || positives == static_cast<double>(n)) {
    throw TrainingError("degenerate labels: only one class present");
  }
  if (matrix.columns != schema.column_names()) {
    throw SchemaError("feature columns do not match the schema");
  }

  // Numeric and bomb-site columns are binned; the map block is one categorical feature.
  const std::size_t vocab = schema.map_vocabulary.size();
  std::vector<FeatureSpec> specs;
  for (std::size_t c = 0; c < matrix.width(); ++c) {
    if (c >= schema.map_offset() && c < schema.site_offset()) {
      if (c == schema.map_offset()) {
        specs.push_back({static_cast<std::int32_t>(c), true, {}, vocab + 1});
      }
      continue;
    }
    std::vector<double> column(n);
    for (std::size_t i = 0; i < n; ++i) column[i] = matrix.at(i, c);
    FeatureSpec spec{static_cast<std::int32_t>(c), false,
                     numeric_cuts(std::move(column), config.n_histogram_bins), 0};
    spec.n_bins = spec.cuts.size() + 1;
    specs.push_back(std::move(spec));
  }
  const std::size_t nf = specs.size();
  std::vector<std::uint16_t> bins(n * nf);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t f = 0; f < nf; ++f) {
      const auto& spec = specs[f];
      std::size_t b;
      if (spec.categorical) {
        const auto code = matrix.map_codes[i];
        b = code >= 0 && static_cast<std::size_t>(code) < vocab ? static_cast<std::size_t>(code)
                                                                : vocab;
      } else {
        const double v = matrix.at(i, static_cast<std::size_t>(spec.column));
        b = static_cast<std::size_t>(std::upper_bound(spec.cuts.begin(), spec.cuts.end(), v) -
                                     spec.cuts.begin());
      }
      bins[i * nf + f] = static_cast<std::uint16_t>(b);
    }
  }

  WinProbModel m;
  m.kind = ModelKind::kGbt;
  m.schema = schema;
  const double rate = positives / static_cast<double>(n);
  m.base_score = std::log(rate / (1.0 - rate));

  std::vector<double> score(n, m.base_score), g(n), h(n), delta(n), next(n);
  double loss = mean_log_loss(score, matrix.labels);
  m.loss_history.push_back(loss);
  TreeBuilder builder(specs, bins, vocab, config);
  for (int t = 0; t < config.n_trees; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      const double p = sigmoid(score[i]);
      g[i] = p - (matrix.labels[i] != 0 ? 1.0 : 0.0);
      h[i] = std::max(p * (1.0 - p), 1e-16);
    }
    Tree tree = builder.build(g, h, delta);
    for (std::size_t i = 0; i < n; ++i) next[i] = score[i] + delta[i];
    const double next_loss = mean_log_loss(next, matrix.labels);
    if (next_loss < loss) {
      score.swap(next);
      loss = next_loss;
    } else {
      tree = Tree{{TreeNode{}}};
    }
    m.trees.push_back(std::move(tree));
    m.loss_history.push_back(loss);
  }

  std::ostringstream lr;
  lr.precision(17);
  lr << config.learning_rate;
  m.metadata["n_trees"] = std::to_string(config.n_trees);
  m.metadata["max_depth"] = std::to_string(config.max_depth);
  m.metadata["min_child_weight"] = std::to_string(config.min_child_weight);
  m.metadata["learning_rate"] = lr.str();
  m.metadata["n_histogram_bins"] = std::to_string(config.n_histogram_bins);
  m.metadata["l2"] = std::to_string(config.l2);
  m.metadata["seed"] = std::to_string(config.seed);
  m.metadata["rows"] = std::to_string(n);
  return m;
}

}  // namespace wpa
