/*
 * Copyright 2026 The fairaudit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fairaudit/random.h"
#include "learners_internal.h"

namespace fairaudit::internal {
namespace {

double GiniImpurity(double neg, double pos) {
  const double n = neg + pos;
  if (n <= 0.0) return 0.0;
  const double p = pos / n;
  return 2.0 * p * (1.0 - p);
}

class ForestTreeBuilder {
 public:
  ForestTreeBuilder(const BinnedMatrix& binned, std::span<const std::uint8_t> y,
                    int max_depth, std::size_t max_features)
      : binned_(binned), y_(y), max_depth_(max_depth),
        max_features_(max_features) {}

  // `counts[r]` is how often row r was drawn into the bootstrap sample.
  Tree Build(const std::vector<std::uint32_t>& counts, Rng& rng) {
    std::vector<std::uint32_t> rows;
    for (std::size_t r = 0; r < counts.size(); ++r) {
      if (counts[r] > 0) rows.push_back(static_cast<std::uint32_t>(r));
    }
    Tree tree;
    tree.nodes.emplace_back();
    Grow(tree, 0, std::move(rows), counts, rng, 0);
    return tree;
  }

 private:
  void Grow(Tree& tree, int node, std::vector<std::uint32_t> rows,
            const std::vector<std::uint32_t>& counts, Rng& rng, int depth) {
    double neg = 0.0;
    double pos = 0.0;
    for (auto r : rows) (y_[r] ? pos : neg) += counts[r];

    int best_feature = -1;
    int best_bin = -1;
    if (depth < max_depth_ && neg > 0.0 && pos > 0.0) {
      std::vector<std::size_t> features(binned_.cols);
      std::iota(features.begin(), features.end(), 0);
      // Partial Fisher-Yates: the first max_features_ entries are the sample.
      const std::size_t k = std::min(max_features_, features.size());
      for (std::size_t i = 0; i < k; ++i) {
        std::swap(features[i], features[i + rng.Below(features.size() - i)]);
      }
      const double parent = (neg + pos) * GiniImpurity(neg, pos);
      double best_gain = 1e-12;
      std::vector<double> neg_hist;
      std::vector<double> pos_hist;
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t f = features[i];
        const std::size_t nb = binned_.num_bins(f);
        if (nb < 2) continue;
        neg_hist.assign(nb, 0.0);
        pos_hist.assign(nb, 0.0);
        for (auto r : rows) {
          (y_[r] ? pos_hist : neg_hist)[binned_.bin(r, f)] += counts[r];
        }
        double ln = 0.0;
        double lp = 0.0;
        for (std::size_t b = 0; b + 1 < nb; ++b) {
          ln += neg_hist[b];
          lp += pos_hist[b];
          const double rn = neg - ln;
          const double rp = pos - lp;
          if (ln + lp <= 0.0 || rn + rp <= 0.0) continue;
          const double gain = parent - (ln + lp) * GiniImpurity(ln, lp) -
                              (rn + rp) * GiniImpurity(rn, rp);
          if (gain > best_gain) {
            best_gain = gain;
            best_feature = static_cast<int>(f);
            best_bin = static_cast<int>(b);
          }
        }
      }
    }

    if (best_feature < 0) {
      tree.nodes[static_cast<std::size_t>(node)].value = pos > neg ? 1.0 : 0.0;
      return;
    }
    const auto f = static_cast<std::size_t>(best_feature);
    std::vector<std::uint32_t> left;
    std::vector<std::uint32_t> right;
    for (auto r : rows) {
      (binned_.bin(r, f) <= best_bin ? left : right).push_back(r);
    }
    const int left_id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    const int right_id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    auto& n = tree.nodes[static_cast<std::size_t>(node)];
    n.feature = best_feature;
    n.threshold = binned_.thresholds[f][static_cast<std::size_t>(best_bin)];
    n.left = left_id;
    n.right = right_id;
    Grow(tree, left_id, std::move(left), counts, rng, depth + 1);
    Grow(tree, right_id, std::move(right), counts, rng, depth + 1);
  }

  const BinnedMatrix& binned_;
  std::span<const std::uint8_t> y_;
  int max_depth_;
  std::size_t max_features_;
};

}  // namespace

TreeEnsemble TrainForest(const EncodedMatrix& x,
                         std::span<const double> weights,
                         const LearnerConfig& config) {
  const auto binned = BinMatrix(x, weights, config.n_thresholds);
  const std::size_t n = x.rows();
  std::vector<double> cumulative(n);
  std::partial_sum(weights.begin(), weights.end(), cumulative.begin());
  const double total = cumulative.back();
  const auto max_features = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::sqrt(static_cast<double>(x.cols()))));

  ForestTreeBuilder builder(binned, x.target(), config.max_depth, max_features);
  TreeEnsemble ensemble;
  ensemble.trees.reserve(static_cast<std::size_t>(config.n_estimators));
  std::vector<std::uint32_t> counts(n);
  for (int t = 0; t < config.n_estimators; ++t) {
    Rng rng(DeriveSeed(config.seed, static_cast<std::uint64_t>(t)));
    // Weighted bootstrap: n draws with probability proportional to weight.
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t d = 0; d < n; ++d) {
      const double u = rng.Uniform() * total;
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      if (it == cumulative.end()) --it;
      ++counts[static_cast<std::size_t>(it - cumulative.begin())];
    }
    ensemble.trees.push_back(builder.Build(counts, rng));
  }
  return ensemble;
}

}  // namespace fairaudit::internal
