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

#include "fairaudit/error.h"
#include "learners_internal.h"

namespace fairaudit::internal {
namespace {

struct Histogram {
  std::vector<double> grad;
  std::vector<double> hess;
};

struct SplitCandidate {
  int feature = -1;
  int bin = -1;
  double gain = 0.0;
};

double LeafObjective(double g, double h, double lambda) {
  return g * g / (h + lambda);
}

class BoostedTreeBuilder {
 public:
  BoostedTreeBuilder(const BinnedMatrix& binned, const LearnerConfig& config)
      : binned_(binned), config_(config) {}

  // Grows one tree on `rows` and writes each row's leaf value into
  // `row_values`.
  Tree Build(std::vector<std::uint32_t> rows, std::span<const double> grad,
             std::span<const double> hess, std::vector<double>& row_values) {
    Tree tree;
    tree.nodes.emplace_back();
    Grow(tree, 0, std::move(rows), grad, hess, 0, row_values);
    return tree;
  }

 private:
  void Grow(Tree& tree, int node, std::vector<std::uint32_t> rows,
            std::span<const double> grad, std::span<const double> hess,
            int depth, std::vector<double>& row_values) {
    double g_total = 0.0;
    double h_total = 0.0;
    for (auto r : rows) {
      g_total += grad[r];
      h_total += hess[r];
    }
    const double lambda = config_.l2_penalty;
    SplitCandidate best;
    if (depth < config_.max_depth && rows.size() > 1) {
      best = FindSplit(rows, grad, hess, g_total, h_total);
    }
    if (best.feature < 0) {
      const double value =
          -g_total / (h_total + lambda) * config_.learning_rate;
      tree.nodes[static_cast<std::size_t>(node)].value =
          std::isfinite(value) ? value : 0.0;
      for (auto r : rows) {
        row_values[r] = tree.nodes[static_cast<std::size_t>(node)].value;
      }
      return;
    }

    std::vector<std::uint32_t> left;
    std::vector<std::uint32_t> right;
    const auto f = static_cast<std::size_t>(best.feature);
    for (auto r : rows) {
      (binned_.bin(r, f) <= best.bin ? left : right).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    const int left_id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    const int right_id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    auto& n = tree.nodes[static_cast<std::size_t>(node)];
    n.feature = best.feature;
    n.threshold = binned_.thresholds[f][static_cast<std::size_t>(best.bin)];
    n.left = left_id;
    n.right = right_id;
    Grow(tree, left_id, std::move(left), grad, hess, depth + 1, row_values);
    Grow(tree, right_id, std::move(right), grad, hess, depth + 1, row_values);
  }

  SplitCandidate FindSplit(const std::vector<std::uint32_t>& rows,
                           std::span<const double> grad,
                           std::span<const double> hess, double g_total,
                           double h_total) const {
    const double lambda = config_.l2_penalty;
    const double parent = LeafObjective(g_total, h_total, lambda);
    // Gains below this are rounding noise.
    const double min_gain = 1e-12 * std::max(1.0, h_total);
    SplitCandidate best;
    std::vector<double> g_hist;
    std::vector<double> h_hist;
    for (std::size_t f = 0; f < binned_.cols; ++f) {
      const std::size_t nb = binned_.num_bins(f);
      if (nb < 2) continue;
      g_hist.assign(nb, 0.0);
      h_hist.assign(nb, 0.0);
      const std::uint8_t* col = binned_.bins.data() + f * binned_.rows;
      for (auto r : rows) {
        g_hist[col[r]] += grad[r];
        h_hist[col[r]] += hess[r];
      }
      double gl = 0.0;
      double hl = 0.0;
      for (std::size_t b = 0; b + 1 < nb; ++b) {
        gl += g_hist[b];
        hl += h_hist[b];
        const double gr = g_total - gl;
        const double hr = h_total - hl;
        if (!(hl > 0.0) || !(hr > 0.0)) continue;
        if (hl < config_.min_child_weight || hr < config_.min_child_weight) {
          continue;
        }
        const double gain = LeafObjective(gl, hl, lambda) +
                            LeafObjective(gr, hr, lambda) - parent;
        if (gain > min_gain && gain > best.gain) {
          best.feature = static_cast<int>(f);
          best.bin = static_cast<int>(b);
          best.gain = gain;
        }
      }
    }
    return best;
  }

  const BinnedMatrix& binned_;
  const LearnerConfig& config_;
};

}  // namespace

BinnedMatrix BinMatrix(const EncodedMatrix& x, std::span<const double> weights,
                       int max_thresholds) {
  BinnedMatrix out;
  out.rows = x.rows();
  out.cols = x.cols();
  out.thresholds.resize(out.cols);
  out.bins.resize(out.rows * out.cols);
  std::vector<std::pair<double, double>> values;
  for (std::size_t c = 0; c < out.cols; ++c) {
    values.clear();
    for (std::size_t r = 0; r < out.rows; ++r) {
      if (weights[r] > 0.0) values.emplace_back(x.at(r, c), weights[r]);
    }
    std::sort(values.begin(), values.end());
    // Distinct values with their total weight.
    std::vector<double> distinct;
    std::vector<double> mass;
    for (const auto& [v, w] : values) {
      if (distinct.empty() || v != distinct.back()) {
        distinct.push_back(v);
        mass.push_back(w);
      } else {
        mass.back() += w;
      }
    }
    auto& thresholds = out.thresholds[c];
    if (distinct.size() <= static_cast<std::size_t>(max_thresholds) + 1) {
      for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
        thresholds.push_back(0.5 * (distinct[i] + distinct[i + 1]));
      }
    } else {
      const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
      double cumulative = 0.0;
      std::size_t i = 0;
      for (int q = 1; q <= max_thresholds; ++q) {
        const double target = total * q / (max_thresholds + 1);
        while (i < distinct.size() && cumulative + mass[i] < target) {
          cumulative += mass[i];
          ++i;
        }
        if (i + 1 >= distinct.size()) break;
        const double t = 0.5 * (distinct[i] + distinct[i + 1]);
        if (thresholds.empty() || t > thresholds.back()) thresholds.push_back(t);
      }
    }
    for (std::size_t r = 0; r < out.rows; ++r) {
      const double v = x.at(r, c);
      out.bins[c * out.rows + r] = static_cast<std::uint8_t>(
          std::upper_bound(thresholds.begin(), thresholds.end(), v) -
          thresholds.begin());
    }
  }
  return out;
}

TreeEnsemble TrainGbdt(const EncodedMatrix& x, std::span<const double> weights,
                       const LearnerConfig& config,
                       std::vector<double>* loss_history) {
  const auto binned = BinMatrix(x, weights, config.n_thresholds);
  const auto y = x.target();
  const std::size_t n = x.rows();

  double pos = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pos += weights[i] * y[i];
    total += weights[i];
  }
  const double base_rate = pos / total;
  TreeEnsemble ensemble;
  ensemble.base_margin = std::log(base_rate / (1.0 - base_rate));

  std::vector<std::uint32_t> active;
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i] > 0.0) active.push_back(static_cast<std::uint32_t>(i));
  }

  std::vector<double> margin(n, ensemble.base_margin);
  std::vector<double> grad(n, 0.0);
  std::vector<double> hess(n, 0.0);
  std::vector<double> row_values(n, 0.0);
  std::vector<double> probs(n);
  auto record_loss = [&]() {
    if (loss_history == nullptr) return;
    for (std::size_t i = 0; i < n; ++i) probs[i] = Sigmoid(margin[i]);
    loss_history->push_back(WeightedLogLoss(y, probs, weights));
  };
  record_loss();

  BoostedTreeBuilder builder(binned, config);
  ensemble.trees.reserve(static_cast<std::size_t>(config.n_estimators));
  for (int round = 0; round < config.n_estimators; ++round) {
    for (auto i : active) {
      const double p = Sigmoid(margin[i]);
      grad[i] = (p - y[i]) * weights[i];
      hess[i] = std::max(p * (1.0 - p), 1e-16) * weights[i];
    }
    ensemble.trees.push_back(builder.Build(active, grad, hess, row_values));
    for (auto i : active) margin[i] += row_values[i];
    // Zero-weight rows still move with the ensemble for the loss record.
    if (active.size() != n) {
      const auto& tree = ensemble.trees.back();
      for (std::size_t i = 0; i < n; ++i) {
        if (!(weights[i] > 0.0)) margin[i] += tree.Predict(x.row(i));
      }
    }
    record_loss();
  }
  return ensemble;
}

}  // namespace fairaudit::internal
