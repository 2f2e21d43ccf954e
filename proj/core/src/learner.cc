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
#include <cstring>
#include <numeric>

#include "fairaudit/error.h"
#include "fairaudit/learner.h"
#include "learners_internal.h"

namespace fairaudit {
namespace {

constexpr double kProbClip = 1e-15;

void CheckFinite(const EncodedMatrix& x) {
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto row = x.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!std::isfinite(row[c])) {
        throw TrainingError("non-finite value in feature column '" +
                            x.column_names()[c] + "' (row " +
                            std::to_string(r) + ")");
      }
    }
  }
}

std::pair<double, double> ClassWeights(const EncodedMatrix& x,
                                       const SampleWeights& w) {
  double neg = 0.0;
  double pos = 0.0;
  const auto y = x.target();
  for (std::size_t i = 0; i < y.size(); ++i) {
    (y[i] ? pos : neg) += w[i];
  }
  return {neg, pos};
}

void CheckShapes(const EncodedMatrix& x, const SampleWeights& w) {
  if (x.rows() == 0) throw TrainingError("cannot train on an empty matrix");
  if (w.size() != x.rows()) {
    throw TrainingError("weight vector has " + std::to_string(w.size()) +
                        " entries for " + std::to_string(x.rows()) + " rows");
  }
}

}  // namespace

namespace internal {

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace internal

const char* ToString(Family family) {
  switch (family) {
    case Family::kGbdt:
      return "gbdt";
    case Family::kRandomForest:
      return "random_forest";
    case Family::kLogistic:
      return "logistic";
  }
  return "unknown";
}

Family ParseFamily(std::string_view name) {
  if (name == "gbdt") return Family::kGbdt;
  if (name == "random_forest") return Family::kRandomForest;
  if (name == "logistic") return Family::kLogistic;
  throw ConfigError("unsupported family '" + std::string(name) +
                    "' (expected gbdt, random_forest or logistic)");
}

LearnerConfig LearnerConfig::Defaults(Family family) {
  LearnerConfig c;
  c.family = family;
  switch (family) {
    case Family::kGbdt:
      c.n_estimators = 1000;
      break;
    case Family::kRandomForest:
      c.n_estimators = 100;
      break;
    case Family::kLogistic:
      c.n_estimators = 1;
      break;
  }
  return c;
}

void LearnerConfig::Validate() const {
  if (n_estimators < 1) throw ConfigError("n_estimators must be >= 1");
  if (max_depth < 1) throw ConfigError("max_depth must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
  if (!(l2_penalty >= 0.0)) throw ConfigError("l2_penalty must be >= 0");
  if (!(min_child_weight >= 0.0)) {
    throw ConfigError("min_child_weight must be >= 0");
  }
  if (n_thresholds < 1 || n_thresholds > 254) {
    throw ConfigError("n_thresholds must lie in [1, 254]");
  }
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be > 0");
}

SampleWeights::SampleWeights(std::vector<double> values)
    : values_(std::move(values)) {
  bool any_positive = false;
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ConfigError("sample weights must be finite and >= 0");
    }
    any_positive = any_positive || v > 0.0;
  }
  if (!any_positive) throw ConfigError("at least one sample weight must be > 0");
}

SampleWeights SampleWeights::Uniform(std::size_t rows) {
  return SampleWeights(std::vector<double>(rows, 1.0));
}

std::uint64_t SampleWeights::Digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : values_) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

double Tree::Predict(std::span<const double> row) const {
  int node = 0;
  while (nodes[static_cast<std::size_t>(node)].feature >= 0) {
    const auto& n = nodes[static_cast<std::size_t>(node)];
    node = row[static_cast<std::size_t>(n.feature)] < n.threshold ? n.left
                                                                  : n.right;
  }
  return nodes[static_cast<std::size_t>(node)].value;
}

int Tree::depth() const {
  std::vector<int> depth(nodes.size(), 0);
  int best = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.feature >= 0) {
      depth[static_cast<std::size_t>(n.left)] = depth[i] + 1;
      depth[static_cast<std::size_t>(n.right)] = depth[i] + 1;
      best = std::max(best, depth[i] + 1);
    }
  }
  return best;
}

TrainedModel Train(const EncodedMatrix& x, const SampleWeights& weights,
                   const LearnerConfig& config) {
  config.Validate();
  CheckShapes(x, weights);
  CheckFinite(x);
  const auto [neg, pos] = ClassWeights(x, weights);
  if (!(neg > 0.0) || !(pos > 0.0)) {
    throw TrainingError(
        "training data has a single class after weighting; both classes "
        "need positive total weight");
  }

  TrainingMetadata meta;
  meta.config = config;
  meta.weight_digest = weights.Digest();
  meta.rows = x.rows();
  meta.cols = x.cols();

  switch (config.family) {
    case Family::kGbdt: {
      auto ensemble =
          internal::TrainGbdt(x, weights.values(), config, &meta.loss_history);
      return TrainedModel(config.family, std::move(ensemble), std::move(meta));
    }
    case Family::kRandomForest: {
      auto ensemble = internal::TrainForest(x, weights.values(), config);
      return TrainedModel(config.family, std::move(ensemble), std::move(meta));
    }
    case Family::kLogistic: {
      auto linear = internal::TrainLogistic(x, weights.values(), config);
      return TrainedModel(config.family, std::move(linear), std::move(meta));
    }
  }
  throw ConfigError("unsupported family");
}

TrainedModel TrainOrConstant(const EncodedMatrix& x,
                             const SampleWeights& weights,
                             const LearnerConfig& config) {
  config.Validate();
  CheckShapes(x, weights);
  const auto [neg, pos] = ClassWeights(x, weights);
  if (neg > 0.0 && pos > 0.0) return Train(x, weights, config);
  TrainingMetadata meta;
  meta.config = config;
  meta.weight_digest = weights.Digest();
  meta.rows = x.rows();
  meta.cols = x.cols();
  return TrainedModel(config.family, ConstantModel{pos > 0.0 ? 1.0 : 0.0},
                      std::move(meta));
}

std::vector<double> PredictScores(const TrainedModel& model,
                                  const EncodedMatrix& x) {
  std::vector<double> scores;
  scores.reserve(x.rows());
  if (x.rows() == 0) return scores;
  if (x.cols() != model.metadata().cols) {
    throw ConfigError("matrix has " + std::to_string(x.cols()) +
                      " columns, model expects " +
                      std::to_string(model.metadata().cols));
  }
  const auto& params = model.parameters();
  if (const auto* c = std::get_if<ConstantModel>(&params)) {
    scores.assign(x.rows(), c->score);
  } else if (const auto* lin = std::get_if<LinearModel>(&params)) {
    for (std::size_t r = 0; r < x.rows(); ++r) {
      const auto row = x.row(r);
      double z = lin->intercept;
      for (std::size_t c = 0; c < row.size(); ++c) {
        z += lin->coefficients[c] * row[c];
      }
      scores.push_back(internal::Sigmoid(z));
    }
  } else {
    const auto& ensemble = std::get<TreeEnsemble>(params);
    const bool boosted = model.family() == Family::kGbdt;
    for (std::size_t r = 0; r < x.rows(); ++r) {
      const auto row = x.row(r);
      double total = boosted ? ensemble.base_margin : 0.0;
      for (const auto& tree : ensemble.trees) total += tree.Predict(row);
      scores.push_back(boosted ? internal::Sigmoid(total)
                               : total / static_cast<double>(
                                             ensemble.trees.size()));
    }
  }
  return scores;
}

std::vector<std::uint8_t> Classify(std::span<const double> scores,
                                   double threshold) {
  std::vector<std::uint8_t> out;
  out.reserve(scores.size());
  for (double s : scores) out.push_back(s >= threshold ? 1 : 0);
  return out;
}

double WeightedLogLoss(std::span<const std::uint8_t> y,
                       std::span<const double> scores,
                       std::span<const double> weights) {
  double total = 0.0;
  double weight = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double p = std::clamp(scores[i], kProbClip, 1.0 - kProbClip);
    total -= weights[i] * (y[i] ? std::log(p) : std::log1p(-p));
    weight += weights[i];
  }
  return weight > 0.0 ? total / weight : 0.0;
}

EncodingMode ModeFor(Family family) {
  return family == Family::kLogistic ? EncodingMode::kLinear
                                     : EncodingMode::kTree;
}

std::vector<double> Pipeline::Scores(const DataTable& table) const {
  return PredictScores(model, encoder.Transform(table));
}

Pipeline TrainPipeline(const DataTable& train, const SampleWeights& weights,
                       const LearnerConfig& config, bool allow_constant) {
  Pipeline p;
  p.encoder = Encoder::Fit(train, ModeFor(config.family));
  const auto x = p.encoder.Transform(train);
  p.model = allow_constant ? TrainOrConstant(x, weights, config)
                           : Train(x, weights, config);
  return p;
}

}  // namespace fairaudit
