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

#ifndef FAIRAUDIT_LEARNER_H_
#define FAIRAUDIT_LEARNER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fairaudit/encode.h"
#include "fairaudit/table.h"

namespace fairaudit {

enum class Family { kGbdt, kRandomForest, kLogistic };

const char* ToString(Family family);
// Accepts "gbdt", "random_forest", "logistic". Other names, including the
// neural-network family, raise ConfigError("unsupported family ...").
Family ParseFamily(std::string_view name);

struct LearnerConfig {
  Family family = Family::kGbdt;
  int n_estimators = 1000;
  // Number of split levels per tree.
  int max_depth = 3;
  // Shrinkage applied to every boosted tree.
  double learning_rate = 0.1;
  // L2 penalty: leaf-value regularization (gbdt) or coefficient penalty
  // (logistic). Unused by the random forest.
  double l2_penalty = 1.0;
  // Minimum weighted curvature in each child of a boosted split.
  double min_child_weight = 0.0;
  // Candidate split thresholds per numeric feature.
  int n_thresholds = 32;
  // Logistic solver.
  int max_iterations = 100;
  double tolerance = 1e-8;
  std::uint64_t seed = 0;

  static LearnerConfig Defaults(Family family);
  void Validate() const;
};

// Per-row training weights: all >= 0, at least one > 0.
class SampleWeights {
 public:
  SampleWeights() = default;
  explicit SampleWeights(std::vector<double> values);
  static SampleWeights Uniform(std::size_t rows);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  // FNV-1a over the raw bytes.
  std::uint64_t Digest() const;

 private:
  std::vector<double> values_;
};

// Split rule: go left iff x < threshold. A node with feature < 0 is a leaf.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
};

struct Tree {
  std::vector<TreeNode> nodes;
  double Predict(std::span<const double> row) const;
  int depth() const;
};

// Boosted trees (margins summed, then sigmoid) or forest (leaf votes in
// {0,1} averaged).
struct TreeEnsemble {
  std::vector<Tree> trees;
  double base_margin = 0.0;
};

struct LinearModel {
  std::vector<double> coefficients;
  double intercept = 0.0;
  int iterations = 0;
  double gradient_norm = 0.0;
};

// Fixed score for every row. Used for degenerate relabeled training sets.
struct ConstantModel {
  double score = 0.0;
};

struct TrainingMetadata {
  LearnerConfig config;
  std::uint64_t weight_digest = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  // Weighted log-loss on the training rows after each boosting round
  // (index 0 = base margin only). Empty for other families.
  std::vector<double> loss_history;
};

class TrainedModel {
 public:
  using Parameters = std::variant<TreeEnsemble, LinearModel, ConstantModel>;

  TrainedModel() = default;
  TrainedModel(Family family, Parameters parameters, TrainingMetadata metadata)
      : family_(family),
        parameters_(std::move(parameters)),
        metadata_(std::move(metadata)) {}

  Family family() const { return family_; }
  const Parameters& parameters() const { return parameters_; }
  const TrainingMetadata& metadata() const { return metadata_; }
  bool is_constant() const {
    return std::holds_alternative<ConstantModel>(parameters_);
  }

 private:
  Family family_ = Family::kGbdt;
  Parameters parameters_;
  TrainingMetadata metadata_;
};

// Fits a weighted binary classifier. Requires both classes with positive
// total weight; throws TrainingError otherwise or on non-finite features.
TrainedModel Train(const EncodedMatrix& x, const SampleWeights& weights,
                   const LearnerConfig& config);

// Like Train, but a single-class weighted set yields a ConstantModel scoring
// that class instead of throwing.
TrainedModel TrainOrConstant(const EncodedMatrix& x,
                             const SampleWeights& weights,
                             const LearnerConfig& config);

// Scores in [0,1], one per row. Throws ConfigError on a column mismatch.
std::vector<double> PredictScores(const TrainedModel& model,
                                  const EncodedMatrix& x);

// 1 iff score >= threshold.
std::vector<std::uint8_t> Classify(std::span<const double> scores,
                                   double threshold);

// Weighted mean log-loss of probabilities (clipped away from 0 and 1).
double WeightedLogLoss(std::span<const std::uint8_t> y,
                       std::span<const double> scores,
                       std::span<const double> weights);

EncodingMode ModeFor(Family family);

// Encoder + model: scores DataTables directly.
struct Pipeline {
  Encoder encoder;
  TrainedModel model;

  std::vector<double> Scores(const DataTable& table) const;
};

Pipeline TrainPipeline(const DataTable& train, const SampleWeights& weights,
                       const LearnerConfig& config, bool allow_constant = false);

}  // namespace fairaudit

#endif  // FAIRAUDIT_LEARNER_H_
