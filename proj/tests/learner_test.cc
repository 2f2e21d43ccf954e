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

#include "fairaudit/learner.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fairaudit/error.h"
#include "fairaudit/metrics.h"
#include "oracles.h"
#include "test_util.h"

namespace fairaudit {
namespace {

LearnerConfig Small(Family family) {
  auto c = LearnerConfig::Defaults(family);
  c.n_estimators = 40;
  c.seed = 11;
  return c;
}

class DuplicationTest : public ::testing::TestWithParam<Family> {};

TEST_P(DuplicationTest, IntegerWeightsMatchDuplicatedRows) {
  const auto table = testing::SyntheticTable(500, 21);
  const auto x = Encode(table, ModeFor(GetParam()));
  Rng rng(5);
  std::vector<int> counts;
  std::vector<double> w;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    counts.push_back(static_cast<int>(rng.Below(4)));
    w.push_back(counts.back());
  }
  const auto expanded = testing::DuplicateRows(x, counts);
  const auto config = Small(GetParam());
  const auto weighted = Train(x, SampleWeights(w), config);
  const auto duplicated = Train(expanded, SampleWeights::Uniform(expanded.rows()), config);
  const auto a = PredictScores(weighted, x);
  const auto b = PredictScores(duplicated, x);
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_NEAR(a[i], b[i], 1e-9) << i;
}

INSTANTIATE_TEST_SUITE_P(Families, DuplicationTest,
                         ::testing::Values(Family::kGbdt, Family::kLogistic),
                         [](const auto& info) { return std::string(ToString(info.param)); });

class ScalingTest : public ::testing::TestWithParam<Family> {};

TEST_P(ScalingTest, ScalingWeightsAndPenaltyTogetherLeavesScores) {
  const auto table = testing::SyntheticTable(400, 22);
  const auto x = Encode(table, ModeFor(GetParam()));
  auto config = Small(GetParam());
  const auto base = PredictScores(Train(x, SampleWeights::Uniform(x.rows()), config), x);
  const double c = 3.5;
  config.l2_penalty *= c;
  const auto scaled = PredictScores(
      Train(x, SampleWeights(std::vector<double>(x.rows(), c)), config), x);
  for (std::size_t i = 0; i < base.size(); ++i) ASSERT_NEAR(base[i], scaled[i], 1e-6);
}

INSTANTIATE_TEST_SUITE_P(Families, ScalingTest,
                         ::testing::Values(Family::kGbdt, Family::kLogistic),
                         [](const auto& info) { return std::string(ToString(info.param)); });

TEST(LearnerTest, FlippedLabelsReverseTheRanking) {
  const auto train = testing::SyntheticTable(600, 23);
  const auto test = testing::SyntheticTable(300, 24);
  const auto config = Small(Family::kLogistic);
  std::vector<std::uint8_t> flipped(train.target().begin(), train.target().end());
  for (auto& v : flipped) v = 1 - v;
  const auto p = TrainPipeline(train, SampleWeights::Uniform(train.rows()), config);
  const auto q = TrainPipeline(train.WithTarget(flipped), SampleWeights::Uniform(train.rows()), config);
  const double auc = RocAuc(test.target(), p.Scores(test));
  const double auc_flip = RocAuc(test.target(), q.Scores(test));
  EXPECT_NEAR(auc_flip, 1.0 - auc, 1e-9);
}

TEST(LearnerTest, ScoresAreProbabilitiesForEveryFamily) {
  const auto t = testing::SyntheticTable(300, 25);
  for (auto family : {Family::kGbdt, Family::kRandomForest, Family::kLogistic}) {
    const auto p = TrainPipeline(t, SampleWeights::Uniform(t.rows()), Small(family));
    const auto s = p.Scores(t);
    ASSERT_EQ(s.size(), t.rows());
    for (double v : s) {
      ASSERT_TRUE(std::isfinite(v));
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
    }
    EXPECT_GT(RocAuc(t.target(), s), 0.7) << ToString(family);
  }
}

TEST(LearnerTest, TreesRespectTheDepthLimit) {
  const auto t = testing::SyntheticTable(300, 26);
  for (auto family : {Family::kGbdt, Family::kRandomForest}) {
    const auto m = Train(Encode(t, ModeFor(family)), SampleWeights::Uniform(t.rows()), Small(family));
    for (const auto& tree : std::get<TreeEnsemble>(m.parameters()).trees) {
      ASSERT_LE(tree.depth(), 3);
    }
  }
}

TEST(LearnerTest, BoostingLossNeverIncreases) {
  const auto t = testing::SyntheticTable(500, 27);
  auto config = Small(Family::kGbdt);
  config.n_estimators = 100;
  const auto m = Train(Encode(t, EncodingMode::kTree), SampleWeights::Uniform(t.rows()), config);
  const auto& h = m.metadata().loss_history;
  ASSERT_EQ(h.size(), 101u);
  for (std::size_t i = 1; i < h.size(); ++i) ASSERT_LE(h[i], h[i - 1] + 1e-15) << i;
}

TEST(LearnerTest, LogisticReachesTheGradientTolerance) {
  const auto t = testing::SyntheticTable(500, 28);
  const auto config = Small(Family::kLogistic);
  const auto m = Train(Encode(t, EncodingMode::kLinear), SampleWeights::Uniform(t.rows()), config);
  const auto& lin = std::get<LinearModel>(m.parameters());
  EXPECT_LE(lin.gradient_norm, config.tolerance);
  EXPECT_LE(lin.iterations, config.max_iterations);
}

TEST(LearnerTest, TrainingIsDeterministic) {
  const auto t = testing::SyntheticTable(300, 29);
  for (auto family : {Family::kGbdt, Family::kRandomForest, Family::kLogistic}) {
    const auto x = Encode(t, ModeFor(family));
    const auto a = Train(x, SampleWeights::Uniform(x.rows()), Small(family));
    const auto b = Train(x, SampleWeights::Uniform(x.rows()), Small(family));
    EXPECT_EQ(PredictScores(a, x), PredictScores(b, x));
    EXPECT_EQ(a.metadata().weight_digest, b.metadata().weight_digest);
  }
}

TEST(LearnerTest, ForestSeedChangesTheModel) {
  const auto t = testing::SyntheticTable(300, 30);
  const auto x = Encode(t, EncodingMode::kTree);
  auto c = Small(Family::kRandomForest);
  const auto a = PredictScores(Train(x, SampleWeights::Uniform(x.rows()), c), x);
  c.seed = 12;
  const auto b = PredictScores(Train(x, SampleWeights::Uniform(x.rows()), c), x);
  EXPECT_NE(a, b);
}

TEST(LearnerTest, SingleClassIsATrainingError) {
  const auto t = testing::SyntheticTable(100, 31);
  const auto zeros = t.WithTarget(std::vector<std::uint8_t>(t.rows(), 0));
  const auto x = Encode(zeros, EncodingMode::kTree);
  EXPECT_THROW(Train(x, SampleWeights::Uniform(x.rows()), Small(Family::kGbdt)), TrainingError);

  // Positives present but carrying zero weight count as missing.
  const auto y = Encode(t, EncodingMode::kTree);
  std::vector<double> w(y.rows(), 1.0);
  for (std::size_t i = 0; i < w.size(); ++i) if (y.target()[i]) w[i] = 0.0;
  EXPECT_THROW(Train(y, SampleWeights(w), Small(Family::kGbdt)), TrainingError);
}

TEST(LearnerTest, ConstantFallbackScoresTheOnlyClass) {
  const auto t = testing::SyntheticTable(100, 32);
  const auto x = Encode(t.WithTarget(std::vector<std::uint8_t>(t.rows(), 0)), EncodingMode::kTree);
  const auto m = TrainOrConstant(x, SampleWeights::Uniform(x.rows()), Small(Family::kGbdt));
  ASSERT_TRUE(m.is_constant());
  for (double s : PredictScores(m, x)) EXPECT_LT(s, 0.5);

  const auto ones = x.WithTarget(std::vector<std::uint8_t>(x.rows(), 1));
  const auto m1 = TrainOrConstant(ones, SampleWeights::Uniform(x.rows()), Small(Family::kGbdt));
  for (double s : PredictScores(m1, ones)) EXPECT_EQ(s, 1.0);
}

TEST(LearnerTest, NonFiniteFeatureNamesTheColumn) {
  EncodedMatrix x(2, 2, {0.0, 1.0, std::numeric_limits<double>::quiet_NaN(), 0.0},
                  {0, 1}, {"alpha", "beta"});
  try {
    Train(x, SampleWeights::Uniform(2), Small(Family::kLogistic));
    FAIL() << "expected TrainingError";
  } catch (const TrainingError& e) {
    EXPECT_NE(std::string(e.what()).find("alpha"), std::string::npos);
  }
}

TEST(LearnerTest, ShapeErrors) {
  const auto t = testing::SyntheticTable(100, 33);
  const auto x = Encode(t, EncodingMode::kTree);
  EXPECT_THROW(Train(x, SampleWeights::Uniform(3), Small(Family::kGbdt)), TrainingError);
  EXPECT_THROW(Train(EncodedMatrix(), SampleWeights(), Small(Family::kGbdt)), Error);
  const auto m = Train(x, SampleWeights::Uniform(x.rows()), Small(Family::kGbdt));
  EXPECT_THROW(PredictScores(m, Encode(t, EncodingMode::kLinear)), ConfigError);
  EXPECT_TRUE(PredictScores(m, EncodedMatrix(0, 4, {}, {})).empty());
}

TEST(LearnerTest, FamilyNames) {
  EXPECT_EQ(ParseFamily("gbdt"), Family::kGbdt);
  EXPECT_EQ(ParseFamily("random_forest"), Family::kRandomForest);
  EXPECT_EQ(ParseFamily("logistic"), Family::kLogistic);
  EXPECT_THROW(ParseFamily("neural_network"), ConfigError);
  EXPECT_THROW(ParseFamily("mlp"), ConfigError);
}

TEST(LearnerTest, WeightsAndConfigAreValidated) {
  EXPECT_THROW(SampleWeights({1.0, -1.0}), ConfigError);
  EXPECT_THROW(SampleWeights({0.0, 0.0}), ConfigError);
  EXPECT_THROW(SampleWeights({std::numeric_limits<double>::infinity()}), ConfigError);
  auto c = LearnerConfig::Defaults(Family::kGbdt);
  c.max_depth = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = LearnerConfig::Defaults(Family::kGbdt);
  c.learning_rate = 0.0;
  EXPECT_THROW(c.Validate(), ConfigError);
}

TEST(ClassifyTest, ThresholdIsInclusive) {
  const std::vector<double> s{0.2, 0.5, 0.9};
  EXPECT_EQ(Classify(s, 0.5), (std::vector<std::uint8_t>{0, 1, 1}));
  EXPECT_EQ(Classify(s, 0.0), (std::vector<std::uint8_t>{1, 1, 1}));
  EXPECT_EQ(Classify(s, 0.95), (std::vector<std::uint8_t>{0, 0, 0}));
}

}  // namespace
}  // namespace fairaudit
