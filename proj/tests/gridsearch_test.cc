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

#include "fairaudit/gridsearch.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "fairaudit/error.h"
#include "test_util.h"

namespace fairaudit {
namespace {

using testing::ManualPartition;

TEST(ReduceToCostsTest, ZeroMultipliersAreTheIdentity) {
  Rng rng(401);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 10 + rng.Below(200);
    const std::size_t k = 2 + rng.Below(4);
    std::vector<std::uint8_t> y;
    std::vector<std::size_t> g;
    for (std::size_t i = 0; i < n; ++i) {
      y.push_back(rng.Below(2));
      g.push_back(i < k ? i : rng.Below(k));
    }
    const auto r = ReduceToCosts(y, ManualPartition(g, k), std::vector<double>(k, 0.0));
    ASSERT_EQ(r.labels, y);
    ASSERT_EQ(r.weights, std::vector<double>(n, 1.0));
  }
}

TEST(ReduceToCostsTest, StrongPressureRelabelsTheFavouredGroup) {
  // Groups A (rows 0-3) and B (rows 4-7) of equal size.
  const std::vector<std::uint8_t> y{0, 1, 0, 1, 0, 1, 0, 1};
  const auto p = ManualPartition({0, 0, 0, 0, 1, 1, 1, 1}, 2);
  const double share = 0.5;
  const std::vector<double> lambda{-2.0 * share, 2.0 * share};
  const auto r = ReduceToCosts(y, p, lambda);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(r.labels[i], 1);
  // cost1 - cost0 for A: (1 - y) - 2 - y.
  EXPECT_EQ(r.weights[0], 1.0);
  EXPECT_EQ(r.weights[1], 3.0);
  // B: (1 - y) + 2 - y, always positive.
  for (std::size_t i = 4; i < 8; ++i) EXPECT_EQ(r.labels[i], 0);
  EXPECT_EQ(r.weights[4], 3.0);
  EXPECT_EQ(r.weights[5], 1.0);
}

TEST(ReduceToCostsTest, TiesKeepTheLabelWithZeroWeight) {
  const std::vector<std::uint8_t> y{1, 0, 1, 0};
  const auto p = ManualPartition({0, 0, 1, 1}, 2);
  // lambda / share = 1 makes cost1 == cost0 for positives of group 0.
  const auto r = ReduceToCosts(y, p, std::vector<double>{0.5, -0.5});
  EXPECT_EQ(r.labels[0], 1);
  EXPECT_EQ(r.weights[0], 0.0);
  EXPECT_EQ(r.labels[1], 0);
  EXPECT_EQ(r.weights[1], 2.0);
}

TEST(ReduceToCostsTest, ConsistentPositiveRow) {
  const std::vector<std::uint8_t> y{1, 0};
  const auto r = ReduceToCosts(y, ManualPartition({0, 1}, 2), std::vector<double>{0, 0});
  EXPECT_EQ(r.labels[0], 1);
  EXPECT_EQ(r.weights[0], 1.0);
}

TEST(ReduceToCostsTest, RejectsUncenteredOrDegenerateInput) {
  const std::vector<std::uint8_t> y{1, 0, 1, 0};
  EXPECT_THROW(ReduceToCosts(y, ManualPartition({0, 0, 1, 1}, 2), std::vector<double>{0.5, 0.4}),
               ConfigError);
  EXPECT_THROW(ReduceToCosts(y, ManualPartition({0, 0, 0, 0}, 2), std::vector<double>{0, 0}),
               ConfigError);
  EXPECT_THROW(ReduceToCosts(y, ManualPartition({0, 0, 0, 0}, 1), std::vector<double>{0}),
               ConfigError);
  EXPECT_THROW(ReduceToCosts(y, ManualPartition({0, 0, 1, 1}, 2), std::vector<double>{0}),
               ConfigError);
}

TEST(CenteredMultipliersTest, SumToZeroOverRows) {
  const auto p = ManualPartition({0, 0, 0, 1, 1, 2, 2, 2, 2, 2}, 3);
  const auto m = CenteredMultipliers(p, 1, -1.3);
  EXPECT_EQ(m[1], -1.3);
  double total = 0.0;
  for (std::size_t k = 0; k < 3; ++k) total += m[k] * static_cast<double>(p.sizes[k]);
  EXPECT_NEAR(total, 0.0, 1e-12);
  EXPECT_EQ(m[0], m[2]);
}

TEST(LambdaGridTest, EvenlySpacedAndSymmetric) {
  EXPECT_EQ(LambdaGrid(1, 2.0), (std::vector<double>{0.0}));
  EXPECT_EQ(LambdaGrid(3, 2.0), (std::vector<double>{-2.0, 0.0, 2.0}));
  const auto g = LambdaGrid(10, 2.0);
  ASSERT_EQ(g.size(), 10u);
  EXPECT_EQ(g.front(), -2.0);
  EXPECT_EQ(g.back(), 2.0);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_NEAR(g[i] - g[i - 1], 4.0 / 9.0, 1e-12);
  EXPECT_THROW(LambdaGrid(0, 2.0), ConfigError);
}

LagrangianPoint Point(double violation, double stat) {
  LagrangianPoint p;
  p.violation = violation;
  p.stat_score = stat;
  return p;
}

TEST(SelectGridPointTest, FeasibleMaxStatElseMinViolation) {
  const std::vector<LagrangianPoint> pts{Point(0.2, 0.9), Point(0.04, 0.6), Point(0.01, 0.7),
                                         Point(0.05, 0.7)};
  EXPECT_EQ(SelectGridPoint(pts, 0.05), 2u);
  EXPECT_EQ(SelectGridPoint(pts, 1.0), 0u);
  EXPECT_EQ(SelectGridPoint(pts, 0.001), 2u);
  const std::vector<LagrangianPoint> tied{Point(0.3, 0.5), Point(0.3, 0.8)};
  EXPECT_EQ(SelectGridPoint(tied, 0.1), 0u);
}

GroupReport Oprs(const std::vector<double>& rates) {
  GroupReport r;
  for (std::size_t k = 0; k < rates.size(); ++k) {
    GroupRates g;
    g.label = "g" + std::to_string(k);
    g.opr = rates[k];
    r.groups.push_back(g);
  }
  return r;
}

TEST(SweptGroupsTest, AlertingGroupsOrTheLowest) {
  EXPECT_EQ(SweptGroups(Oprs({0.1, 0.6, 0.15}), 3.0), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(SweptGroups(Oprs({0.4, 0.6, 0.3}), 3.0), (std::vector<std::size_t>{2}));
  EXPECT_EQ(SweptGroups(Oprs({0.0, 0.2}), 3.0), (std::vector<std::size_t>{0}));
}

class RunGridSearchTest : public ::testing::Test {
 protected:
  void SetUp() override {
    train_ = testing::SyntheticTable(1500, 402, -2.0);
    audit_ = testing::SyntheticTable(800, 403, -2.0);
    config_.learner = LearnerConfig::Defaults(Family::kGbdt);
    config_.learner.n_estimators = 30;
    base_ = TrainPipeline(train_, SampleWeights::Uniform(train_.rows()), config_.learner);
  }
  DataTable train_;
  DataTable audit_;
  GridSearchConfig config_;
  Pipeline base_;
};

TEST_F(RunGridSearchTest, ZeroMultiplierPointReproducesTheBaseline) {
  config_.grid_size = 3;
  const auto r = RunGridSearch(base_, train_, audit_, "group", config_);
  ASSERT_EQ(r.points.size(), 3u);
  const auto& mid = r.points[1];
  EXPECT_EQ(mid.lambda, 0.0);
  EXPECT_EQ(mid.relabeled_rows, 0u);
  EXPECT_EQ(mid.evaluation.scores, base_.Scores(audit_));
}

TEST_F(RunGridSearchTest, ReportedViolationIsTheDpGap) {
  const auto r = RunGridSearch(base_, train_, audit_, "group", config_);
  ASSERT_EQ(r.points.size(), 10u);
  for (const auto& p : r.points) {
    const auto yhat = Classify(p.evaluation.scores, p.evaluation.threshold.threshold);
    const auto report = MakeGroupReport(audit_.target(), yhat, r.audit_partition);
    const auto gaps = ComputeFairnessGaps(report, FairObjectiveTag::kDemographicParity);
    ASSERT_NEAR(p.violation, gaps.dp_gap, 1e-12);
  }
  EXPECT_EQ(r.best, SelectGridPoint(r.points, config_.eta));
}

TEST_F(RunGridSearchTest, VacuousConstraintPicksTheMostAccuratePoint) {
  config_.eta = 1.0;
  const auto r = RunGridSearch(base_, train_, audit_, "group", config_);
  for (const auto& p : r.points) EXPECT_GE(r.best_point().stat_score, p.stat_score);
}

TEST_F(RunGridSearchTest, SaturatedMultipliersYieldMeasurableDegenerateModels) {
  config_.grid_size = 2;
  config_.lambda_bound = 50.0;
  const auto r = RunGridSearch(base_, train_, audit_, "color", config_);
  ASSERT_FALSE(r.points.empty());
  for (const auto& p : r.points) {
    EXPECT_TRUE(std::isfinite(p.violation));
    EXPECT_GE(p.stat_score, 0.0);
    EXPECT_LE(p.stat_score, 1.0);
  }
}

TEST_F(RunGridSearchTest, RejectsUnknownFeature) {
  EXPECT_THROW(RunGridSearch(base_, train_, audit_, "nope", config_), ConfigError);
  config_.grid_size = 0;
  EXPECT_THROW(RunGridSearch(base_, train_, audit_, "group", config_), ConfigError);
}

// The disadvantaged group's training-split OPR over a 10-point grid, from
// the strongest pressure in its favour to the strongest against.
std::vector<double> PressureCurve(std::uint64_t seed, double group_effect) {
  const auto train = testing::SyntheticTable(1500, seed, group_effect);
  const auto p = BinFeature(train, "group", CategoryGroups{});
  const std::size_t disadvantaged = group_effect < 0 ? 1 : 0;
  auto lc = LearnerConfig::Defaults(Family::kGbdt);
  lc.n_estimators = 30;
  std::vector<double> oprs;
  for (double lambda : LambdaGrid(10, 2.0)) {
    const auto r = ReduceToCosts(train.target(), p, CenteredMultipliers(p, disadvantaged, lambda));
    const auto model = TrainPipeline(train.WithTarget(r.labels), SampleWeights(r.weights), lc, true);
    const auto s = model.Scores(train);
    const auto t = BestF1Threshold(train.target(), s).threshold;
    const auto report = MakeGroupReport(train.target(), Classify(s, t), p);
    oprs.push_back(*report.groups[disadvantaged].opr);
  }
  return oprs;
}

TEST(MonotonePressureTest, DisadvantagedRateFallsAsPressureEases) {
  for (double effect : {-2.0, 2.0}) {
    for (std::uint64_t seed = 411; seed <= 415; ++seed) {
      const auto oprs = PressureCurve(seed, effect);
      int inversions = 0;
      for (std::size_t i = 1; i < oprs.size(); ++i) inversions += oprs[i] > oprs[i - 1];
      EXPECT_LE(inversions, 1) << "seed " << seed << " effect " << effect << " "
                               << ::testing::PrintToString(oprs);
    }
  }
}

}  // namespace
}  // namespace fairaudit
