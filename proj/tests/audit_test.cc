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

#include "fairaudit/audit.h"

#include <gtest/gtest.h>

#include "fairaudit/error.h"
#include "test_util.h"

namespace fairaudit {
namespace {

using testing::AddRows;
using testing::ManualPartition;

struct Fixture {
  GroupReport report;
  GroupPartition partition;
};

// Group k holds sizes[k] rows of which positives[k] are predicted 1.
Fixture Rates(const std::vector<std::size_t>& positives,
              const std::vector<std::size_t>& sizes) {
  std::vector<std::uint8_t> y, yhat;
  std::vector<std::size_t> g;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    AddRows(y, yhat, g, positives[k], 1, 1, k);
    AddRows(y, yhat, g, sizes[k] - positives[k], 0, 0, k);
  }
  Fixture f;
  f.partition = ManualPartition(g, sizes.size());
  f.report = MakeGroupReport(y, yhat, f.partition);
  return f;
}

TEST(AlertTest, TwelveAgainstSixtySixTrips) {
  const auto f = Rates({12, 66}, {100, 100});
  const auto alerts = AlertsForReport(f.report, f.partition, 3.0, 50);
  ASSERT_EQ(alerts.size(), 1u);
  EXPECT_EQ(alerts[0].disadvantaged_group, 0u);
  EXPECT_EQ(alerts[0].advantaged_group, 1u);
  EXPECT_NEAR(*alerts[0].ratio, 5.5, 1e-12);
  EXPECT_NEAR(alerts[0].disadvantaged_opr, 0.12, 1e-12);
  EXPECT_EQ(alerts[0].disadvantaged, "g0");
  EXPECT_EQ(alerts[0].advantaged_size, 100u);
  EXPECT_TRUE(AlertsForReport(f.report, f.partition, 6.0, 50).empty());
}

TEST(AlertTest, EqualRatesGiveNoAlert) {
  const auto f = Rates({30, 60, 15}, {100, 200, 50});
  EXPECT_TRUE(AlertsForReport(f.report, f.partition, 3.0, 50).empty());
  EXPECT_TRUE(AlertsForReport(f.report, f.partition, 1.0001, 1).empty());
}

TEST(AlertTest, ZeroOprIsAnInfiniteAlert) {
  const auto f = Rates({0, 40}, {60, 100});
  const auto alerts = AlertsForReport(f.report, f.partition, 3.0, 50);
  ASSERT_EQ(alerts.size(), 1u);
  EXPECT_TRUE(alerts[0].infinite());
}

TEST(AlertTest, NothingSelectedAnywhereIsNotAnAlert) {
  const auto f = Rates({0, 0}, {60, 100});
  EXPECT_TRUE(AlertsForReport(f.report, f.partition, 3.0, 50).empty());
}

TEST(AlertTest, SmallGroupsAreIgnored) {
  const auto f = Rates({0, 60, 10}, {10, 100, 60});
  const auto alerts = AlertsForReport(f.report, f.partition, 3.0, 50);
  ASSERT_EQ(alerts.size(), 1u);
  EXPECT_EQ(alerts[0].disadvantaged_group, 2u);
  for (const auto& a : alerts) {
    EXPECT_GE(a.disadvantaged_size, 50u);
    EXPECT_GE(a.advantaged_size, 50u);
  }
}

TEST(AlertTest, SmallCategoryIsMergedBeforeScanning) {
  Column c{"c", ColumnKind::kCategorical, {}, {}, {"tiny", "big"}};
  std::vector<std::uint8_t> y, yhat;
  for (int i = 0; i < 10; ++i) { c.codes.push_back(0); y.push_back(0); yhat.push_back(0); }
  for (int i = 0; i < 200; ++i) {
    c.codes.push_back(1);
    y.push_back(i % 2);
    yhat.push_back(i % 5 < 3 ? 1 : 0);
  }
  const DataTable t({c}, y);
  const auto result = AuditPredictions(t, yhat, 0.5, AuditConfig{});
  EXPECT_TRUE(result.alerts.empty());
}

TEST(AlertTest, LoweringTheThresholdNeverRemovesAlerts) {
  Rng rng(201);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 2 + rng.Below(5);
    std::vector<std::size_t> pos, sizes;
    for (std::size_t g = 0; g < k; ++g) {
      sizes.push_back(20 + rng.Below(100));
      pos.push_back(rng.Below(sizes.back() + 1));
    }
    const auto f = Rates(pos, sizes);
    std::size_t previous = 0;
    for (double r : {8.0, 5.0, 3.0, 2.0, 1.5, 1.1}) {
      const auto alerts = AlertsForReport(f.report, f.partition, r, 50);
      ASSERT_GE(alerts.size(), previous);
      for (const auto& a : alerts) {
        ASSERT_GE(a.disadvantaged_size, 50u);
        if (!a.infinite()) {
          ASSERT_GE(*a.ratio, r);
        }
      }
      previous = alerts.size();
    }
  }
}

TEST(AlertTest, SortingPutsInfiniteFirstThenDescendingRatio) {
  std::vector<Alert> alerts(4);
  alerts[0].feature = "b"; alerts[0].ratio = 3.5;
  alerts[1].feature = "a"; alerts[1].ratio = 7.0;
  alerts[2].feature = "c"; alerts[2].ratio = std::nullopt;
  alerts[3].feature = "a"; alerts[3].ratio = 3.5;
  SortAlerts(alerts);
  EXPECT_EQ(alerts[0].feature, "c");
  EXPECT_EQ(alerts[1].feature, "a");
  EXPECT_EQ(*alerts[1].ratio, 7.0);
  EXPECT_EQ(alerts[2].feature, "a");
  EXPECT_EQ(alerts[3].feature, "b");
}

TEST(AuditTest, ScansEveryFeatureDeterministically) {
  const auto train = testing::SyntheticTable(1500, 202, -2.0);
  const auto test = testing::SyntheticTable(800, 203, -2.0);
  auto lc = LearnerConfig::Defaults(Family::kGbdt);
  lc.n_estimators = 30;
  const auto model = TrainPipeline(train, SampleWeights::Uniform(train.rows()), lc);
  AuditConfig config;
  config.ratio_threshold = 1.5;
  const auto a = RunAudit(model, test, config);
  const auto b = RunAudit(model, test, config);
  ASSERT_EQ(a.scans.size(), 4u);
  ASSERT_EQ(a.alerts.size(), b.alerts.size());
  for (std::size_t i = 0; i < a.alerts.size(); ++i) {
    EXPECT_EQ(a.alerts[i].feature, b.alerts[i].feature);
    EXPECT_EQ(a.alerts[i].ratio, b.alerts[i].ratio);
  }
  EXPECT_EQ(a.threshold, BestF1Threshold(test.target(), model.Scores(test)).threshold);
  const bool group_alert = std::any_of(a.alerts.begin(), a.alerts.end(),
                                       [](const Alert& x) { return x.feature == "group"; });
  EXPECT_TRUE(group_alert);

  config.features = {"group"};
  config.fixed_threshold = 0.5;
  const auto only = RunAudit(model, test, config);
  EXPECT_EQ(only.scans.size(), 1u);
  EXPECT_EQ(only.threshold, 0.5);
  EXPECT_EQ(DetectAlerts(model, test, config).size(), only.alerts.size());
}

TEST(AuditTest, ConfigIsValidated) {
  AuditConfig c;
  c.ratio_threshold = 1.0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = AuditConfig{};
  c.min_group_size = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = AuditConfig{};
  c.fixed_threshold = 1.5;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = AuditConfig{};
  c.features = {"missing"};
  const auto t = testing::SyntheticTable(100, 204);
  EXPECT_THROW(AuditPredictions(t, std::vector<std::uint8_t>(100, 0), 0.5, c), ConfigError);
}

TEST(EvaluateTest, FlagsDegenerateModels) {
  const auto t = testing::SyntheticTable(300, 205);
  const auto p = BinFeature(t, "group", CategoryGroups{});
  const auto e = EvaluateScores(std::vector<double>(t.rows(), 0.7), t, p);
  EXPECT_TRUE(e.degenerate);
  EXPECT_DOUBLE_EQ(e.roc_auc, 0.5);
  std::vector<double> s(t.target().begin(), t.target().end());
  const auto perfect = EvaluateScores(s, t, p);
  EXPECT_FALSE(perfect.degenerate);
  EXPECT_DOUBLE_EQ(perfect.roc_auc, 1.0);
}

}  // namespace
}  // namespace fairaudit
