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

#include "fairaudit/benchmark.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fairaudit/error.h"
#include "test_util.h"

namespace fairaudit {
namespace {

namespace fs = std::filesystem;

BenchmarkCell CellWithGaps(Family family, const std::string& feature, Method method,
                           GapArray gaps) {
  BenchmarkCell c;
  c.family = family;
  c.feature = feature;
  c.method = method;
  c.gaps = gaps;
  return c;
}

TEST(MakeCellTest, GapsMatchAnIndependentRecomputation) {
  const auto t = testing::SyntheticTable(1200, 501, -1.5);
  Rng rng(502);
  std::vector<double> s;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    s.push_back(std::min(1.0, std::max(0.0, 0.35 * t.target()[i] + 0.65 * rng.Uniform())));
  }
  const auto p = BinFeature(t, "color", CategoryGroups{});
  const auto cell = MakeCell(Family::kLogistic, "color", Method::kFairDream, t.target(), s, 0.5, p);
  ASSERT_EQ(cell.groups.size(), 3u);
  EXPECT_EQ(cell.gaps, RecomputeGaps(cell));

  // From scratch: per-group members, rates and AUCs.
  const auto members = p.Members();
  std::vector<double> opr, tpr, fpr, auc, ap;
  std::vector<CalibrationCurve> curves;
  for (const auto& rows : members) {
    std::vector<std::uint8_t> y;
    std::vector<double> sg;
    for (auto r : rows) {
      y.push_back(t.target()[r]);
      sg.push_back(s[r]);
    }
    const auto c = Confusion(y, Classify(sg, 0.5));
    opr.push_back(*c.OverallPositiveRate());
    tpr.push_back(*c.TruePositiveRate());
    fpr.push_back(*c.FalsePositiveRate());
    auc.push_back(RocAuc(y, sg));
    ap.push_back(PrAuc(y, sg));
    curves.push_back(MakeCalibrationCurve(y, sg));
  }
  auto spread = [](const std::vector<double>& v) {
    return *std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end());
  };
  double calibration = 0.0;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      calibration = std::max(calibration, CalibrationGapArea(curves[i], curves[j]));
    }
  }
  EXPECT_NEAR(*cell.gaps[0], spread(opr), 1e-12);
  EXPECT_NEAR(*cell.gaps[1], spread(fpr), 1e-12);
  EXPECT_NEAR(*cell.gaps[2], spread(tpr), 1e-12);
  EXPECT_NEAR(*cell.gaps[3], spread(auc), 1e-12);
  EXPECT_NEAR(*cell.gaps[4], spread(ap), 1e-12);
  EXPECT_NEAR(*cell.gaps[5], calibration, 1e-12);
  EXPECT_NEAR(cell.roc_auc, RocAuc(t.target(), s), 1e-12);
}

TEST(CompareMethodsTest, StrictlyLargerGapScores) {
  const GapArray a{0.5, 0.1, 0.2, std::nullopt, 0.3, 0.3};
  const GapArray b{0.4, 0.1, 0.3, 0.2, 0.1, 0.3};
  const std::vector<BenchmarkCell> cells{
      CellWithGaps(Family::kGbdt, "age", Method::kGridSearch, a),
      CellWithGaps(Family::kGbdt, "age", Method::kFairDream, b),
      // Unpaired cell: not compared.
      CellWithGaps(Family::kLogistic, "sex", Method::kGridSearch, a)};
  const auto t = CompareMethods(cells, Method::kGridSearch, Method::kFairDream);
  EXPECT_EQ(t.comparisons, 1u);
  EXPECT_EQ(t.first_points, (std::array<int, 6>{1, 0, 0, 0, 1, 0}));
  EXPECT_EQ(t.second_points, (std::array<int, 6>{0, 0, 1, 0, 0, 0}));
  EXPECT_EQ(t.first_total(), 2);
  EXPECT_EQ(t.second_total(), 1);

  const std::vector<BenchmarkCell> same{CellWithGaps(Family::kGbdt, "age", Method::kBaseline, a),
                                        CellWithGaps(Family::kGbdt, "age", Method::kFairDream, a)};
  const auto tie = CompareMethods(same, Method::kBaseline, Method::kFairDream);
  EXPECT_EQ(tie.first_total(), 0);
  EXPECT_EQ(tie.second_total(), 0);
}

void WriteStale(const fs::path& dir) {
  fs::create_directories(dir / "cells");
  std::ofstream(dir / "cells" / "gbdt__old__baseline.csv") << "stale";
  fs::create_directories(dir / "calibration");
  std::ofstream(dir / "calibration" / "gbdt__old__baseline.csv") << "stale";
  std::ofstream(dir / "max_gap_baseline_vs_fairdream.csv") << "stale";
}

BenchmarkConfig SmallConfig() {
  BenchmarkConfig c;
  auto lc = LearnerConfig::Defaults(Family::kLogistic);
  c.learners = {lc};
  c.subsample = 0;
  c.fairdream_candidates = 2;
  c.grid_size = 3;
  c.audit.ratio_threshold = 1.5;
  return c;
}

TEST(RunBenchmarkTest, OnlyAlertingFeaturesProduceCells) {
  const auto t = testing::SyntheticTable(3000, 503, -2.5);
  const auto r = RunBenchmark(t, SmallConfig());
  EXPECT_EQ(r.train_rows + r.test_rows, 3000u);
  std::set<std::string> with_cells;
  for (const auto& c : r.cells) with_cells.insert(c.feature);
  EXPECT_TRUE(with_cells.count("group"));
  EXPECT_EQ(r.cells.size(), 3 * with_cells.size());
  for (const auto& s : r.skipped) EXPECT_FALSE(with_cells.count(s.feature));
  EXPECT_EQ(with_cells.size() + r.skipped.size(), 4u);
  EXPECT_EQ(r.gridsearch_vs_fairdream.comparisons, with_cells.size());
  for (const auto& c : r.cells) EXPECT_EQ(c.gaps, RecomputeGaps(c));
}

TEST(RunBenchmarkTest, NoAlertMeansNoCorrections) {
  const auto t = testing::SyntheticTable(2000, 504, 0.0);
  auto c = SmallConfig();
  c.audit.ratio_threshold = 50.0;
  c.features = {"group", "color"};
  const auto r = RunBenchmark(t, c);
  EXPECT_TRUE(r.cells.empty());
  EXPECT_EQ(r.skipped.size(), 2u);
  EXPECT_EQ(r.gridsearch_vs_fairdream.comparisons, 0u);

  const auto dir = testing::FreshDir("bench_empty");
  EmitReport(r, dir);
  EXPECT_TRUE(fs::exists(dir / "summary.json"));
  EXPECT_NE(testing::ReadFile(dir / "summary.txt").find("zero corrections"), std::string::npos);
}

TEST(EmitReportTest, RerunsAreByteIdenticalAndStaleFilesGo) {
  const auto t = testing::SyntheticTable(3000, 505, -2.5);
  const auto r = RunBenchmark(t, SmallConfig());
  ASSERT_FALSE(r.cells.empty());
  const auto dir = testing::FreshDir("bench_emit");
  EmitReport(r, dir);
  std::map<std::string, std::string> first;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) first[fs::relative(e.path(), dir).string()] = testing::ReadFile(e.path());
  }
  EXPECT_TRUE(first.count("summary.json"));
  EXPECT_TRUE(first.count("max_gap_gridsearch_vs_fairdream.csv"));
  EXPECT_TRUE(first.count("cells/logistic__group__fairdream.csv"));
  EXPECT_TRUE(first.count("calibration/logistic__group__baseline.csv"));
  EXPECT_TRUE(first.count("bars/logistic__group.csv"));
  // Interval labels carry commas; every bars row must still have 5 fields.
  for (const auto& [name, body] : first) {
    if (name.rfind("bars/", 0) != 0) continue;
    std::istringstream lines(body);
    for (std::string line; std::getline(lines, line);) {
      int separators = 0;
      bool quoted = false;
      for (char ch : line) {
        if (ch == '"') quoted = !quoted;
        if (ch == ',' && !quoted) ++separators;
      }
      EXPECT_EQ(separators, 4) << name << ": " << line;
    }
  }

  WriteStale(dir);
  EmitReport(RunBenchmark(t, SmallConfig()), dir);
  std::map<std::string, std::string> second;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) second[fs::relative(e.path(), dir).string()] = testing::ReadFile(e.path());
  }
  EXPECT_EQ(first, second);

  // Files the report does not own are left alone.
  std::ofstream(dir / "notes.txt") << "mine";
  EmitReport(r, dir);
  EXPECT_EQ(testing::ReadFile(dir / "notes.txt"), "mine");
}

TEST(BenchmarkConfigTest, DeskScaleAndValidation) {
  const auto c = BenchmarkConfig::DeskScale();
  ASSERT_EQ(c.learners.size(), 3u);
  EXPECT_EQ(c.learners[0].n_estimators, 200);
  EXPECT_EQ(c.learners[1].family, Family::kRandomForest);
  EXPECT_EQ(c.subsample, 10000u);
  auto bad = c;
  bad.learners.clear();
  EXPECT_THROW(bad.Validate(), ConfigError);
  bad = c;
  bad.test_fraction = 1.0;
  EXPECT_THROW(bad.Validate(), ConfigError);
}

}  // namespace
}  // namespace fairaudit
