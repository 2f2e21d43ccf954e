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

#ifndef FAIRAUDIT_BENCHMARK_H_
#define FAIRAUDIT_BENCHMARK_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairaudit/audit.h"
#include "fairaudit/fairdream.h"
#include "fairaudit/gridsearch.h"
#include "fairaudit/learner.h"
#include "fairaudit/metrics.h"

namespace fairaudit {

enum class Method { kBaseline, kFairDream, kGridSearch };
const char* ToString(Method method);

// Gap columns, in report order.
enum class GapMetric { kOpr, kFpr, kTpr, kRocAuc, kPrAuc, kCalibration };
inline constexpr std::size_t kNumGapMetrics = 6;
inline constexpr std::array<GapMetric, kNumGapMetrics> kAllGapMetrics = {
    GapMetric::kOpr,   GapMetric::kFpr,   GapMetric::kTpr,
    GapMetric::kRocAuc, GapMetric::kPrAuc, GapMetric::kCalibration};
const char* ToString(GapMetric metric);

using GapArray = std::array<std::optional<double>, kNumGapMetrics>;

struct GroupValues {
  std::string label;
  std::size_t size = 0;
  std::optional<double> opr;
  std::optional<double> fpr;
  std::optional<double> tpr;
  std::optional<double> roc_auc;
  std::optional<double> pr_auc;
  CalibrationCurve calibration;
};

struct BenchmarkCell {
  Family family = Family::kGbdt;
  std::string feature;
  Method method = Method::kBaseline;
  double threshold = 0.5;
  double roc_auc = 0.5;
  std::vector<GroupValues> groups;
  // max - min across groups; calibration is the largest pairwise gap area.
  GapArray gaps;
};

// Per-group values and gaps of one scored model.
BenchmarkCell MakeCell(Family family, const std::string& feature,
                       Method method, std::span<const std::uint8_t> y,
                       std::span<const double> scores, double threshold,
                       const GroupPartition& partition,
                       int calibration_bins = kDefaultCalibrationBins);

// Recomputes the gap columns from a cell's stored per-group values.
GapArray RecomputeGaps(const BenchmarkCell& cell);

// Points per method: for each (family, feature) compared pair and metric,
// the method with the strictly larger gap gets one point.
struct MaxGapTable {
  Method first = Method::kBaseline;
  Method second = Method::kFairDream;
  std::array<int, kNumGapMetrics> first_points{};
  std::array<int, kNumGapMetrics> second_points{};
  std::size_t comparisons = 0;

  int first_total() const;
  int second_total() const;
};

MaxGapTable CompareMethods(std::span<const BenchmarkCell> cells, Method first,
                           Method second);

struct SkippedPair {
  Family family = Family::kGbdt;
  std::string feature;
  std::string reason;
};

struct BenchmarkConfig {
  std::vector<LearnerConfig> learners;
  std::vector<std::string> features;
  double test_fraction = 0.3;
  // Stratified subsample before splitting; 0 uses every row.
  std::size_t subsample = 10000;
  std::uint64_t seed = 7;
  AuditConfig audit;
  int fairdream_candidates = 10;
  double alpha = 1.0 / 3.0;
  double gap_floor = kDefaultGapFloor;
  int grid_size = 10;
  double lambda_bound = 2.0;
  double eta = 0.05;
  int calibration_bins = kDefaultCalibrationBins;
  int threads = 0;

  // Desk-scale defaults: gbdt 200x3, random forest 100x3, logistic.
  static BenchmarkConfig DeskScale();
  void Validate() const;
};

struct BenchmarkResult {
  std::vector<BenchmarkCell> cells;
  std::vector<SkippedPair> skipped;
  std::vector<Alert> alerts;
  MaxGapTable baseline_vs_fairdream;
  MaxGapTable gridsearch_vs_fairdream;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
};

BenchmarkResult RunBenchmark(const DataTable& table,
                             const BenchmarkConfig& config);

struct ReportFormats {
  bool text = true;
  bool csv = true;
};

// Writes summary.json, cells/*.csv, calibration/*.csv and bars/*.csv under
// out_dir, removing files left by earlier runs in those locations.
void EmitReport(const BenchmarkResult& result,
                const std::filesystem::path& out_dir,
                const ReportFormats& formats = {});

}  // namespace fairaudit

#endif  // FAIRAUDIT_BENCHMARK_H_
