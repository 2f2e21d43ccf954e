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

#ifndef FAIRAUDIT_METRICS_H_
#define FAIRAUDIT_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairaudit/partition.h"

namespace fairaudit {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  std::size_t positives() const { return tp + fn; }
  std::size_t negatives() const { return fp + tn; }
  std::size_t predicted_positive() const { return tp + fp; }

  // Empty denominators give std::nullopt.
  std::optional<double> BaseRate() const;
  std::optional<double> OverallPositiveRate() const;
  std::optional<double> TruePositiveRate() const;
  std::optional<double> FalsePositiveRate() const;
  std::optional<double> Precision() const;

  bool operator==(const ConfusionCounts&) const = default;
};

ConfusionCounts Confusion(std::span<const std::uint8_t> y,
                          std::span<const std::uint8_t> yhat);

struct GroupRates {
  std::string label;
  std::size_t size = 0;
  ConfusionCounts counts;
  std::optional<double> base_rate;
  std::optional<double> opr;
  std::optional<double> tpr;
  std::optional<double> fpr;
  std::optional<double> precision;
};

struct GroupReport {
  std::string feature;
  std::vector<GroupRates> groups;
};

GroupReport MakeGroupReport(std::span<const std::uint8_t> y,
                            std::span<const std::uint8_t> yhat,
                            const GroupPartition& partition);

// Mann-Whitney statistic P(s+ > s-) + P(s+ == s-)/2 via midranks.
// Throws UndefinedMetricError unless both classes are present.
double RocAuc(std::span<const std::uint8_t> y, std::span<const double> scores);

// Average precision over a descending-score sweep, ties processed as one
// block. Throws UndefinedMetricError without positives.
double PrAuc(std::span<const std::uint8_t> y, std::span<const double> scores);

struct F1Threshold {
  double threshold = 1.0;
  double f1 = 0.0;
};

// Scans every distinct score as a threshold (predict 1 iff score >= t) and
// returns the F1 maximizer; ties go to the larger threshold.
F1Threshold BestF1Threshold(std::span<const std::uint8_t> y,
                            std::span<const double> scores);

inline constexpr int kDefaultCalibrationBins = 10;

struct CalibrationCurve {
  int n_bins = kDefaultCalibrationBins;
  // Mean predicted score per non-empty equal-width bin, increasing.
  std::vector<double> centers;
  std::vector<double> positive_rates;
  std::vector<std::size_t> counts;

  std::size_t points() const { return centers.size(); }
};

CalibrationCurve MakeCalibrationCurve(std::span<const std::uint8_t> y,
                                      std::span<const double> scores,
                                      int n_bins = kDefaultCalibrationBins);

// L1 distance between the piecewise-linear interpolants of two curves over
// the intersection of their score ranges. Trapezoidal rule on the merged
// knot set, with the crossing points of the two interpolants added as knots
// so the rule is exact. Throws UndefinedMetricError when a curve has fewer
// than two points or the ranges do not overlap.
double CalibrationGapArea(const CalibrationCurve& a, const CalibrationCurve& b);

// Area between a curve and the diagonal over the curve's own range.
double CalibrationError(const CalibrationCurve& curve);

enum class FairObjectiveTag { kDemographicParity, kEqualizedOdds };

const char* ToString(FairObjectiveTag tag);
FairObjectiveTag ParseObjective(const std::string& name);

struct FairnessGaps {
  FairObjectiveTag objective = FairObjectiveTag::kDemographicParity;
  double dp_gap = 0.0;
  // nullopt when fewer than two groups have the rate defined.
  std::optional<double> tpr_gap;
  std::optional<double> fpr_gap;
  // max/min OPR; nullopt when the minimum OPR is 0.
  std::optional<double> opr_ratio;
  // The gap the objective asks to close (dp_gap or mean of the EO gaps).
  double objective_gap() const;
};

// Gaps are max - min over groups whose rate is defined; undefined rates are
// skipped. Throws UndefinedMetricError when fewer than two groups have a
// defined OPR.
FairnessGaps ComputeFairnessGaps(const GroupReport& report,
                                 FairObjectiveTag objective);

// max - min over the defined values; nullopt with fewer than two.
std::optional<double> Spread(std::span<const std::optional<double>> values);

}  // namespace fairaudit

#endif  // FAIRAUDIT_METRICS_H_
