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

#include "fairaudit/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fairaudit/error.h"

namespace fairaudit {
namespace {

std::optional<double> Ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

void CheckLengths(std::size_t a, std::size_t b) {
  if (a != b) {
    throw ConfigError("length mismatch: " + std::to_string(a) + " vs " +
                      std::to_string(b));
  }
}

std::vector<std::size_t> OrderByScoreDescending(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  return order;
}

// Linear interpolation of a curve at x inside its range.
double Interpolate(std::span<const double> xs, std::span<const double> ys,
                   double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const auto j = static_cast<std::size_t>(it - xs.begin());
  const double x0 = xs[j - 1];
  const double x1 = xs[j];
  const double t = (x - x0) / (x1 - x0);
  return ys[j - 1] + t * (ys[j] - ys[j - 1]);
}

// Integral of |f - g| over [lo, hi] for piecewise-linear f and g.
double PiecewiseLinearL1(std::span<const double> fx, std::span<const double> fy,
                         std::span<const double> gx, std::span<const double> gy,
                         double lo, double hi) {
  std::vector<double> knots = {lo, hi};
  for (double x : fx) {
    if (x > lo && x < hi) knots.push_back(x);
  }
  for (double x : gx) {
    if (x > lo && x < hi) knots.push_back(x);
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  double area = 0.0;
  double x0 = knots[0];
  double d0 = Interpolate(fx, fy, x0) - Interpolate(gx, gy, x0);
  for (std::size_t k = 1; k < knots.size(); ++k) {
    const double x1 = knots[k];
    const double d1 = Interpolate(fx, fy, x1) - Interpolate(gx, gy, x1);
    const double h = x1 - x0;
    if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0)) {
      // The difference changes sign inside the segment: split at the root.
      const double xc = h * (std::abs(d0) / (std::abs(d0) + std::abs(d1)));
      area += 0.5 * xc * std::abs(d0) + 0.5 * (h - xc) * std::abs(d1);
    } else {
      area += 0.5 * h * (std::abs(d0) + std::abs(d1));
    }
    x0 = x1;
    d0 = d1;
  }
  return area;
}

}  // namespace

std::optional<double> ConfusionCounts::BaseRate() const {
  return Ratio(positives(), total());
}
std::optional<double> ConfusionCounts::OverallPositiveRate() const {
  return Ratio(predicted_positive(), total());
}
std::optional<double> ConfusionCounts::TruePositiveRate() const {
  return Ratio(tp, positives());
}
std::optional<double> ConfusionCounts::FalsePositiveRate() const {
  return Ratio(fp, negatives());
}
std::optional<double> ConfusionCounts::Precision() const {
  return Ratio(tp, predicted_positive());
}

ConfusionCounts Confusion(std::span<const std::uint8_t> y,
                          std::span<const std::uint8_t> yhat) {
  CheckLengths(y.size(), yhat.size());
  ConfusionCounts c;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] > 1 || yhat[i] > 1) throw ConfigError("labels must be 0 or 1");
    if (y[i]) {
      (yhat[i] ? c.tp : c.fn) += 1;
    } else {
      (yhat[i] ? c.fp : c.tn) += 1;
    }
  }
  return c;
}

GroupReport MakeGroupReport(std::span<const std::uint8_t> y,
                            std::span<const std::uint8_t> yhat,
                            const GroupPartition& partition) {
  CheckLengths(y.size(), yhat.size());
  CheckLengths(y.size(), partition.rows());
  GroupReport report;
  report.feature = partition.scheme.feature;
  report.groups.resize(partition.num_groups());
  const auto labels = partition.scheme.Labels();
  for (std::size_t i = 0; i < y.size(); ++i) {
    auto& c = report.groups[partition.assignment[i]].counts;
    if (y[i]) {
      (yhat[i] ? c.tp : c.fn) += 1;
    } else {
      (yhat[i] ? c.fp : c.tn) += 1;
    }
  }
  for (std::size_t g = 0; g < report.groups.size(); ++g) {
    auto& r = report.groups[g];
    r.label = labels[g];
    r.size = r.counts.total();
    r.base_rate = r.counts.BaseRate();
    r.opr = r.counts.OverallPositiveRate();
    r.tpr = r.counts.TruePositiveRate();
    r.fpr = r.counts.FalsePositiveRate();
    r.precision = r.counts.Precision();
  }
  return report;
}

double RocAuc(std::span<const std::uint8_t> y, std::span<const double> scores) {
  CheckLengths(y.size(), scores.size());
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });
  double positives = 0.0;
  double rank_sum = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    double block_pos = 0.0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      block_pos += y[order[j]];
      ++j;
    }
    // Ranks i+1 .. j share the midrank.
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    rank_sum += block_pos * midrank;
    positives += block_pos;
    i = j;
  }
  const double negatives = static_cast<double>(y.size()) - positives;
  if (positives == 0.0 || negatives == 0.0) {
    throw UndefinedMetricError("ROC-AUC needs both classes");
  }
  const double u = rank_sum - positives * (positives + 1.0) / 2.0;
  return u / (positives * negatives);
}

double PrAuc(std::span<const std::uint8_t> y, std::span<const double> scores) {
  CheckLengths(y.size(), scores.size());
  const auto order = OrderByScoreDescending(scores);
  const double positives = static_cast<double>(std::count(y.begin(), y.end(), 1));
  if (positives == 0.0) throw UndefinedMetricError("PR-AUC needs positives");
  double tp = 0.0;
  double seen = 0.0;
  double ap = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    double block_pos = 0.0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      block_pos += y[order[j]];
      ++j;
    }
    tp += block_pos;
    seen += static_cast<double>(j - i);
    if (block_pos > 0.0) ap += (block_pos / positives) * (tp / seen);
    i = j;
  }
  return ap;
}

F1Threshold BestF1Threshold(std::span<const std::uint8_t> y,
                            std::span<const double> scores) {
  CheckLengths(y.size(), scores.size());
  const auto order = OrderByScoreDescending(scores);
  const double positives = static_cast<double>(std::count(y.begin(), y.end(), 1));
  if (positives == 0.0) throw UndefinedMetricError("F1 needs positives");
  F1Threshold best;
  best.f1 = -1.0;
  double tp = 0.0;
  double fp = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (y[order[j]] ? tp : fp) += 1.0;
      ++j;
    }
    const double fn = positives - tp;
    const double f1 = 2.0 * tp / (2.0 * tp + fp + fn);
    // Descending sweep: strict improvement keeps the larger threshold.
    if (f1 > best.f1) {
      best.f1 = f1;
      best.threshold = scores[order[i]];
    }
    i = j;
  }
  return best;
}

CalibrationCurve MakeCalibrationCurve(std::span<const std::uint8_t> y,
                                      std::span<const double> scores,
                                      int n_bins) {
  CheckLengths(y.size(), scores.size());
  if (n_bins < 2) throw ConfigError("calibration curves need n_bins >= 2");
  std::vector<double> sum_score(static_cast<std::size_t>(n_bins), 0.0);
  std::vector<double> sum_label(static_cast<std::size_t>(n_bins), 0.0);
  std::vector<std::size_t> count(static_cast<std::size_t>(n_bins), 0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double s = scores[i];
    int b = static_cast<int>(std::floor(s * n_bins));
    b = std::clamp(b, 0, n_bins - 1);
    sum_score[static_cast<std::size_t>(b)] += s;
    sum_label[static_cast<std::size_t>(b)] += y[i];
    count[static_cast<std::size_t>(b)] += 1;
  }
  CalibrationCurve curve;
  curve.n_bins = n_bins;
  for (std::size_t b = 0; b < count.size(); ++b) {
    if (count[b] == 0) continue;
    const double n = static_cast<double>(count[b]);
    curve.centers.push_back(sum_score[b] / n);
    curve.positive_rates.push_back(sum_label[b] / n);
    curve.counts.push_back(count[b]);
  }
  return curve;
}

double CalibrationGapArea(const CalibrationCurve& a, const CalibrationCurve& b) {
  if (a.points() < 2 || b.points() < 2) {
    throw UndefinedMetricError("calibration gap needs curves with >= 2 points");
  }
  const double lo = std::max(a.centers.front(), b.centers.front());
  const double hi = std::min(a.centers.back(), b.centers.back());
  if (!(hi > lo)) {
    throw UndefinedMetricError("calibration curves have disjoint score ranges");
  }
  return PiecewiseLinearL1(a.centers, a.positive_rates, b.centers,
                           b.positive_rates, lo, hi);
}

double CalibrationError(const CalibrationCurve& curve) {
  if (curve.points() < 2) {
    throw UndefinedMetricError("calibration error needs >= 2 points");
  }
  const std::vector<double> diag = {curve.centers.front(), curve.centers.back()};
  return PiecewiseLinearL1(curve.centers, curve.positive_rates, diag, diag,
                           curve.centers.front(), curve.centers.back());
}

const char* ToString(FairObjectiveTag tag) {
  return tag == FairObjectiveTag::kDemographicParity ? "demographic_parity"
                                                     : "equalized_odds";
}

FairObjectiveTag ParseObjective(const std::string& name) {
  if (name == "demographic_parity" || name == "dp") {
    return FairObjectiveTag::kDemographicParity;
  }
  if (name == "equalized_odds" || name == "eo") {
    return FairObjectiveTag::kEqualizedOdds;
  }
  throw ConfigError("unknown fairness objective '" + name + "'");
}

double FairnessGaps::objective_gap() const {
  if (objective == FairObjectiveTag::kDemographicParity) return dp_gap;
  const double t = tpr_gap.value_or(0.0);
  const double f = fpr_gap.value_or(0.0);
  if (tpr_gap && fpr_gap) return 0.5 * (t + f);
  return tpr_gap ? t : f;
}

std::optional<double> Spread(std::span<const std::optional<double>> values) {
  std::optional<double> lo;
  std::optional<double> hi;
  std::size_t defined = 0;
  for (const auto& v : values) {
    if (!v) continue;
    ++defined;
    lo = lo ? std::min(*lo, *v) : *v;
    hi = hi ? std::max(*hi, *v) : *v;
  }
  if (defined < 2) return std::nullopt;
  return *hi - *lo;
}

FairnessGaps ComputeFairnessGaps(const GroupReport& report,
                                 FairObjectiveTag objective) {
  std::vector<std::optional<double>> opr;
  std::vector<std::optional<double>> tpr;
  std::vector<std::optional<double>> fpr;
  for (const auto& g : report.groups) {
    opr.push_back(g.opr);
    tpr.push_back(g.tpr);
    fpr.push_back(g.fpr);
  }
  const auto dp = Spread(opr);
  if (!dp) {
    throw UndefinedMetricError(
        "fairness gaps need at least two groups with defined rates");
  }
  FairnessGaps gaps;
  gaps.objective = objective;
  gaps.dp_gap = *dp;
  gaps.tpr_gap = Spread(tpr);
  gaps.fpr_gap = Spread(fpr);
  double lo = 1.0;
  double hi = 0.0;
  for (const auto& v : opr) {
    if (!v) continue;
    lo = std::min(lo, *v);
    hi = std::max(hi, *v);
  }
  if (lo > 0.0) gaps.opr_ratio = hi / lo;
  return gaps;
}

}  // namespace fairaudit
