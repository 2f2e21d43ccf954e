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

#include "fairaudit/fairdream.h"

#include <algorithm>
#include <cmath>

#include "fairaudit/error.h"
#include "parallel.h"

namespace fairaudit {
namespace {

std::vector<std::optional<double>> GapToBest(
    const std::vector<std::optional<double>>& values, bool higher_is_better) {
  std::optional<double> best;
  for (const auto& v : values) {
    if (!v) continue;
    if (!best || (higher_is_better ? *v > *best : *v < *best)) best = *v;
  }
  std::vector<std::optional<double>> gaps(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k]) gaps[k] = std::abs(*values[k] - *best);
  }
  return gaps;
}

CandidateModel Score(int index, WeightSchedule schedule, Pipeline pipeline,
                     Evaluation evaluation, const FairDreamConfig& config) {
  CandidateModel c;
  c.index = index;
  c.schedule = std::move(schedule);
  c.pipeline = std::move(pipeline);
  c.evaluation = std::move(evaluation);
  c.stat_score = c.evaluation.roc_auc;
  c.fair_score = FairScoreGlobal(c.evaluation.report, config.objective);
  c.trade_off_score =
      config.alpha * c.stat_score + (1.0 - config.alpha) * c.fair_score;
  return c;
}

}  // namespace

std::vector<double> GapsToMax(std::span<const double> values) {
  if (values.empty()) return {};
  const double top = *std::max_element(values.begin(), values.end());
  std::vector<double> gaps(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) gaps[k] = top - values[k];
  return gaps;
}

std::vector<std::optional<double>> GapFairScores(const GroupReport& report,
                                                 FairObjectiveTag objective) {
  std::vector<std::optional<double>> opr;
  std::vector<std::optional<double>> tpr;
  std::vector<std::optional<double>> fpr;
  for (const auto& g : report.groups) {
    opr.push_back(g.opr);
    tpr.push_back(g.tpr);
    fpr.push_back(g.fpr);
  }
  if (objective == FairObjectiveTag::kDemographicParity) {
    const auto gaps = GapToBest(opr, true);
    if (std::none_of(gaps.begin(), gaps.end(),
                     [](const auto& g) { return g.has_value(); })) {
      throw UndefinedMetricError("no group has a defined overall positive rate");
    }
    return gaps;
  }
  const auto tpr_gaps = GapToBest(tpr, true);
  const auto fpr_gaps = GapToBest(fpr, false);
  std::vector<std::optional<double>> gaps(report.groups.size());
  bool any = false;
  for (std::size_t k = 0; k < gaps.size(); ++k) {
    const auto& t = tpr_gaps[k];
    const auto& f = fpr_gaps[k];
    if (t && f) {
      gaps[k] = 0.5 * (*t + *f);
    } else if (t || f) {
      gaps[k] = t ? *t : *f;
    }
    any = any || gaps[k].has_value();
  }
  if (!any) throw UndefinedMetricError("no group has a defined TPR or FPR");
  return gaps;
}

WeightSchedule CandidateWeights(int n, std::span<const double> gaps,
                                std::span<const std::size_t> sizes,
                                double floor) {
  if (n < 1) throw ConfigError("candidate index must be >= 1");
  if (gaps.size() != sizes.size() || gaps.empty()) {
    throw ConfigError("gaps and sizes must be non-empty and of equal length");
  }
  if (!(floor > 0.0 && floor <= 1.0)) {
    throw ConfigError("gap floor must lie in (0, 1]");
  }
  double total = 0.0;
  for (std::size_t s : sizes) {
    if (s == 0) throw ConfigError("group sizes must be positive");
    total += static_cast<double>(s);
  }
  WeightSchedule w;
  w.candidate = n;
  w.floor = floor;
  w.gaps.assign(gaps.begin(), gaps.end());
  for (std::size_t k = 0; k < gaps.size(); ++k) {
    if (!(gaps[k] >= 0.0 && gaps[k] <= 1.0)) {
      throw ConfigError("gaps must lie in [0, 1]");
    }
    const double share = static_cast<double>(sizes[k]) / total;
    const double rate = std::max(gaps[k], floor) * share;
    w.rate_disadvantaged.push_back(rate);
    w.raw_weights.push_back(rate * std::exp(n * gaps[k]));
  }
  w.scale = *std::max_element(w.raw_weights.begin(), w.raw_weights.end());
  for (double r : w.raw_weights) w.weights.push_back(r / w.scale);
  return w;
}

WeightSchedule CandidateWeights(int n,
                                std::span<const std::optional<double>> gaps,
                                std::span<const std::size_t> sizes,
                                double floor) {
  std::vector<double> filled;
  filled.reserve(gaps.size());
  for (const auto& g : gaps) filled.push_back(g.value_or(0.0));
  return CandidateWeights(n, filled, sizes, floor);
}

double FairScoreGlobal(std::span<const std::optional<double>> gaps,
                       std::span<const std::size_t> sizes) {
  if (gaps.size() != sizes.size()) {
    throw ConfigError("gaps and sizes must have equal length");
  }
  double total = 0.0;
  double weighted = 0.0;
  for (std::size_t k = 0; k < gaps.size(); ++k) {
    if (!gaps[k]) continue;
    total += static_cast<double>(sizes[k]);
    weighted += static_cast<double>(sizes[k]) * *gaps[k];
  }
  if (total <= 0.0) return 1.0;
  return std::clamp(1.0 - weighted / total, 0.0, 1.0);
}

double FairScoreGlobal(const GroupReport& report, FairObjectiveTag objective) {
  const auto gaps = GapFairScores(report, objective);
  std::vector<std::size_t> sizes;
  for (const auto& g : report.groups) sizes.push_back(g.size);
  return FairScoreGlobal(gaps, sizes);
}

SampleWeights BroadcastWeights(const GroupPartition& partition,
                               std::span<const double> group_weights) {
  if (group_weights.size() != partition.num_groups()) {
    throw ConfigError("one weight per group is required");
  }
  std::vector<double> w(partition.rows());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = group_weights[partition.assignment[i]];
  }
  return SampleWeights(std::move(w));
}

void FairDreamConfig::Validate() const {
  if (candidates < 1) throw ConfigError("fairdream candidates must be >= 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ConfigError("fairdream alpha must lie in [0, 1]");
  }
  if (!(gap_floor > 0.0 && gap_floor <= 1.0)) {
    throw ConfigError("fairdream gap_floor must lie in (0, 1]");
  }
  if (min_group_size < 1) throw ConfigError("min_group_size must be >= 1");
  learner.Validate();
}

std::size_t SelectBestCandidate(std::span<const CandidateModel> candidates) {
  if (candidates.empty()) throw ConfigError("no candidates to select from");
  auto better = [](const CandidateModel& a, const CandidateModel& b) {
    if (a.evaluation.degenerate != b.evaluation.degenerate) {
      return !a.evaluation.degenerate;
    }
    if (a.trade_off_score != b.trade_off_score) {
      return a.trade_off_score > b.trade_off_score;
    }
    if (a.fair_score != b.fair_score) return a.fair_score > b.fair_score;
    return a.index < b.index;
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (better(candidates[i], candidates[best])) best = i;
  }
  return best;
}

FairDreamResult RunFairDream(const Pipeline& base, const DataTable& train,
                             const DataTable& audit, const std::string& feature,
                             const FairDreamConfig& config) {
  config.Validate();
  const auto index = audit.FindColumn(feature);
  if (!index) throw ConfigError("unknown feature '" + feature + "'");

  FairDreamResult result;
  result.feature = feature;
  result.objective = config.objective;
  result.alpha = config.alpha;
  result.audit_partition = BinFeature(
      audit, feature,
      config.bins.value_or(DefaultStrategy(audit.column(*index).kind)),
      config.min_group_size);
  result.train_partition = ApplyScheme(result.audit_partition.scheme, train);

  const auto& sizes = result.audit_partition.sizes;
  WeightSchedule unit;
  unit.candidate = 0;
  unit.floor = config.gap_floor;
  unit.weights.assign(sizes.size(), 1.0);
  result.baseline =
      Score(0, std::move(unit), base,
            Evaluate(base, audit, result.audit_partition), config);
  const auto gaps =
      GapFairScores(result.baseline.evaluation.report, config.objective);
  for (const auto& g : gaps) {
    result.baseline.schedule.gaps.push_back(g.value_or(0.0));
  }

  const auto n = static_cast<std::size_t>(config.candidates);
  result.candidates.resize(n);
  internal::ParallelFor(n, config.threads, [&](std::size_t i) {
    const int candidate = static_cast<int>(i) + 1;
    auto schedule = CandidateWeights(candidate, gaps, sizes, config.gap_floor);
    const auto weights =
        BroadcastWeights(result.train_partition, schedule.weights);
    auto pipeline = TrainPipeline(train, weights, config.learner);
    auto evaluation = Evaluate(pipeline, audit, result.audit_partition);
    result.candidates[i] = Score(candidate, std::move(schedule),
                                 std::move(pipeline), std::move(evaluation),
                                 config);
  });
  result.best = SelectBestCandidate(result.candidates);
  return result;
}

}  // namespace fairaudit
