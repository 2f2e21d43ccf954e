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

#ifndef FAIRAUDIT_FAIRDREAM_H_
#define FAIRAUDIT_FAIRDREAM_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairaudit/audit.h"
#include "fairaudit/learner.h"
#include "fairaudit/metrics.h"
#include "fairaudit/partition.h"

namespace fairaudit {

// Ascending group reweighting.
//
// For candidate n, group k with indicator gap g_k (distance to the best-off
// group) and share s_k = |S_k| / sum |S_i|:
//
//   rate_k = max(g_k, floor) * s_k
//   raw_k  = rate_k * exp(n * g_k)
//   w_k    = raw_k / max_j raw_j
//
// The floor keeps the best-off group (g = 0) in training.

inline constexpr double kDefaultGapFloor = 0.05;

struct WeightSchedule {
  int candidate = 1;
  double floor = kDefaultGapFloor;
  std::vector<double> gaps;
  std::vector<double> rate_disadvantaged;
  std::vector<double> raw_weights;
  // raw_weights rescaled so the largest is 1.
  std::vector<double> weights;
  double scale = 1.0;
};

// Distance of each value to the maximum: max_j v_j - v_k.
std::vector<double> GapsToMax(std::span<const double> values);

// Per-group gaps for an objective. DP: OPR gap to the highest OPR.
// EO: mean of the TPR gap to the highest TPR and the FPR gap to the lowest
// FPR (only the defined one if the other is undefined). nullopt for groups
// without a defined indicator.
std::vector<std::optional<double>> GapFairScores(const GroupReport& report,
                                                 FairObjectiveTag objective);

WeightSchedule CandidateWeights(int n, std::span<const double> gaps,
                                std::span<const std::size_t> sizes,
                                double floor = kDefaultGapFloor);

// Overload taking gaps with undefined entries (treated as 0).
WeightSchedule CandidateWeights(int n,
                                std::span<const std::optional<double>> gaps,
                                std::span<const std::size_t> sizes,
                                double floor = kDefaultGapFloor);

// 1 - sum_k s_k g_k over groups with a defined gap (shares renormalized over
// those groups), clamped to [0, 1].
double FairScoreGlobal(std::span<const std::optional<double>> gaps,
                       std::span<const std::size_t> sizes);
double FairScoreGlobal(const GroupReport& report, FairObjectiveTag objective);

// Per-row weights: each row receives its group's weight.
SampleWeights BroadcastWeights(const GroupPartition& partition,
                               std::span<const double> group_weights);

struct FairDreamConfig {
  FairObjectiveTag objective = FairObjectiveTag::kDemographicParity;
  int candidates = 5;
  // Weight of stat_score in the trade-off score.
  double alpha = 1.0 / 3.0;
  double gap_floor = kDefaultGapFloor;
  std::optional<BinStrategy> bins;
  std::size_t min_group_size = kDefaultMinGroupSize;
  LearnerConfig learner;
  // 0 = hardware concurrency.
  int threads = 0;

  void Validate() const;
};

struct CandidateModel {
  // 0 for the baseline, 1..N for corrected candidates.
  int index = 0;
  WeightSchedule schedule;
  Pipeline pipeline;
  Evaluation evaluation;
  double stat_score = 0.0;
  double fair_score = 0.0;
  double trade_off_score = 0.0;
};

struct FairDreamResult {
  std::string feature;
  FairObjectiveTag objective = FairObjectiveTag::kDemographicParity;
  double alpha = 1.0 / 3.0;
  GroupPartition audit_partition;
  GroupPartition train_partition;
  CandidateModel baseline;
  std::vector<CandidateModel> candidates;
  std::size_t best = 0;

  const CandidateModel& best_candidate() const { return candidates[best]; }
};

// argmax trade-off; ties to larger fair_score, then smaller index.
// Degenerate candidates lose to any non-degenerate one.
std::size_t SelectBestCandidate(std::span<const CandidateModel> candidates);

// Trains config.candidates reweighted models. Groups are built on the audit
// split and applied to the training split; the baseline's audit indicators
// define the gaps.
FairDreamResult RunFairDream(const Pipeline& base, const DataTable& train,
                             const DataTable& audit, const std::string& feature,
                             const FairDreamConfig& config);

}  // namespace fairaudit

#endif  // FAIRAUDIT_FAIRDREAM_H_
