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

#ifndef FAIRAUDIT_GRIDSEARCH_H_
#define FAIRAUDIT_GRIDSEARCH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairaudit/audit.h"
#include "fairaudit/learner.h"
#include "fairaudit/partition.h"

namespace fairaudit {

// Lagrangian reduction of the demographic-parity constrained problem to
// cost-sensitive classification. With p_k = |S_k| / N, a row of group k has
//
//   cost(predict 1) = (1 - y) + lambda_k / p_k
//   cost(predict 0) = y
//
// and is relabeled to the cheaper prediction with weight |cost1 - cost0|.
struct CostReduction {
  std::vector<std::uint8_t> labels;
  std::vector<double> weights;
};

// Requires sum_k lambda_k |S_k| == 0 (relative tolerance 1e-9) and no empty
// group.
CostReduction ReduceToCosts(std::span<const std::uint8_t> y,
                            const GroupPartition& partition,
                            std::span<const double> multipliers);

// Multipliers with `lambda` on `group` and the centering value
// -lambda |S_g| / (N - |S_g|) on every other group. Negative lambda favours
// predicting 1 for `group`.
std::vector<double> CenteredMultipliers(const GroupPartition& partition,
                                        std::size_t group, double lambda);

// grid_size evenly spaced values in [-bound, bound] (just 0 when size is 1).
std::vector<double> LambdaGrid(int grid_size, double bound);

struct GridSearchConfig {
  int grid_size = 10;
  double lambda_bound = 2.0;
  // Maximum admissible DP gap.
  double eta = 0.05;
  // Groups whose baseline OPR is this many times below the best are swept.
  double ratio_threshold = 3.0;
  std::optional<BinStrategy> bins;
  std::size_t min_group_size = kDefaultMinGroupSize;
  LearnerConfig learner;
  int threads = 0;

  void Validate() const;
};

struct LagrangianPoint {
  std::size_t group = 0;
  double lambda = 0.0;
  std::vector<double> multipliers;
  std::size_t relabeled_rows = 0;
  Pipeline pipeline;
  Evaluation evaluation;
  // DP gap on the audit split.
  double violation = 0.0;
  // ROC-AUC on the audit split.
  double stat_score = 0.0;
};

struct GridSearchResult {
  std::string feature;
  double eta = 0.05;
  GroupPartition audit_partition;
  GroupPartition train_partition;
  std::vector<std::size_t> swept_groups;
  std::vector<LagrangianPoint> points;
  std::size_t best = 0;

  const LagrangianPoint& best_point() const { return points[best]; }
};

// Among points with violation <= eta the one with the highest stat_score;
// if none qualifies, the smallest violation. Remaining ties go to the
// earlier point.
std::size_t SelectGridPoint(std::span<const LagrangianPoint> points,
                            double eta);

// Disadvantaged groups of the baseline: OPR ratio to the best group at or
// above ratio_threshold, else the single lowest-OPR group.
std::vector<std::size_t> SweptGroups(const GroupReport& baseline,
                                     double ratio_threshold);

GridSearchResult RunGridSearch(const Pipeline& base, const DataTable& train,
                               const DataTable& audit,
                               const std::string& feature,
                               const GridSearchConfig& config);

}  // namespace fairaudit

#endif  // FAIRAUDIT_GRIDSEARCH_H_
