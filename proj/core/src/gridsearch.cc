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

#include <algorithm>
#include <cmath>

#include "fairaudit/error.h"
#include "parallel.h"

namespace fairaudit {

CostReduction ReduceToCosts(std::span<const std::uint8_t> y,
                            const GroupPartition& partition,
                            std::span<const double> multipliers) {
  if (y.size() != partition.rows()) {
    throw ConfigError("label count does not match the partition");
  }
  if (multipliers.size() != partition.num_groups()) {
    throw ConfigError("one multiplier per group is required");
  }
  if (partition.num_groups() < 2) {
    throw ConfigError("the reduction needs at least two groups");
  }
  double balance = 0.0;
  double magnitude = 0.0;
  for (std::size_t k = 0; k < multipliers.size(); ++k) {
    if (partition.sizes[k] == 0) {
      throw ConfigError("group '" + partition.scheme.Labels()[k] +
                        "' is empty on the training split");
    }
    const double term = multipliers[k] * static_cast<double>(partition.sizes[k]);
    balance += term;
    magnitude += std::abs(term);
  }
  if (std::abs(balance) > 1e-9 * std::max(1.0, magnitude)) {
    throw ConfigError("multipliers must satisfy sum_k lambda_k |S_k| = 0");
  }
  const double n = static_cast<double>(partition.rows());
  std::vector<double> penalty(multipliers.size());
  for (std::size_t k = 0; k < penalty.size(); ++k) {
    penalty[k] = multipliers[k] / (static_cast<double>(partition.sizes[k]) / n);
  }
  CostReduction out;
  out.labels.resize(y.size());
  out.weights.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double cost1 = (1.0 - y[i]) + penalty[partition.assignment[i]];
    const double cost0 = y[i];
    out.labels[i] = cost1 < cost0 ? 1 : (cost1 > cost0 ? 0 : y[i]);
    out.weights[i] = std::abs(cost1 - cost0);
  }
  return out;
}

std::vector<double> CenteredMultipliers(const GroupPartition& partition,
                                        std::size_t group, double lambda) {
  if (group >= partition.num_groups()) throw ConfigError("group out of range");
  const double size = static_cast<double>(partition.sizes[group]);
  const double rest = static_cast<double>(partition.rows()) - size;
  if (rest <= 0.0) throw ConfigError("the other groups are empty");
  std::vector<double> m(partition.num_groups(), -lambda * size / rest);
  m[group] = lambda;
  return m;
}

std::vector<double> LambdaGrid(int grid_size, double bound) {
  if (grid_size < 1) throw ConfigError("grid_size must be >= 1");
  if (grid_size == 1) return {0.0};
  std::vector<double> grid(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    grid[static_cast<std::size_t>(i)] =
        bound * (-1.0 + 2.0 * i / static_cast<double>(grid_size - 1));
  }
  return grid;
}

void GridSearchConfig::Validate() const {
  if (grid_size < 1) throw ConfigError("gridsearch grid_size must be >= 1");
  if (!(lambda_bound >= 0.0) || !std::isfinite(lambda_bound)) {
    throw ConfigError("gridsearch lambda_bound must be finite and >= 0");
  }
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw ConfigError("gridsearch eta must lie in [0, 1]");
  }
  if (!(ratio_threshold > 1.0)) {
    throw ConfigError("gridsearch ratio_threshold must be > 1");
  }
  if (min_group_size < 1) throw ConfigError("min_group_size must be >= 1");
  learner.Validate();
}

std::size_t SelectGridPoint(std::span<const LagrangianPoint> points,
                            double eta) {
  if (points.empty()) throw ConfigError("no grid points to select from");
  std::optional<std::size_t> feasible;
  std::size_t closest = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (p.violation <= eta &&
        (!feasible || p.stat_score > points[*feasible].stat_score)) {
      feasible = i;
    }
    if (p.violation < points[closest].violation) closest = i;
  }
  return feasible.value_or(closest);
}

std::vector<std::size_t> SweptGroups(const GroupReport& baseline,
                                     double ratio_threshold) {
  std::optional<std::size_t> best;
  for (std::size_t g = 0; g < baseline.groups.size(); ++g) {
    const auto& opr = baseline.groups[g].opr;
    if (opr && (!best || *opr > *baseline.groups[*best].opr)) best = g;
  }
  if (!best) throw UndefinedMetricError("no group has a defined OPR");
  const double top = *baseline.groups[*best].opr;
  std::vector<std::size_t> swept;
  std::optional<std::size_t> lowest;
  for (std::size_t g = 0; g < baseline.groups.size(); ++g) {
    const auto& opr = baseline.groups[g].opr;
    if (g == *best || !opr) continue;
    if (!lowest || *opr < *baseline.groups[*lowest].opr) lowest = g;
    if (top > 0.0 && (*opr == 0.0 || top / *opr >= ratio_threshold)) {
      swept.push_back(g);
    }
  }
  if (swept.empty() && lowest) swept.push_back(*lowest);
  return swept;
}

GridSearchResult RunGridSearch(const Pipeline& base, const DataTable& train,
                               const DataTable& audit,
                               const std::string& feature,
                               const GridSearchConfig& config) {
  config.Validate();
  const auto index = audit.FindColumn(feature);
  if (!index) throw ConfigError("unknown feature '" + feature + "'");

  GridSearchResult result;
  result.feature = feature;
  result.eta = config.eta;
  result.audit_partition = BinFeature(
      audit, feature,
      config.bins.value_or(DefaultStrategy(audit.column(*index).kind)),
      config.min_group_size);
  if (result.audit_partition.num_groups() < 2) {
    throw ConfigError("feature '" + feature + "' yields a single group");
  }
  result.train_partition = ApplyScheme(result.audit_partition.scheme, train);

  const auto baseline = Evaluate(base, audit, result.audit_partition);
  result.swept_groups = SweptGroups(baseline.report, config.ratio_threshold);
  const auto grid = LambdaGrid(config.grid_size, config.lambda_bound);

  for (std::size_t g : result.swept_groups) {
    for (double lambda : grid) {
      LagrangianPoint p;
      p.group = g;
      p.lambda = lambda;
      p.multipliers = CenteredMultipliers(result.train_partition, g, lambda);
      result.points.push_back(std::move(p));
    }
  }
  const auto y = train.target();
  internal::ParallelFor(result.points.size(), config.threads,
                        [&](std::size_t i) {
    auto& p = result.points[i];
    auto reduced = ReduceToCosts(y, result.train_partition, p.multipliers);
    for (std::size_t r = 0; r < y.size(); ++r) {
      p.relabeled_rows += reduced.labels[r] != y[r];
    }
    const auto relabeled = train.WithTarget(std::move(reduced.labels));
    p.pipeline = TrainPipeline(relabeled, SampleWeights(std::move(reduced.weights)),
                               config.learner, /*allow_constant=*/true);
    p.evaluation = Evaluate(p.pipeline, audit, result.audit_partition);
    p.violation = ComputeFairnessGaps(p.evaluation.report,
                                      FairObjectiveTag::kDemographicParity)
                      .dp_gap;
    p.stat_score = p.evaluation.roc_auc;
  });
  result.best = SelectGridPoint(result.points, config.eta);
  return result;
}

}  // namespace fairaudit
