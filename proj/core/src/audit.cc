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

#include <algorithm>
#include <tuple>

#include "fairaudit/error.h"
#include "parallel.h"

namespace fairaudit {

void AuditConfig::Validate() const {
  if (!(ratio_threshold > 1.0)) {
    throw ConfigError("audit ratio_threshold must be > 1");
  }
  if (min_group_size < 1) throw ConfigError("audit min_group_size must be >= 1");
  if (fixed_threshold && !(*fixed_threshold >= 0.0 && *fixed_threshold <= 1.0)) {
    throw ConfigError("audit threshold must lie in [0, 1]");
  }
}

GroupPartition PartitionFor(const DataTable& table, const std::string& feature,
                            const AuditConfig& config) {
  const auto index = table.FindColumn(feature);
  if (!index) throw ConfigError("unknown feature '" + feature + "'");
  const auto it = config.bins.find(feature);
  const BinStrategy strategy = it != config.bins.end()
                                   ? it->second
                                   : DefaultStrategy(table.column(*index).kind);
  return BinFeature(table, feature, strategy, config.min_group_size);
}

std::vector<Alert> AlertsForReport(const GroupReport& report,
                                   const GroupPartition& partition,
                                   double ratio_threshold,
                                   std::size_t min_group_size) {
  std::vector<Alert> alerts;
  std::optional<std::size_t> best;
  for (std::size_t g = 0; g < report.groups.size(); ++g) {
    const auto& r = report.groups[g];
    if (r.size < min_group_size || !r.opr) continue;
    if (!best || *r.opr > *report.groups[*best].opr) best = g;
  }
  if (!best) return alerts;
  const auto& top = report.groups[*best];
  if (*top.opr <= 0.0) return alerts;
  for (std::size_t g = 0; g < report.groups.size(); ++g) {
    const auto& r = report.groups[g];
    if (g == *best || r.size < min_group_size || !r.opr) continue;
    std::optional<double> ratio;
    if (*r.opr > 0.0) {
      ratio = *top.opr / *r.opr;
      if (*ratio < ratio_threshold) continue;
    }
    Alert a;
    a.feature = partition.scheme.feature;
    a.disadvantaged_group = g;
    a.advantaged_group = *best;
    a.disadvantaged = r.label;
    a.advantaged = top.label;
    a.disadvantaged_opr = *r.opr;
    a.advantaged_opr = *top.opr;
    a.ratio = ratio;
    a.disadvantaged_size = r.size;
    a.advantaged_size = top.size;
    alerts.push_back(std::move(a));
  }
  return alerts;
}

void SortAlerts(std::vector<Alert>& alerts) {
  std::stable_sort(alerts.begin(), alerts.end(),
                   [](const Alert& a, const Alert& b) {
                     if (a.infinite() != b.infinite()) return a.infinite();
                     if (!a.infinite() && *a.ratio != *b.ratio) {
                       return *a.ratio > *b.ratio;
                     }
                     return std::tie(a.feature, a.disadvantaged_group) <
                            std::tie(b.feature, b.disadvantaged_group);
                   });
}

AuditResult AuditPredictions(const DataTable& table,
                             std::span<const std::uint8_t> predictions,
                             double threshold, const AuditConfig& config) {
  config.Validate();
  if (predictions.size() != table.rows()) {
    throw ConfigError("prediction count does not match the table");
  }
  std::vector<std::string> features = config.features;
  if (features.empty()) {
    for (const auto& c : table.columns()) features.push_back(c.name);
  }
  for (const auto& f : features) {
    if (!table.FindColumn(f)) throw ConfigError("unknown feature '" + f + "'");
  }
  AuditResult result;
  result.threshold = threshold;
  result.scans.resize(features.size());
  internal::ParallelFor(features.size(), 0, [&](std::size_t i) {
    auto& scan = result.scans[i];
    scan.partition = PartitionFor(table, features[i], config);
    scan.report = MakeGroupReport(table.target(), predictions, scan.partition);
  });
  for (const auto& scan : result.scans) {
    auto found = AlertsForReport(scan.report, scan.partition,
                                 config.ratio_threshold, config.min_group_size);
    result.alerts.insert(result.alerts.end(), found.begin(), found.end());
  }
  SortAlerts(result.alerts);
  return result;
}

AuditResult RunAudit(const Pipeline& model, const DataTable& table,
                     const AuditConfig& config) {
  config.Validate();
  const auto scores = model.Scores(table);
  const double threshold =
      config.fixed_threshold ? *config.fixed_threshold
                             : BestF1Threshold(table.target(), scores).threshold;
  const auto predictions = Classify(scores, threshold);
  return AuditPredictions(table, predictions, threshold, config);
}

std::vector<Alert> DetectAlerts(const Pipeline& model, const DataTable& table,
                                const AuditConfig& config) {
  return RunAudit(model, table, config).alerts;
}

Evaluation EvaluateScores(std::vector<double> scores, const DataTable& audit,
                          const GroupPartition& partition) {
  Evaluation e;
  e.scores = std::move(scores);
  const auto y = audit.target();
  e.threshold = BestF1Threshold(y, e.scores);
  e.predictions = Classify(e.scores, e.threshold.threshold);
  e.report = MakeGroupReport(y, e.predictions, partition);
  e.roc_auc = RocAuc(y, e.scores);
  const auto ones = std::count(e.predictions.begin(), e.predictions.end(), 1);
  e.degenerate = ones == 0 || static_cast<std::size_t>(ones) == e.predictions.size();
  return e;
}

Evaluation Evaluate(const Pipeline& model, const DataTable& audit,
                    const GroupPartition& partition) {
  return EvaluateScores(model.Scores(audit), audit, partition);
}

}  // namespace fairaudit
