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

#ifndef FAIRAUDIT_AUDIT_H_
#define FAIRAUDIT_AUDIT_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairaudit/learner.h"
#include "fairaudit/metrics.h"
#include "fairaudit/partition.h"
#include "fairaudit/table.h"

namespace fairaudit {

struct AuditConfig {
  // Features to scan; empty means every feature column.
  std::vector<std::string> features;
  double ratio_threshold = 3.0;
  std::size_t min_group_size = kDefaultMinGroupSize;
  // Classification threshold; nullopt selects the F1-maximizing threshold on
  // the audited table.
  std::optional<double> fixed_threshold;
  // Per-feature binning overrides; others use DefaultStrategy.
  std::map<std::string, BinStrategy> bins;

  void Validate() const;
};

// A disadvantaged group whose OPR is at least ratio_threshold times below
// the best-off group of the same feature.
struct Alert {
  std::string feature;
  std::size_t disadvantaged_group = 0;
  std::size_t advantaged_group = 0;
  std::string disadvantaged;
  std::string advantaged;
  double disadvantaged_opr = 0.0;
  double advantaged_opr = 0.0;
  // advantaged / disadvantaged OPR; nullopt when the disadvantaged OPR is 0
  // (infinite ratio).
  std::optional<double> ratio;
  std::size_t disadvantaged_size = 0;
  std::size_t advantaged_size = 0;

  bool infinite() const { return !ratio.has_value(); }
};

struct FeatureScan {
  GroupPartition partition;
  GroupReport report;
};

struct AuditResult {
  double threshold = 0.5;
  std::vector<Alert> alerts;
  std::vector<FeatureScan> scans;
};

// The binning a feature gets under `config` (override or default), built on
// `table`.
GroupPartition PartitionFor(const DataTable& table, const std::string& feature,
                            const AuditConfig& config);

// Alerts for one feature from per-group predictions.
std::vector<Alert> AlertsForReport(const GroupReport& report,
                                   const GroupPartition& partition,
                                   double ratio_threshold,
                                   std::size_t min_group_size);

// Orders alerts by descending ratio (infinite first), then feature and group.
void SortAlerts(std::vector<Alert>& alerts);

// Scans predictions already thresholded.
AuditResult AuditPredictions(const DataTable& table,
                             std::span<const std::uint8_t> predictions,
                             double threshold, const AuditConfig& config);

// Scores `table` with the model, thresholds it, and scans every feature.
AuditResult RunAudit(const Pipeline& model, const DataTable& table,
                     const AuditConfig& config);

std::vector<Alert> DetectAlerts(const Pipeline& model, const DataTable& table,
                                const AuditConfig& config);

// A model's behaviour on the audit split for one partition.
struct Evaluation {
  std::vector<double> scores;
  F1Threshold threshold;
  std::vector<std::uint8_t> predictions;
  GroupReport report;
  double roc_auc = 0.5;
  // Every prediction in the same class.
  bool degenerate = false;
};

Evaluation Evaluate(const Pipeline& model, const DataTable& audit,
                    const GroupPartition& partition);
Evaluation EvaluateScores(std::vector<double> scores, const DataTable& audit,
                          const GroupPartition& partition);

}  // namespace fairaudit

#endif  // FAIRAUDIT_AUDIT_H_
