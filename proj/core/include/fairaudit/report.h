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

#ifndef FAIRAUDIT_REPORT_H_
#define FAIRAUDIT_REPORT_H_

#include <filesystem>
#include <string>
#include <vector>

#include "fairaudit/audit.h"
#include "fairaudit/benchmark.h"
#include "fairaudit/fairdream.h"
#include "fairaudit/gridsearch.h"
#include "fairaudit/metrics.h"

namespace fairaudit {

// Structured-text reports are JSON objects carrying
//   "format": "fairaudit-report", "version": kReportVersion, "kind": ...
// Key names are stable within a version. See docs/report_format.md.
inline constexpr int kReportVersion = 1;
inline constexpr const char* kReportFormat = "fairaudit-report";

std::string GroupReportJson(const GroupReport& report);
std::string FairnessGapsJson(const FairnessGaps& gaps);
std::string CalibrationCurveJson(const CalibrationCurve& curve);

std::string AuditReportJson(const AuditResult& audit);
std::string FairDreamReportJson(const FairDreamResult& result);
std::string GridSearchReportJson(const GridSearchResult& result);
std::string BenchmarkSummaryJson(const BenchmarkResult& result);

// Flat CSV (header row, comma separated, '.' decimal, empty cell = undefined).
std::string GroupReportCsv(const GroupReport& report);
std::string CalibrationCurveCsv(const CalibrationCurve& curve,
                                const std::string& group = "");
std::string AlertsCsv(const std::vector<Alert>& alerts);
std::string CandidatesCsv(const FairDreamResult& result);
// (stat_score, fair_score) per model, baseline included.
std::string TradeOffScatterCsv(const FairDreamResult& result);
std::string GridPointsCsv(const GridSearchResult& result);
std::string CellCsv(const BenchmarkCell& cell);
std::string MaxGapTableCsv(const MaxGapTable& table);

// Fixed-width console tables.
std::string AlertTable(const std::vector<Alert>& alerts);
std::string GroupReportTable(const GroupReport& report);
std::string MaxGapTableText(const MaxGapTable& table);

// Renders any report JSON document produced above as console text.
std::string RenderReport(const std::string& json_text);

// Writes `contents` to `path`, creating parent directories.
void WriteFile(const std::filesystem::path& path, const std::string& contents);

}  // namespace fairaudit

#endif  // FAIRAUDIT_REPORT_H_
