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

#ifndef FAIRAUDIT_TOOLS_RUN_CONFIG_H_
#define FAIRAUDIT_TOOLS_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fairaudit/audit.h"
#include "fairaudit/benchmark.h"
#include "fairaudit/learner.h"
#include "fairaudit/metrics.h"

namespace fairaudit::cli {

// Everything a command needs, read from one JSON document. Relative paths
// are resolved against the directory of that document. Command-line flags
// are applied on top by the caller.
struct RunConfig {
  std::filesystem::path data;
  std::filesystem::path schema;
  // Stratified subsample before splitting; 0 keeps every row.
  std::size_t subsample = 0;
  double test_fraction = 0.3;
  std::uint64_t seed = 7;

  // Learner for audit and correct.
  LearnerConfig learner = LearnerConfig::Defaults(Family::kGbdt);
  // Learners for benchmark, in run order.
  std::vector<LearnerConfig> learners;

  AuditConfig audit;
  FairObjectiveTag objective = FairObjectiveTag::kDemographicParity;
  double alpha = 1.0 / 3.0;
  int candidates = 5;
  double gap_floor = kDefaultGapFloor;
  int grid_size = 10;
  double lambda_bound = 2.0;
  double eta = 0.05;
  // Candidate and grid counts used by the benchmark.
  int benchmark_candidates = 10;
  int benchmark_grid_size = 10;
  int calibration_bins = kDefaultCalibrationBins;
  int threads = 0;

  std::filesystem::path out = "fairaudit-out";
  ReportFormats formats;

  // Applies `seed` to the run and to every learner.
  void SetSeed(std::uint64_t value);
  // Checks ranges and that the referenced files exist.
  void Validate() const;
  BenchmarkConfig ToBenchmark() const;
};

// Parses a config document. `base_dir` anchors relative paths.
RunConfig ParseRunConfig(const std::string& json_text,
                         const std::filesystem::path& base_dir);
RunConfig LoadRunConfig(const std::filesystem::path& path);

// "text", "csv" or a comma list of both.
ReportFormats ParseFormats(const std::string& spec);

}  // namespace fairaudit::cli

#endif  // FAIRAUDIT_TOOLS_RUN_CONFIG_H_
