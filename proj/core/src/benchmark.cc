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

#include "fairaudit/benchmark.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <tuple>

#include "fairaudit/error.h"
#include "fairaudit/report.h"

namespace fairaudit {
namespace {

std::optional<double> MaxPairwiseCalibrationGap(
    const std::vector<GroupValues>& groups) {
  std::optional<double> worst;
  for (std::size_t a = 0; a < groups.size(); ++a) {
    for (std::size_t b = a + 1; b < groups.size(); ++b) {
      try {
        const double gap =
            CalibrationGapArea(groups[a].calibration, groups[b].calibration);
        worst = worst ? std::max(*worst, gap) : gap;
      } catch (const UndefinedMetricError&) {
        // Curves too short or disjoint: the pair has no comparable range.
      }
    }
  }
  return worst;
}

std::string FileStem(const std::string& s) {
  std::string out;
  for (char c : s) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '-' || c == '_';
    out.push_back(keep ? c : '_');
  }
  return out;
}

std::string CellStem(const BenchmarkCell& cell) {
  return std::string(ToString(cell.family)) + "__" + FileStem(cell.feature) +
         "__" + ToString(cell.method);
}

std::string FormatOptional(const std::optional<double>& v) {
  if (!v) return "";
  char buf[32];
  const auto end = std::to_chars(buf, buf + sizeof buf, *v).ptr;
  return std::string(buf, end);
}

// Grouped-bar data: one row per (group, method) with the three rates.
// Interval labels such as "[17,29)" contain commas.
std::string Quoted(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string BarsCsv(const std::vector<const BenchmarkCell*>& cells) {
  std::string out = "group,method,opr,fpr,tpr\n";
  for (const auto* cell : cells) {
    for (const auto& g : cell->groups) {
      out += Quoted(g.label) + "," + ToString(cell->method) + "," +
             FormatOptional(g.opr) + "," + FormatOptional(g.fpr) + "," +
             FormatOptional(g.tpr) + "\n";
    }
  }
  return out;
}

}  // namespace

const char* ToString(Method method) {
  switch (method) {
    case Method::kBaseline:
      return "baseline";
    case Method::kFairDream:
      return "fairdream";
    case Method::kGridSearch:
      return "gridsearch";
  }
  return "unknown";
}

const char* ToString(GapMetric metric) {
  switch (metric) {
    case GapMetric::kOpr:
      return "opr";
    case GapMetric::kFpr:
      return "fpr";
    case GapMetric::kTpr:
      return "tpr";
    case GapMetric::kRocAuc:
      return "roc_auc";
    case GapMetric::kPrAuc:
      return "pr_auc";
    case GapMetric::kCalibration:
      return "calibration";
  }
  return "unknown";
}

BenchmarkCell MakeCell(Family family, const std::string& feature,
                       Method method, std::span<const std::uint8_t> y,
                       std::span<const double> scores, double threshold,
                       const GroupPartition& partition, int calibration_bins) {
  if (y.size() != scores.size() || y.size() != partition.rows()) {
    throw ConfigError("cell inputs have mismatched lengths");
  }
  BenchmarkCell cell;
  cell.family = family;
  cell.feature = feature;
  cell.method = method;
  cell.threshold = threshold;
  cell.roc_auc = RocAuc(y, scores);
  const auto labels = partition.scheme.Labels();
  const auto members = partition.Members();
  for (std::size_t g = 0; g < members.size(); ++g) {
    std::vector<std::uint8_t> gy;
    std::vector<double> gs;
    for (std::size_t r : members[g]) {
      gy.push_back(y[r]);
      gs.push_back(scores[r]);
    }
    const auto c = Confusion(gy, Classify(gs, threshold));
    GroupValues v;
    v.label = labels[g];
    v.size = gy.size();
    v.opr = c.OverallPositiveRate();
    v.fpr = c.FalsePositiveRate();
    v.tpr = c.TruePositiveRate();
    if (c.positives() > 0 && c.negatives() > 0) v.roc_auc = RocAuc(gy, gs);
    if (c.positives() > 0) v.pr_auc = PrAuc(gy, gs);
    v.calibration = MakeCalibrationCurve(gy, gs, calibration_bins);
    cell.groups.push_back(std::move(v));
  }
  cell.gaps = RecomputeGaps(cell);
  return cell;
}

GapArray RecomputeGaps(const BenchmarkCell& cell) {
  auto spread = [&](auto member) {
    std::vector<std::optional<double>> values;
    for (const auto& g : cell.groups) values.push_back(g.*member);
    return Spread(values);
  };
  GapArray gaps;
  gaps[static_cast<std::size_t>(GapMetric::kOpr)] = spread(&GroupValues::opr);
  gaps[static_cast<std::size_t>(GapMetric::kFpr)] = spread(&GroupValues::fpr);
  gaps[static_cast<std::size_t>(GapMetric::kTpr)] = spread(&GroupValues::tpr);
  gaps[static_cast<std::size_t>(GapMetric::kRocAuc)] =
      spread(&GroupValues::roc_auc);
  gaps[static_cast<std::size_t>(GapMetric::kPrAuc)] =
      spread(&GroupValues::pr_auc);
  gaps[static_cast<std::size_t>(GapMetric::kCalibration)] =
      MaxPairwiseCalibrationGap(cell.groups);
  return gaps;
}

int MaxGapTable::first_total() const {
  int t = 0;
  for (int p : first_points) t += p;
  return t;
}

int MaxGapTable::second_total() const {
  int t = 0;
  for (int p : second_points) t += p;
  return t;
}

MaxGapTable CompareMethods(std::span<const BenchmarkCell> cells, Method first,
                           Method second) {
  MaxGapTable table;
  table.first = first;
  table.second = second;
  using Key = std::tuple<Family, std::string>;
  std::map<Key, const BenchmarkCell*> a;
  std::map<Key, const BenchmarkCell*> b;
  for (const auto& c : cells) {
    if (c.method == first) a[{c.family, c.feature}] = &c;
    if (c.method == second) b[{c.family, c.feature}] = &c;
  }
  for (const auto& [key, ca] : a) {
    const auto it = b.find(key);
    if (it == b.end()) continue;
    const auto* cb = it->second;
    ++table.comparisons;
    for (std::size_t m = 0; m < kNumGapMetrics; ++m) {
      const auto& ga = ca->gaps[m];
      const auto& gb = cb->gaps[m];
      if (!ga || !gb) continue;
      if (*ga > *gb) ++table.first_points[m];
      if (*gb > *ga) ++table.second_points[m];
    }
  }
  return table;
}

BenchmarkConfig BenchmarkConfig::DeskScale() {
  BenchmarkConfig c;
  auto gbdt = LearnerConfig::Defaults(Family::kGbdt);
  gbdt.n_estimators = 200;
  gbdt.max_depth = 3;
  auto forest = LearnerConfig::Defaults(Family::kRandomForest);
  forest.n_estimators = 100;
  forest.max_depth = 3;
  auto logistic = LearnerConfig::Defaults(Family::kLogistic);
  for (auto* l : {&gbdt, &forest, &logistic}) l->seed = c.seed;
  c.learners = {gbdt, forest, logistic};
  return c;
}

void BenchmarkConfig::Validate() const {
  if (learners.empty()) throw ConfigError("benchmark needs at least one learner");
  for (const auto& l : learners) l.Validate();
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ConfigError("test_fraction must lie in (0, 1)");
  }
  if (fairdream_candidates < 1) {
    throw ConfigError("fairdream_candidates must be >= 1");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ConfigError("alpha must lie in [0, 1]");
  }
  if (grid_size < 1) throw ConfigError("grid_size must be >= 1");
  if (!(eta >= 0.0 && eta <= 1.0)) throw ConfigError("eta must lie in [0, 1]");
  if (calibration_bins < 2) throw ConfigError("calibration_bins must be >= 2");
  audit.Validate();
}

BenchmarkResult RunBenchmark(const DataTable& table,
                             const BenchmarkConfig& config) {
  config.Validate();
  const DataTable sample = config.subsample > 0
                               ? StratifiedSubsample(table, config.subsample,
                                                     config.seed)
                               : table;
  const auto split = Split(sample, config.test_fraction, config.seed);
  const auto& train = split.train;
  const auto& test = split.test;

  BenchmarkResult result;
  result.train_rows = train.rows();
  result.test_rows = test.rows();

  AuditConfig audit = config.audit;
  audit.fixed_threshold.reset();
  if (!config.features.empty()) audit.features = config.features;

  for (const auto& learner : config.learners) {
    const auto base =
        TrainPipeline(train, SampleWeights::Uniform(train.rows()), learner);
    const auto scan = RunAudit(base, test, audit);
    result.alerts.insert(result.alerts.end(), scan.alerts.begin(),
                         scan.alerts.end());
    for (const auto& fs : scan.scans) {
      const auto& feature = fs.partition.scheme.feature;
      const bool alerted =
          std::any_of(scan.alerts.begin(), scan.alerts.end(),
                      [&](const Alert& a) { return a.feature == feature; });
      if (!alerted) {
        result.skipped.push_back(
            {learner.family, feature, "no OPR ratio at or above threshold"});
        continue;
      }
      std::optional<BinStrategy> bins;
      if (const auto it = audit.bins.find(feature); it != audit.bins.end()) {
        bins = it->second;
      }

      FairDreamConfig fd;
      fd.objective = FairObjectiveTag::kDemographicParity;
      fd.candidates = config.fairdream_candidates;
      fd.alpha = config.alpha;
      fd.gap_floor = config.gap_floor;
      fd.bins = bins;
      fd.min_group_size = audit.min_group_size;
      fd.learner = learner;
      fd.threads = config.threads;
      const auto fair = RunFairDream(base, train, test, feature, fd);

      GridSearchConfig gs;
      gs.grid_size = config.grid_size;
      gs.lambda_bound = config.lambda_bound;
      gs.eta = config.eta;
      gs.ratio_threshold = audit.ratio_threshold;
      gs.bins = bins;
      gs.min_group_size = audit.min_group_size;
      gs.learner = learner;
      gs.threads = config.threads;
      const auto grid = RunGridSearch(base, train, test, feature, gs);

      const auto& partition = fair.audit_partition;
      const auto add = [&](Method method, const Evaluation& e) {
        result.cells.push_back(MakeCell(learner.family, feature, method,
                                        test.target(), e.scores,
                                        e.threshold.threshold, partition,
                                        config.calibration_bins));
      };
      add(Method::kBaseline, fair.baseline.evaluation);
      add(Method::kFairDream, fair.best_candidate().evaluation);
      add(Method::kGridSearch, grid.best_point().evaluation);
    }
  }
  SortAlerts(result.alerts);
  result.baseline_vs_fairdream =
      CompareMethods(result.cells, Method::kBaseline, Method::kFairDream);
  result.gridsearch_vs_fairdream =
      CompareMethods(result.cells, Method::kGridSearch, Method::kFairDream);
  return result;
}

void EmitReport(const BenchmarkResult& result,
                const std::filesystem::path& out_dir,
                const ReportFormats& formats) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw Error("cannot create output directory '" + out_dir.string() + "'");
  }
  for (const char* dir : {"cells", "calibration", "bars"}) {
    fs::remove_all(out_dir / dir);
  }
  for (const char* file :
       {"summary.json", "summary.txt", "max_gap_baseline_vs_fairdream.csv",
        "max_gap_gridsearch_vs_fairdream.csv"}) {
    fs::remove(out_dir / file);
  }

  WriteFile(out_dir / "summary.json", BenchmarkSummaryJson(result));
  if (formats.text) {
    std::string text;
    if (result.cells.empty()) {
      text = "No feature tripped an alert; zero corrections were run.\n";
    } else {
      text = "Baseline vs FairDream\n" +
             MaxGapTableText(result.baseline_vs_fairdream) +
             "\nGridSearch vs FairDream\n" +
             MaxGapTableText(result.gridsearch_vs_fairdream);
    }
    WriteFile(out_dir / "summary.txt", text);
  }
  if (!formats.csv) return;

  WriteFile(out_dir / "max_gap_baseline_vs_fairdream.csv",
            MaxGapTableCsv(result.baseline_vs_fairdream));
  WriteFile(out_dir / "max_gap_gridsearch_vs_fairdream.csv",
            MaxGapTableCsv(result.gridsearch_vs_fairdream));
  std::map<std::tuple<Family, std::string>, std::vector<const BenchmarkCell*>>
      pairs;
  for (const auto& cell : result.cells) {
    const auto stem = CellStem(cell);
    WriteFile(out_dir / "cells" / (stem + ".csv"), CellCsv(cell));
    std::string curves;
    for (const auto& g : cell.groups) {
      const auto body = CalibrationCurveCsv(g.calibration, g.label);
      // Keep a single header line.
      curves += curves.empty() ? body : body.substr(body.find('\n') + 1);
    }
    WriteFile(out_dir / "calibration" / (stem + ".csv"), curves);
    pairs[{cell.family, cell.feature}].push_back(&cell);
  }
  for (const auto& [key, cells] : pairs) {
    const auto stem = std::string(ToString(std::get<0>(key))) + "__" +
                      FileStem(std::get<1>(key));
    WriteFile(out_dir / "bars" / (stem + ".csv"), BarsCsv(cells));
  }
}

}  // namespace fairaudit
