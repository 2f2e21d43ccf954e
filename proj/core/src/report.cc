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

#include "fairaudit/report.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>

#include "fairaudit/error.h"
#include "json.hpp"

namespace fairaudit {
namespace {

using nlohmann::ordered_json;

ordered_json Envelope(const char* kind) {
  ordered_json j;
  j["format"] = kReportFormat;
  j["version"] = kReportVersion;
  j["kind"] = kind;
  return j;
}

ordered_json Optional(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string Number(double v) {
  char buf[32];
  const auto end = std::to_chars(buf, buf + sizeof buf, v).ptr;
  return std::string(buf, end);
}

std::string Cell(const std::optional<double>& v) { return v ? Number(*v) : ""; }

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string Fixed(const ordered_json& v, int digits = 4) {
  if (v.is_null()) return "-";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v.get<double>());
  return buf;
}

// Fixed-width console table; the first column is left aligned.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) {
    rows_.push_back(std::move(header));
  }
  void Add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  std::string Render() const {
    std::vector<std::size_t> width(rows_[0].size(), 0);
    for (const auto& r : rows_) {
      for (std::size_t c = 0; c < r.size(); ++c) {
        width[c] = std::max(width[c], r[c].size());
      }
    }
    std::string out;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const auto& r = rows_[i];
      for (std::size_t c = 0; c < r.size(); ++c) {
        const std::string pad(width[c] - r[c].size(), ' ');
        if (c > 0) out += "  ";
        out += c == 0 ? r[c] + pad : pad + r[c];
      }
      while (!out.empty() && out.back() == ' ') out.pop_back();
      out += '\n';
      if (i == 0) {
        std::size_t total = 0;
        for (std::size_t w : width) total += w;
        out += std::string(total + 2 * (width.size() - 1), '-') + '\n';
      }
    }
    return out;
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

ordered_json GroupsValue(const GroupReport& report) {
  ordered_json groups = ordered_json::array();
  for (const auto& g : report.groups) {
    groups.push_back({{"label", g.label},
                      {"size", g.size},
                      {"tp", g.counts.tp},
                      {"fp", g.counts.fp},
                      {"tn", g.counts.tn},
                      {"fn", g.counts.fn},
                      {"base_rate", Optional(g.base_rate)},
                      {"opr", Optional(g.opr)},
                      {"tpr", Optional(g.tpr)},
                      {"fpr", Optional(g.fpr)},
                      {"precision", Optional(g.precision)}});
  }
  return groups;
}

ordered_json AlertsValue(const std::vector<Alert>& alerts) {
  ordered_json out = ordered_json::array();
  for (const auto& a : alerts) {
    out.push_back({{"feature", a.feature},
                   {"disadvantaged", a.disadvantaged},
                   {"advantaged", a.advantaged},
                   {"disadvantaged_opr", a.disadvantaged_opr},
                   {"advantaged_opr", a.advantaged_opr},
                   {"ratio", Optional(a.ratio)},
                   {"infinite", a.infinite()},
                   {"disadvantaged_size", a.disadvantaged_size},
                   {"advantaged_size", a.advantaged_size}});
  }
  return out;
}

ordered_json CurveValue(const CalibrationCurve& c) {
  return {{"n_bins", c.n_bins},
          {"centers", c.centers},
          {"positive_rates", c.positive_rates},
          {"counts", c.counts}};
}

ordered_json GapsValue(const FairnessGaps& g) {
  return {{"objective", ToString(g.objective)},
          {"dp_gap", g.dp_gap},
          {"tpr_gap", Optional(g.tpr_gap)},
          {"fpr_gap", Optional(g.fpr_gap)},
          {"opr_ratio", Optional(g.opr_ratio)},
          {"objective_gap", g.objective_gap()}};
}

ordered_json GapsOrNull(const GroupReport& report) {
  try {
    return GapsValue(
        ComputeFairnessGaps(report, FairObjectiveTag::kDemographicParity));
  } catch (const UndefinedMetricError&) {
    return nullptr;
  }
}

ordered_json CandidateValue(const CandidateModel& c) {
  const auto& s = c.schedule;
  return {{"index", c.index},
          {"stat_score", c.stat_score},
          {"fair_score", c.fair_score},
          {"trade_off_score", c.trade_off_score},
          {"threshold", c.evaluation.threshold.threshold},
          {"f1", c.evaluation.threshold.f1},
          {"degenerate", c.evaluation.degenerate},
          {"schedule",
           {{"floor", s.floor},
            {"gaps", s.gaps},
            {"rate_disadvantaged", s.rate_disadvantaged},
            {"raw_weights", s.raw_weights},
            {"weights", s.weights},
            {"scale", s.scale}}},
          {"gaps", GapsOrNull(c.evaluation.report)},
          {"groups", GroupsValue(c.evaluation.report)}};
}

ordered_json TableValue(const MaxGapTable& t) {
  ordered_json first;
  ordered_json second;
  for (std::size_t m = 0; m < kNumGapMetrics; ++m) {
    first[ToString(kAllGapMetrics[m])] = t.first_points[m];
    second[ToString(kAllGapMetrics[m])] = t.second_points[m];
  }
  first["total"] = t.first_total();
  second["total"] = t.second_total();
  return {{"first", ToString(t.first)},
          {"second", ToString(t.second)},
          {"comparisons", t.comparisons},
          {"points", {{ToString(t.first), first}, {ToString(t.second), second}}}};
}

std::string AlertTableFromJson(const ordered_json& alerts) {
  if (alerts.empty()) return "No alerts.\n";
  TextTable t({"feature", "disadvantaged", "opr", "advantaged", "opr", "ratio",
               "sizes"});
  for (const auto& a : alerts) {
    t.Add({a.at("feature").get<std::string>(),
           a.at("disadvantaged").get<std::string>(),
           Fixed(a.at("disadvantaged_opr")), a.at("advantaged").get<std::string>(),
           Fixed(a.at("advantaged_opr")),
           a.at("infinite").get<bool>() ? "inf" : Fixed(a.at("ratio"), 2),
           a.at("disadvantaged_size").dump() + "/" + a.at("advantaged_size").dump()});
  }
  return t.Render();
}

std::string GroupTableFromJson(const ordered_json& groups) {
  TextTable t({"group", "size", "base_rate", "opr", "tpr", "fpr", "precision"});
  for (const auto& g : groups) {
    t.Add({g.at("label").get<std::string>(), g.at("size").dump(), Fixed(g.at("base_rate")),
           Fixed(g.at("opr")), Fixed(g.at("tpr")), Fixed(g.at("fpr")),
           Fixed(g.at("precision"))});
  }
  return t.Render();
}

std::string MaxGapTextFromJson(const ordered_json& table) {
  std::vector<std::string> header = {"method"};
  for (GapMetric m : kAllGapMetrics) header.push_back(ToString(m));
  header.push_back("total");
  TextTable t(header);
  for (const char* side : {"first", "second"}) {
    const auto name = table.at(side).get<std::string>();
    const auto& points = table.at("points").at(name);
    std::vector<std::string> row = {name};
    for (GapMetric m : kAllGapMetrics) row.push_back(points.at(ToString(m)).dump());
    row.push_back(points.at("total").dump());
    t.Add(row);
  }
  return t.Render() + "comparisons: " + table.at("comparisons").dump() + "\n";
}

std::string RenderAudit(const ordered_json& j) {
  std::string out = "Classification threshold: " + Fixed(j.at("threshold")) + "\n\n";
  out += AlertTableFromJson(j.at("alerts"));
  return out;
}

std::string RenderFairDream(const ordered_json& j) {
  std::string out = "FairDream on '" + j.at("feature").get<std::string>() +
                    "' (" + j.at("objective").get<std::string>() +
                    ", alpha " + Fixed(j.at("alpha")) + ")\n\n";
  TextTable t({"model", "stat_score", "fair_score", "trade_off", "threshold",
               "degenerate"});
  auto add = [&](const ordered_json& c, const std::string& name) {
    t.Add({name, Fixed(c.at("stat_score")), Fixed(c.at("fair_score")),
           Fixed(c.at("trade_off_score")), Fixed(c.at("threshold")),
           Fixed(c.at("degenerate"))});
  };
  add(j.at("baseline"), "baseline");
  for (const auto& c : j.at("candidates")) {
    add(c, "candidate " + c.at("index").dump());
  }
  out += t.Render();
  out += "\nSelected: candidate " + j.at("best").dump() + "\n";
  for (const auto& c : j.at("candidates")) {
    if (c.at("index") == j.at("best")) out += GroupTableFromJson(c.at("groups"));
  }
  out += "\nBaseline:\n" + GroupTableFromJson(j.at("baseline").at("groups"));
  return out;
}

std::string RenderGridSearch(const ordered_json& j) {
  std::string out = "GridSearch on '" + j.at("feature").get<std::string>() +
                    "' (eta " + Fixed(j.at("eta")) + ")\n\n";
  TextTable t({"point", "group", "lambda", "violation", "stat_score",
               "relabeled", "degenerate"});
  std::size_t i = 0;
  for (const auto& p : j.at("points")) {
    t.Add({std::to_string(i++), p.at("group").get<std::string>(),
           Fixed(p.at("lambda")), Fixed(p.at("violation")), Fixed(p.at("stat_score")),
           p.at("relabeled_rows").dump(), Fixed(p.at("degenerate"))});
  }
  out += t.Render();
  out += "\nSelected: point " + j.at("best").dump() + "\n";
  out += GroupTableFromJson(j.at("points").at(j.at("best").get<std::size_t>()).at("groups"));
  return out;
}

std::string RenderBenchmark(const ordered_json& j) {
  std::string out = "Benchmark: " + j.at("train_rows").dump() + " train rows, " +
                    j.at("test_rows").dump() + " audit rows, " +
                    std::to_string(j.at("cells").size()) + " cells\n\n";
  if (j.at("cells").empty()) {
    return out + "No feature tripped an alert; zero corrections were run.\n";
  }
  TextTable t({"family", "feature", "method", "roc_auc", "opr_gap", "fpr_gap",
               "tpr_gap", "calibration_gap"});
  for (const auto& c : j.at("cells")) {
    t.Add({c.at("family").get<std::string>(), c.at("feature").get<std::string>(),
           c.at("method").get<std::string>(), Fixed(c.at("roc_auc")),
           Fixed(c.at("gaps").at("opr")), Fixed(c.at("gaps").at("fpr")),
           Fixed(c.at("gaps").at("tpr")), Fixed(c.at("gaps").at("calibration"))});
  }
  out += t.Render();
  out += "\nBaseline vs FairDream\n" +
         MaxGapTextFromJson(j.at("tables").at("baseline_vs_fairdream"));
  out += "\nGridSearch vs FairDream\n" +
         MaxGapTextFromJson(j.at("tables").at("gridsearch_vs_fairdream"));
  return out;
}

}  // namespace

std::string GroupReportJson(const GroupReport& report) {
  auto j = Envelope("group_report");
  j["feature"] = report.feature;
  j["groups"] = GroupsValue(report);
  return j.dump(2) + "\n";
}

std::string FairnessGapsJson(const FairnessGaps& gaps) {
  auto j = Envelope("fairness_gaps");
  j.update(GapsValue(gaps));
  return j.dump(2) + "\n";
}

std::string CalibrationCurveJson(const CalibrationCurve& curve) {
  auto j = Envelope("calibration_curve");
  j.update(CurveValue(curve));
  return j.dump(2) + "\n";
}

std::string AuditReportJson(const AuditResult& audit) {
  auto j = Envelope("audit");
  j["threshold"] = audit.threshold;
  j["alerts"] = AlertsValue(audit.alerts);
  ordered_json scans = ordered_json::array();
  for (const auto& s : audit.scans) {
    scans.push_back({{"feature", s.report.feature},
                     {"kind", ToString(s.partition.scheme.kind)},
                     {"groups", GroupsValue(s.report)},
                     {"gaps", GapsOrNull(s.report)}});
  }
  j["scans"] = scans;
  return j.dump(2) + "\n";
}

std::string FairDreamReportJson(const FairDreamResult& result) {
  auto j = Envelope("fairdream");
  j["feature"] = result.feature;
  j["objective"] = ToString(result.objective);
  j["alpha"] = result.alpha;
  j["group_labels"] = result.audit_partition.scheme.Labels();
  j["audit_sizes"] = result.audit_partition.sizes;
  j["train_sizes"] = result.train_partition.sizes;
  j["baseline"] = CandidateValue(result.baseline);
  ordered_json candidates = ordered_json::array();
  for (const auto& c : result.candidates) candidates.push_back(CandidateValue(c));
  j["candidates"] = candidates;
  j["best"] = result.best_candidate().index;
  return j.dump(2) + "\n";
}

std::string GridSearchReportJson(const GridSearchResult& result) {
  auto j = Envelope("gridsearch");
  const auto labels = result.audit_partition.scheme.Labels();
  j["feature"] = result.feature;
  j["eta"] = result.eta;
  j["group_labels"] = labels;
  j["audit_sizes"] = result.audit_partition.sizes;
  j["train_sizes"] = result.train_partition.sizes;
  ordered_json swept = ordered_json::array();
  for (std::size_t g : result.swept_groups) swept.push_back(labels[g]);
  j["swept_groups"] = swept;
  ordered_json points = ordered_json::array();
  for (const auto& p : result.points) {
    points.push_back({{"group", labels[p.group]},
                      {"lambda", p.lambda},
                      {"multipliers", p.multipliers},
                      {"relabeled_rows", p.relabeled_rows},
                      {"violation", p.violation},
                      {"stat_score", p.stat_score},
                      {"threshold", p.evaluation.threshold.threshold},
                      {"degenerate", p.evaluation.degenerate},
                      {"constant_model", p.pipeline.model.is_constant()},
                      {"gaps", GapsOrNull(p.evaluation.report)},
                      {"groups", GroupsValue(p.evaluation.report)}});
  }
  j["points"] = points;
  j["best"] = result.best;
  return j.dump(2) + "\n";
}

std::string BenchmarkSummaryJson(const BenchmarkResult& result) {
  auto j = Envelope("benchmark");
  j["train_rows"] = result.train_rows;
  j["test_rows"] = result.test_rows;
  j["alerts"] = AlertsValue(result.alerts);
  ordered_json skipped = ordered_json::array();
  for (const auto& s : result.skipped) {
    skipped.push_back({{"family", ToString(s.family)},
                       {"feature", s.feature},
                       {"reason", s.reason}});
  }
  j["skipped"] = skipped;
  ordered_json cells = ordered_json::array();
  for (const auto& c : result.cells) {
    ordered_json gaps;
    for (std::size_t m = 0; m < kNumGapMetrics; ++m) {
      gaps[ToString(kAllGapMetrics[m])] = Optional(c.gaps[m]);
    }
    ordered_json groups = ordered_json::array();
    for (const auto& g : c.groups) {
      groups.push_back({{"label", g.label},
                        {"size", g.size},
                        {"opr", Optional(g.opr)},
                        {"fpr", Optional(g.fpr)},
                        {"tpr", Optional(g.tpr)},
                        {"roc_auc", Optional(g.roc_auc)},
                        {"pr_auc", Optional(g.pr_auc)},
                        {"calibration", CurveValue(g.calibration)}});
    }
    cells.push_back({{"family", ToString(c.family)},
                     {"feature", c.feature},
                     {"method", ToString(c.method)},
                     {"threshold", c.threshold},
                     {"roc_auc", c.roc_auc},
                     {"gaps", gaps},
                     {"groups", groups}});
  }
  j["cells"] = cells;
  ordered_json means;
  for (Method m : {Method::kBaseline, Method::kFairDream, Method::kGridSearch}) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& c : result.cells) {
      if (c.method == m) {
        sum += c.roc_auc;
        ++n;
      }
    }
    means[ToString(m)] = n ? ordered_json(sum / static_cast<double>(n))
                           : ordered_json(nullptr);
  }
  j["mean_roc_auc"] = means;
  j["tables"] = {{"baseline_vs_fairdream", TableValue(result.baseline_vs_fairdream)},
                 {"gridsearch_vs_fairdream",
                  TableValue(result.gridsearch_vs_fairdream)}};
  return j.dump(2) + "\n";
}

std::string GroupReportCsv(const GroupReport& report) {
  std::string out =
      "feature,group,size,tp,fp,tn,fn,base_rate,opr,tpr,fpr,precision\n";
  for (const auto& g : report.groups) {
    out += CsvField(report.feature) + "," + CsvField(g.label) + "," +
           std::to_string(g.size) + "," + std::to_string(g.counts.tp) + "," +
           std::to_string(g.counts.fp) + "," + std::to_string(g.counts.tn) +
           "," + std::to_string(g.counts.fn) + "," + Cell(g.base_rate) + "," +
           Cell(g.opr) + "," + Cell(g.tpr) + "," + Cell(g.fpr) + "," +
           Cell(g.precision) + "\n";
  }
  return out;
}

std::string CalibrationCurveCsv(const CalibrationCurve& curve,
                                const std::string& group) {
  std::string out = "group,mean_score,positive_rate,count\n";
  for (std::size_t i = 0; i < curve.points(); ++i) {
    out += CsvField(group) + "," + Number(curve.centers[i]) + "," +
           Number(curve.positive_rates[i]) + "," +
           std::to_string(curve.counts[i]) + "\n";
  }
  return out;
}

std::string AlertsCsv(const std::vector<Alert>& alerts) {
  std::string out =
      "feature,disadvantaged,advantaged,disadvantaged_opr,advantaged_opr,ratio,"
      "disadvantaged_size,advantaged_size\n";
  for (const auto& a : alerts) {
    out += CsvField(a.feature) + "," + CsvField(a.disadvantaged) + "," +
           CsvField(a.advantaged) + "," + Number(a.disadvantaged_opr) + "," +
           Number(a.advantaged_opr) + "," + (a.ratio ? Number(*a.ratio) : "inf") +
           "," + std::to_string(a.disadvantaged_size) + "," +
           std::to_string(a.advantaged_size) + "\n";
  }
  return out;
}

std::string CandidatesCsv(const FairDreamResult& result) {
  const auto labels = result.audit_partition.scheme.Labels();
  std::string out = "index,stat_score,fair_score,trade_off_score,threshold,"
                    "degenerate,selected";
  for (const auto& l : labels) out += "," + CsvField("weight:" + l);
  out += "\n";
  auto row = [&](const CandidateModel& c, bool selected) {
    out += std::to_string(c.index) + "," + Number(c.stat_score) + "," +
           Number(c.fair_score) + "," + Number(c.trade_off_score) + "," +
           Number(c.evaluation.threshold.threshold) + "," +
           (c.evaluation.degenerate ? "1" : "0") + "," + (selected ? "1" : "0");
    for (double w : c.schedule.weights) out += "," + Number(w);
    out += "\n";
  };
  row(result.baseline, false);
  for (std::size_t i = 0; i < result.candidates.size(); ++i) {
    row(result.candidates[i], i == result.best);
  }
  return out;
}

std::string TradeOffScatterCsv(const FairDreamResult& result) {
  std::string out = "model,stat_score,fair_score\n";
  out += "baseline," + Number(result.baseline.stat_score) + "," +
         Number(result.baseline.fair_score) + "\n";
  for (const auto& c : result.candidates) {
    out += "candidate_" + std::to_string(c.index) + "," + Number(c.stat_score) +
           "," + Number(c.fair_score) + "\n";
  }
  return out;
}

std::string GridPointsCsv(const GridSearchResult& result) {
  const auto labels = result.audit_partition.scheme.Labels();
  std::string out = "point,group,lambda,violation,stat_score,threshold,"
                    "relabeled_rows,degenerate,selected";
  for (const auto& l : labels) {
    for (const char* r : {"opr", "tpr", "fpr"}) {
      out += "," + CsvField(std::string(r) + ":" + l);
    }
  }
  out += "\n";
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const auto& p = result.points[i];
    out += std::to_string(i) + "," + CsvField(labels[p.group]) + "," +
           Number(p.lambda) + "," + Number(p.violation) + "," +
           Number(p.stat_score) + "," + Number(p.evaluation.threshold.threshold) +
           "," + std::to_string(p.relabeled_rows) + "," +
           (p.evaluation.degenerate ? "1" : "0") + "," +
           (i == result.best ? "1" : "0");
    for (const auto& g : p.evaluation.report.groups) {
      out += "," + Cell(g.opr) + "," + Cell(g.tpr) + "," + Cell(g.fpr);
    }
    out += "\n";
  }
  return out;
}

std::string CellCsv(const BenchmarkCell& cell) {
  // Group rows carry per-group values; the calibration column holds the
  // group's distance to the diagonal. The trailing "gap" row holds the gap
  // columns, with the inter-group calibration area last.
  std::string out = "family,feature,method,group,size,opr,fpr,tpr,roc_auc,"
                    "pr_auc,calibration\n";
  const std::string prefix = std::string(ToString(cell.family)) + "," +
                             CsvField(cell.feature) + "," +
                             ToString(cell.method) + ",";
  for (const auto& g : cell.groups) {
    std::optional<double> diagonal;
    if (g.calibration.points() >= 2) diagonal = CalibrationError(g.calibration);
    out += prefix + CsvField(g.label) + "," + std::to_string(g.size) + "," +
           Cell(g.opr) + "," + Cell(g.fpr) + "," + Cell(g.tpr) + "," +
           Cell(g.roc_auc) + "," + Cell(g.pr_auc) + "," + Cell(diagonal) + "\n";
  }
  out += prefix + "gap,";
  for (std::size_t m = 0; m < kNumGapMetrics; ++m) {
    out += "," + Cell(cell.gaps[m]);
  }
  return out + "\n";
}

std::string MaxGapTableCsv(const MaxGapTable& table) {
  std::string out = "method";
  for (GapMetric m : kAllGapMetrics) out += std::string(",") + ToString(m);
  out += ",total\n";
  auto row = [&](Method method, const std::array<int, kNumGapMetrics>& p,
                 int total) {
    out += ToString(method);
    for (int v : p) out += "," + std::to_string(v);
    out += "," + std::to_string(total) + "\n";
  };
  row(table.first, table.first_points, table.first_total());
  row(table.second, table.second_points, table.second_total());
  return out;
}

std::string AlertTable(const std::vector<Alert>& alerts) {
  return AlertTableFromJson(AlertsValue(alerts));
}

std::string GroupReportTable(const GroupReport& report) {
  return GroupTableFromJson(GroupsValue(report));
}

std::string MaxGapTableText(const MaxGapTable& table) {
  return MaxGapTextFromJson(TableValue(table));
}

std::string RenderReport(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != kReportFormat) {
    throw ConfigError("not a fairaudit report document");
  }
  if (j.value("version", 0) != kReportVersion) {
    throw ConfigError("unsupported report version " + j.at("version").dump());
  }
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "audit") return RenderAudit(j);
    if (kind == "fairdream") return RenderFairDream(j);
    if (kind == "gridsearch") return RenderGridSearch(j);
    if (kind == "benchmark") return RenderBenchmark(j);
    if (kind == "group_report") {
      return "Feature '" + j.at("feature").get<std::string>() + "'\n" +
             GroupTableFromJson(j.at("groups"));
    }
    if (kind == "fairness_gaps" || kind == "calibration_curve") {
      return j.dump(2) + "\n";
    }
    throw ConfigError("unknown report kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

void WriteFile(const std::filesystem::path& path, const std::string& contents) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << contents;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace fairaudit
