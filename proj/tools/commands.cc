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

#include "commands.h"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "fairaudit/audit.h"
#include "fairaudit/benchmark.h"
#include "fairaudit/error.h"
#include "fairaudit/fairdream.h"
#include "fairaudit/gridsearch.h"
#include "fairaudit/model_io.h"
#include "fairaudit/report.h"
#include "fairaudit/table.h"
#include "run_config.h"

namespace fairaudit::cli {
namespace {

namespace fs = std::filesystem;

struct Flags {
  std::string config;
  std::string data;
  std::string schema;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  std::optional<std::size_t> subsample;
  std::optional<int> threads;

  std::string model;
  std::vector<std::string> features;
  std::string feature;
  std::string method;
  std::string objective;
  std::optional<int> candidates;
  std::vector<std::string> families;
  std::string report;
};

std::vector<std::string> SplitList(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

RunConfig Resolve(const Flags& f) {
  RunConfig c = f.config.empty() ? RunConfig{} : LoadRunConfig(f.config);
  // Flags are relative to the working directory, not the config file.
  if (!f.data.empty()) c.data = f.data;
  if (!f.schema.empty()) c.schema = f.schema;
  if (!f.out.empty()) c.out = f.out;
  if (!f.format.empty()) c.formats = ParseFormats(f.format);
  if (f.subsample) c.subsample = *f.subsample;
  if (f.threads) c.threads = *f.threads;
  if (f.seed) c.SetSeed(*f.seed);
  const auto features = SplitList(f.features);
  if (!features.empty()) c.audit.features = features;
  if (!f.objective.empty()) c.objective = ParseObjective(f.objective);
  if (f.candidates) c.candidates = *f.candidates;
  const auto families = SplitList(f.families);
  if (!families.empty()) {
    std::vector<LearnerConfig> chosen;
    const auto pool = c.ToBenchmark().learners;
    for (const auto& name : families) {
      const Family family = ParseFamily(name);
      auto it = std::find_if(pool.begin(), pool.end(), [&](const auto& l) {
        return l.family == family;
      });
      auto l = it != pool.end() ? *it : LearnerConfig::Defaults(family);
      l.seed = c.seed;
      chosen.push_back(l);
    }
    c.learners = chosen;
  }
  c.Validate();
  return c;
}

struct Prepared {
  DataTable table;
  SplitResult split;
};

Prepared Prepare(const RunConfig& c) {
  const auto schema = LoadSchema(c.schema);
  auto full = LoadTable(c.data, schema);
  Prepared p;
  p.table = c.subsample > 0 ? StratifiedSubsample(full, c.subsample, c.seed)
                            : std::move(full);
  p.split = Split(p.table, c.test_fraction, c.seed);
  return p;
}

// Outputs of one command, written only after every computation succeeded.
class Outputs {
 public:
  void Add(fs::path relative, std::string contents) {
    files_.emplace_back(std::move(relative), std::move(contents));
  }
  // Removes `stale` entries under dir, then writes every file.
  void Commit(const fs::path& dir, const std::vector<fs::path>& stale) const {
    for (const auto& s : stale) fs::remove_all(dir / s);
    for (const auto& [path, contents] : files_) WriteFile(dir / path, contents);
  }

 private:
  std::vector<std::pair<fs::path, std::string>> files_;
};

Pipeline TrainBaseline(const RunConfig& c, const DataTable& train) {
  return TrainPipeline(train, SampleWeights::Uniform(train.rows()), c.learner);
}

int RunAuditCommand(const Flags& f, std::ostream& out) {
  const auto c = Resolve(f);
  const auto p = Prepare(c);
  const Pipeline model = f.model.empty() ? TrainBaseline(c, p.split.train)
                                         : LoadPipeline(f.model);
  const auto result = RunAudit(model, p.split.test, c.audit);

  Outputs o;
  o.Add("model.json", SerializePipeline(model));
  if (c.formats.text) o.Add("audit.json", AuditReportJson(result));
  if (c.formats.csv) {
    o.Add("alerts.csv", AlertsCsv(result.alerts));
    for (const auto& s : result.scans) {
      o.Add(fs::path("groups") / (s.report.feature + ".csv"),
            GroupReportCsv(s.report));
    }
  }
  o.Commit(c.out, {"model.json", "audit.json", "alerts.csv", "groups"});

  out << "Audited " << p.split.test.rows() << " held-out rows at threshold "
      << result.threshold << "\n\n";
  if (result.alerts.empty()) {
    out << "No alerts: no group's overall positive rate is "
        << c.audit.ratio_threshold << "x below the best group of its feature.\n";
  } else {
    out << AlertTable(result.alerts);
  }
  return kExitOk;
}

int RunCorrectCommand(const Flags& f, std::ostream& out) {
  const auto c = Resolve(f);
  const auto p = Prepare(c);
  if (!p.table.FindColumn(f.feature)) {
    throw ConfigError("unknown feature '" + f.feature + "'");
  }
  const auto base = TrainBaseline(c, p.split.train);
  std::optional<BinStrategy> bins;
  if (auto it = c.audit.bins.find(f.feature); it != c.audit.bins.end()) {
    bins = it->second;
  }
  AuditConfig scan = c.audit;
  scan.features = {f.feature};
  const auto audit = RunAudit(base, p.split.test, scan);
  if (audit.alerts.empty()) {
    out << "Note: the baseline raises no alert on '" << f.feature
        << "'; gaps are already small. Correcting anyway.\n\n";
  }

  Outputs o;
  std::string report;
  if (f.method == "fairdream") {
    FairDreamConfig fd;
    fd.objective = c.objective;
    fd.candidates = c.candidates;
    fd.alpha = c.alpha;
    fd.gap_floor = c.gap_floor;
    fd.bins = bins;
    fd.min_group_size = c.audit.min_group_size;
    fd.learner = c.learner;
    fd.threads = c.threads;
    const auto r = RunFairDream(base, p.split.train, p.split.test, f.feature, fd);
    report = FairDreamReportJson(r);
    o.Add("model.json", SerializePipeline(r.best_candidate().pipeline));
    if (c.formats.text) o.Add("fairdream.json", report);
    if (c.formats.csv) {
      o.Add("candidates.csv", CandidatesCsv(r));
      o.Add("tradeoff.csv", TradeOffScatterCsv(r));
      o.Add("selected_groups.csv",
            GroupReportCsv(r.best_candidate().evaluation.report));
    }
  } else {
    GridSearchConfig gs;
    gs.grid_size = c.grid_size;
    gs.lambda_bound = c.lambda_bound;
    gs.eta = c.eta;
    gs.ratio_threshold = c.audit.ratio_threshold;
    gs.bins = bins;
    gs.min_group_size = c.audit.min_group_size;
    gs.learner = c.learner;
    gs.threads = c.threads;
    const auto r = RunGridSearch(base, p.split.train, p.split.test, f.feature, gs);
    report = GridSearchReportJson(r);
    o.Add("model.json", SerializePipeline(r.best_point().pipeline));
    if (c.formats.text) o.Add("gridsearch.json", report);
    if (c.formats.csv) {
      o.Add("grid_points.csv", GridPointsCsv(r));
      o.Add("selected_groups.csv",
            GroupReportCsv(r.best_point().evaluation.report));
    }
  }
  o.Commit(c.out, {"model.json", "fairdream.json", "gridsearch.json",
                   "candidates.csv", "tradeoff.csv", "grid_points.csv",
                   "selected_groups.csv"});
  out << RenderReport(report);
  return kExitOk;
}

int RunBenchmarkCommand(const Flags& f, std::ostream& out) {
  const auto c = Resolve(f);
  const auto schema = LoadSchema(c.schema);
  const auto table = LoadTable(c.data, schema);
  const auto result = RunBenchmark(table, c.ToBenchmark());
  EmitReport(result, c.out, c.formats);
  out << RenderReport(BenchmarkSummaryJson(result));
  return kExitOk;
}

int RunReportCommand(const Flags& f, std::ostream& out) {
  std::ifstream in(f.report);
  if (!in) throw ConfigError("cannot open report '" + f.report + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  out << RenderReport(buf.str());
  return kExitOk;
}

void AddCommon(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON run configuration")
      ->check(CLI::ExistingFile);
  cmd->add_option("--data", f.data, "CSV dataset");
  cmd->add_option("--schema", f.schema, "JSON schema of the dataset");
  cmd->add_option("--seed", f.seed, "Seed for sampling, splitting and training");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--format", f.format, "Output formats: text, csv or text,csv");
  cmd->add_option("--subsample", f.subsample,
                  "Stratified row subsample before splitting (0 = all rows)");
  cmd->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
}

}  // namespace

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Fairness audit and correction toolkit", "fairaudit"};
  app.require_subcommand(1);
  Flags f;

  auto* audit = app.add_subcommand("audit", "Train or load a model and scan for alerts");
  AddCommon(audit, f);
  audit->add_option("--model", f.model, "Saved pipeline to audit instead of training")
      ->check(CLI::ExistingFile);
  audit->add_option("--features", f.features, "Features to scan (comma separated)");

  auto* correct = app.add_subcommand("correct", "Correct one feature");
  AddCommon(correct, f);
  correct->add_option("--feature", f.feature, "Sensitive feature")->required();
  correct->add_option("--method", f.method, "fairdream or gridsearch")
      ->required()
      ->check(CLI::IsMember({"fairdream", "gridsearch"}));
  correct->add_option("--objective", f.objective,
                      "demographic_parity or equalized_odds");
  correct->add_option("--candidates", f.candidates, "FairDream candidate count");

  auto* bench = app.add_subcommand("benchmark", "Run the comparison benchmark");
  AddCommon(bench, f);
  bench->add_option("--families", f.families,
                    "Learner families (gbdt, random_forest, logistic)");
  bench->add_option("--features", f.features, "Features to scan (comma separated)");

  auto* report = app.add_subcommand("report", "Render a report file as text");
  report->add_option("file", f.report, "Report JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (*audit) return RunAuditCommand(f, out);
    if (*correct) return RunCorrectCommand(f, out);
    if (*bench) return RunBenchmarkCommand(f, out);
    return RunReportCommand(f, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

}  // namespace fairaudit::cli
