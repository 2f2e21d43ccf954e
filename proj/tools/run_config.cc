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

#include "run_config.h"

#include <fstream>
#include <set>
#include <sstream>

#include "fairaudit/error.h"
#include "json.hpp"

namespace fairaudit::cli {
namespace {

using nlohmann::json;

void CheckKeys(const json& j, const std::set<std::string>& allowed,
               const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
void Read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

std::filesystem::path ResolvePath(const json& j, const char* key,
                                  const std::filesystem::path& base_dir) {
  std::filesystem::path p = j.at(key).get<std::string>();
  return p.is_absolute() ? p : base_dir / p;
}

LearnerConfig ParseLearner(const json& j) {
  CheckKeys(j,
            {"family", "n_estimators", "max_depth", "learning_rate",
             "l2_penalty", "min_child_weight", "n_thresholds",
             "max_iterations", "tolerance"},
            "learner");
  const auto family = ParseFamily(j.value("family", std::string("gbdt")));
  auto c = LearnerConfig::Defaults(family);
  Read(j, "n_estimators", c.n_estimators);
  Read(j, "max_depth", c.max_depth);
  Read(j, "learning_rate", c.learning_rate);
  Read(j, "l2_penalty", c.l2_penalty);
  Read(j, "min_child_weight", c.min_child_weight);
  Read(j, "n_thresholds", c.n_thresholds);
  Read(j, "max_iterations", c.max_iterations);
  Read(j, "tolerance", c.tolerance);
  return c;
}

BinStrategy ParseBins(const json& j, const std::string& feature) {
  const std::string where = "bins for '" + feature + "'";
  CheckKeys(j, {"quantiles", "edges", "categories"}, where);
  if (j.size() != 1) {
    throw ConfigError(where + " needs exactly one of quantiles/edges/categories");
  }
  if (j.contains("quantiles")) return QuantileBins{j["quantiles"].get<int>()};
  if (j.contains("edges")) {
    return ExplicitEdges{j["edges"].get<std::vector<double>>()};
  }
  return CategoryGroups{
      j["categories"].get<std::vector<std::vector<std::string>>>()};
}

AuditConfig ParseAudit(const json& j) {
  CheckKeys(j,
            {"features", "ratio_threshold", "min_group_size", "threshold",
             "bins"},
            "audit");
  AuditConfig a;
  Read(j, "features", a.features);
  Read(j, "ratio_threshold", a.ratio_threshold);
  Read(j, "min_group_size", a.min_group_size);
  if (j.contains("threshold") && !j["threshold"].is_null()) {
    a.fixed_threshold = j["threshold"].get<double>();
  }
  if (j.contains("bins")) {
    for (const auto& [feature, spec] : j["bins"].items()) {
      a.bins[feature] = ParseBins(spec, feature);
    }
  }
  return a;
}

}  // namespace

void RunConfig::SetSeed(std::uint64_t value) {
  seed = value;
  learner.seed = value;
  for (auto& l : learners) l.seed = value;
}

void RunConfig::Validate() const {
  if (data.empty()) throw ConfigError("no dataset given (data)");
  if (schema.empty()) throw ConfigError("no schema given (schema)");
  if (!std::filesystem::is_regular_file(data)) {
    throw ConfigError("dataset '" + data.string() + "' does not exist");
  }
  if (!std::filesystem::is_regular_file(schema)) {
    throw ConfigError("schema '" + schema.string() + "' does not exist");
  }
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ConfigError("test_fraction must lie in (0, 1)");
  }
  learner.Validate();
  for (const auto& l : learners) l.Validate();
  audit.Validate();
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ConfigError("alpha must lie in [0, 1]");
  }
  if (candidates < 1 || benchmark_candidates < 1) {
    throw ConfigError("candidate counts must be >= 1");
  }
  if (!(gap_floor > 0.0 && gap_floor <= 1.0)) {
    throw ConfigError("gap_floor must lie in (0, 1]");
  }
  if (grid_size < 1 || benchmark_grid_size < 1) {
    throw ConfigError("grid sizes must be >= 1");
  }
  if (!(lambda_bound >= 0.0)) throw ConfigError("lambda_bound must be >= 0");
  if (!(eta >= 0.0 && eta <= 1.0)) throw ConfigError("eta must lie in [0, 1]");
  if (calibration_bins < 2) throw ConfigError("calibration_bins must be >= 2");
  if (!formats.text && !formats.csv) {
    throw ConfigError("at least one output format is required");
  }
}

BenchmarkConfig RunConfig::ToBenchmark() const {
  auto b = BenchmarkConfig::DeskScale();
  if (!learners.empty()) b.learners = learners;
  b.test_fraction = test_fraction;
  b.subsample = subsample;
  b.seed = seed;
  b.audit = audit;
  b.fairdream_candidates = benchmark_candidates;
  b.alpha = alpha;
  b.gap_floor = gap_floor;
  b.grid_size = benchmark_grid_size;
  b.lambda_bound = lambda_bound;
  b.eta = eta;
  b.calibration_bins = calibration_bins;
  b.threads = threads;
  for (auto& l : b.learners) l.seed = seed;
  return b;
}

RunConfig ParseRunConfig(const std::string& json_text,
                         const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig c;
  try {
    CheckKeys(j,
              {"data", "schema", "subsample", "test_fraction", "seed",
               "learner", "learners", "audit", "objective", "alpha",
               "candidates", "gap_floor", "gridsearch", "benchmark",
               "calibration_bins", "threads", "out", "formats"},
              "config");
    if (j.contains("data")) c.data = ResolvePath(j, "data", base_dir);
    if (j.contains("schema")) c.schema = ResolvePath(j, "schema", base_dir);
    if (j.contains("out")) c.out = ResolvePath(j, "out", base_dir);
    Read(j, "subsample", c.subsample);
    Read(j, "test_fraction", c.test_fraction);
    if (j.contains("learner")) c.learner = ParseLearner(j["learner"]);
    if (j.contains("learners")) {
      for (const auto& l : j["learners"]) c.learners.push_back(ParseLearner(l));
    }
    if (j.contains("audit")) c.audit = ParseAudit(j["audit"]);
    if (j.contains("objective")) {
      c.objective = ParseObjective(j["objective"].get<std::string>());
    }
    Read(j, "alpha", c.alpha);
    Read(j, "candidates", c.candidates);
    Read(j, "gap_floor", c.gap_floor);
    if (j.contains("gridsearch")) {
      const auto& g = j["gridsearch"];
      CheckKeys(g, {"grid_size", "lambda_bound", "eta"}, "gridsearch");
      Read(g, "grid_size", c.grid_size);
      Read(g, "lambda_bound", c.lambda_bound);
      Read(g, "eta", c.eta);
    }
    if (j.contains("benchmark")) {
      const auto& b = j["benchmark"];
      CheckKeys(b, {"candidates", "grid_size"}, "benchmark");
      Read(b, "candidates", c.benchmark_candidates);
      Read(b, "grid_size", c.benchmark_grid_size);
    }
    Read(j, "calibration_bins", c.calibration_bins);
    Read(j, "threads", c.threads);
    if (j.contains("formats")) {
      const auto& f = j["formats"];
      if (f.is_string()) {
        c.formats = ParseFormats(f.get<std::string>());
      } else {
        std::string joined;
        for (const auto& s : f) joined += (joined.empty() ? "" : ",") + s.get<std::string>();
        c.formats = ParseFormats(joined);
      }
    }
    c.SetSeed(j.value("seed", c.seed));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return c;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseRunConfig(buf.str(), path.parent_path());
}

ReportFormats ParseFormats(const std::string& spec) {
  ReportFormats f{false, false};
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "text") {
      f.text = true;
    } else if (item == "csv") {
      f.csv = true;
    } else {
      throw ConfigError("unknown format '" + item + "' (expected text or csv)");
    }
  }
  if (!f.text && !f.csv) throw ConfigError("no output format given");
  return f;
}

}  // namespace fairaudit::cli
