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

#include "fairaudit/model_io.h"

#include <fstream>
#include <sstream>

#include "fairaudit/error.h"
#include "json.hpp"

namespace fairaudit {
namespace {

using nlohmann::json;

json ConfigToJson(const LearnerConfig& c) {
  return {{"family", ToString(c.family)},
          {"n_estimators", c.n_estimators},
          {"max_depth", c.max_depth},
          {"learning_rate", c.learning_rate},
          {"l2_penalty", c.l2_penalty},
          {"min_child_weight", c.min_child_weight},
          {"n_thresholds", c.n_thresholds},
          {"max_iterations", c.max_iterations},
          {"tolerance", c.tolerance},
          {"seed", c.seed}};
}

LearnerConfig ConfigFromJson(const json& j) {
  LearnerConfig c;
  c.family = ParseFamily(j.at("family").get<std::string>());
  c.n_estimators = j.at("n_estimators").get<int>();
  c.max_depth = j.at("max_depth").get<int>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.l2_penalty = j.at("l2_penalty").get<double>();
  c.min_child_weight = j.at("min_child_weight").get<double>();
  c.n_thresholds = j.at("n_thresholds").get<int>();
  c.max_iterations = j.at("max_iterations").get<int>();
  c.tolerance = j.at("tolerance").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

json TreeToJson(const Tree& tree) {
  json feature = json::array();
  json threshold = json::array();
  json left = json::array();
  json right = json::array();
  json value = json::array();
  for (const auto& n : tree.nodes) {
    feature.push_back(n.feature);
    threshold.push_back(n.threshold);
    left.push_back(n.left);
    right.push_back(n.right);
    value.push_back(n.value);
  }
  return {{"feature", feature}, {"threshold", threshold}, {"left", left},
          {"right", right},     {"value", value}};
}

Tree TreeFromJson(const json& j) {
  const auto feature = j.at("feature").get<std::vector<int>>();
  const auto threshold = j.at("threshold").get<std::vector<double>>();
  const auto left = j.at("left").get<std::vector<int>>();
  const auto right = j.at("right").get<std::vector<int>>();
  const auto value = j.at("value").get<std::vector<double>>();
  const std::size_t n = feature.size();
  if (threshold.size() != n || left.size() != n || right.size() != n ||
      value.size() != n || n == 0) {
    throw ParseError("malformed tree in model file");
  }
  Tree tree;
  tree.nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& node = tree.nodes[i];
    node.feature = feature[i];
    node.threshold = threshold[i];
    node.left = left[i];
    node.right = right[i];
    node.value = value[i];
    if (node.feature >= 0 &&
        (node.left <= static_cast<int>(i) || node.right <= static_cast<int>(i) ||
         node.left >= static_cast<int>(n) || node.right >= static_cast<int>(n))) {
      throw ParseError("malformed tree links in model file");
    }
  }
  return tree;
}

json ModelToJson(const TrainedModel& model) {
  json j;
  j["format"] = "fairaudit-model";
  j["version"] = kModelFormatVersion;
  j["family"] = ToString(model.family());
  const auto& meta = model.metadata();
  j["metadata"] = {{"config", ConfigToJson(meta.config)},
                   {"weight_digest", meta.weight_digest},
                   {"rows", meta.rows},
                   {"cols", meta.cols},
                   {"loss_history", meta.loss_history}};
  const auto& params = model.parameters();
  if (const auto* e = std::get_if<TreeEnsemble>(&params)) {
    json trees = json::array();
    for (const auto& t : e->trees) trees.push_back(TreeToJson(t));
    j["parameters"] = {{"kind", "tree_ensemble"},
                       {"base_margin", e->base_margin},
                       {"trees", trees}};
  } else if (const auto* l = std::get_if<LinearModel>(&params)) {
    j["parameters"] = {{"kind", "linear"},
                       {"coefficients", l->coefficients},
                       {"intercept", l->intercept},
                       {"iterations", l->iterations},
                       {"gradient_norm", l->gradient_norm}};
  } else {
    j["parameters"] = {{"kind", "constant"},
                       {"score", std::get<ConstantModel>(params).score}};
  }
  return j;
}

TrainedModel ModelFromJson(const json& j) {
  if (j.value("format", "") != "fairaudit-model") {
    throw ParseError("not a fairaudit model document");
  }
  if (j.value("version", 0) != kModelFormatVersion) {
    throw ParseError("unsupported model format version");
  }
  const Family family = ParseFamily(j.at("family").get<std::string>());
  const auto& m = j.at("metadata");
  TrainingMetadata meta;
  meta.config = ConfigFromJson(m.at("config"));
  meta.weight_digest = m.at("weight_digest").get<std::uint64_t>();
  meta.rows = m.at("rows").get<std::size_t>();
  meta.cols = m.at("cols").get<std::size_t>();
  meta.loss_history = m.at("loss_history").get<std::vector<double>>();

  const auto& p = j.at("parameters");
  const auto kind = p.at("kind").get<std::string>();
  if (kind == "tree_ensemble") {
    TreeEnsemble e;
    e.base_margin = p.at("base_margin").get<double>();
    for (const auto& t : p.at("trees")) e.trees.push_back(TreeFromJson(t));
    return TrainedModel(family, std::move(e), std::move(meta));
  }
  if (kind == "linear") {
    LinearModel l;
    l.coefficients = p.at("coefficients").get<std::vector<double>>();
    l.intercept = p.at("intercept").get<double>();
    l.iterations = p.at("iterations").get<int>();
    l.gradient_norm = p.at("gradient_norm").get<double>();
    if (l.coefficients.size() != meta.cols) {
      throw ParseError("coefficient count does not match model columns");
    }
    return TrainedModel(family, std::move(l), std::move(meta));
  }
  if (kind == "constant") {
    return TrainedModel(family, ConstantModel{p.at("score").get<double>()},
                        std::move(meta));
  }
  throw ParseError("unknown model parameter kind '" + kind + "'");
}

json EncoderToJson(const Encoder& encoder) {
  json cols = json::array();
  for (const auto& c : encoder.columns()) {
    cols.push_back({{"name", c.name},
                    {"kind", ToString(c.kind)},
                    {"mean", c.mean},
                    {"scale", c.scale},
                    {"categories", c.categories}});
  }
  return {{"mode", ToString(encoder.mode())}, {"columns", cols}};
}

Encoder EncoderFromJson(const json& j) {
  const auto mode_name = j.at("mode").get<std::string>();
  EncodingMode mode;
  if (mode_name == "tree") {
    mode = EncodingMode::kTree;
  } else if (mode_name == "linear") {
    mode = EncodingMode::kLinear;
  } else {
    throw ParseError("unknown encoding mode '" + mode_name + "'");
  }
  std::vector<Encoder::ColumnEncoding> columns;
  for (const auto& c : j.at("columns")) {
    Encoder::ColumnEncoding e;
    e.name = c.at("name").get<std::string>();
    const auto kind = c.at("kind").get<std::string>();
    e.kind = kind == "numeric" ? ColumnKind::kNumeric : ColumnKind::kCategorical;
    e.mean = c.at("mean").get<double>();
    e.scale = c.at("scale").get<double>();
    e.categories = c.at("categories").get<std::vector<std::string>>();
    columns.push_back(std::move(e));
  }
  return Encoder::FromParts(mode, std::move(columns));
}

json Parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what());
  }
}

}  // namespace

std::string SerializeModel(const TrainedModel& model) {
  return ModelToJson(model).dump(1);
}

TrainedModel DeserializeModel(const std::string& text) {
  try {
    return ModelFromJson(Parse(text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model document: ") + e.what());
  }
}

std::string SerializePipeline(const Pipeline& pipeline) {
  json j;
  j["format"] = "fairaudit-pipeline";
  j["version"] = kModelFormatVersion;
  j["encoder"] = EncoderToJson(pipeline.encoder);
  j["model"] = ModelToJson(pipeline.model);
  return j.dump(1);
}

Pipeline DeserializePipeline(const std::string& text) {
  const json j = Parse(text);
  try {
    if (j.value("format", "") != "fairaudit-pipeline" ||
        j.value("version", 0) != kModelFormatVersion) {
      throw ParseError("not a fairaudit pipeline document (version 1)");
    }
    Pipeline p;
    p.encoder = EncoderFromJson(j.at("encoder"));
    p.model = ModelFromJson(j.at("model"));
    if (p.encoder.output_columns() != p.model.metadata().cols) {
      throw ParseError("encoder and model column counts differ");
    }
    return p;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed pipeline document: ") + e.what());
  }
}

void SavePipeline(const Pipeline& pipeline, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write model file: " + path.string());
  out << SerializePipeline(pipeline);
}

Pipeline LoadPipeline(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open model file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return DeserializePipeline(buffer.str());
}

}  // namespace fairaudit
