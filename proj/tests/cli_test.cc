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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fairaudit/random.h"
#include "json.hpp"
#include "test_util.h"

namespace fairaudit {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "fairaudit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = cli::Main(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// A small CSV dataset, its schema and a fast config in a fresh directory.
class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = testing::FreshDir(std::string("cli_") +
                             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    WriteDataset(dir_ / "data.csv", false);
    std::ofstream(dir_ / "schema.json") << R"({"version": 1, "columns": [
      {"name": "x1", "kind": "numeric"}, {"name": "x2", "kind": "numeric"},
      {"name": "color", "kind": "categorical"}, {"name": "group", "kind": "categorical"},
      {"name": "label", "kind": "target"}]})";
    std::ofstream(dir_ / "config.json") << R"({
      "data": "data.csv", "schema": "schema.json", "seed": 3,
      "learner": {"family": "gbdt", "n_estimators": 20},
      "learners": [{"family": "gbdt", "n_estimators": 20}, {"family": "logistic"}],
      "audit": {"ratio_threshold": 1.5},
      "candidates": 2,
      "gridsearch": {"grid_size": 3},
      "benchmark": {"candidates": 2, "grid_size": 3},
      "out": "out"})";
  }

  void WriteDataset(const fs::path& path, bool shuffle_labels) {
    const auto t = testing::SyntheticTable(1500, 701, -2.0);
    std::vector<std::uint8_t> y(t.target().begin(), t.target().end());
    if (shuffle_labels) {
      Rng rng(702);
      rng.Shuffle(std::span<std::uint8_t>(y));
    }
    std::ofstream out(path);
    out << "x1,x2,color,group,label\n";
    for (std::size_t r = 0; r < t.rows(); ++r) {
      out << t.column("x1").numeric[r] << "," << t.column("x2").numeric[r] << ","
          << t.column("color").category(r) << "," << t.column("group").category(r) << ","
          << int(y[r]) << "\n";
    }
  }

  std::string Config() const { return (dir_ / "config.json").string(); }
  fs::path Out() const { return dir_ / "out"; }

  fs::path dir_;
};

TEST(CliBasicsTest, HelpExitsZero) {
  const auto r = Invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("audit"), std::string::npos);
}

TEST(CliBasicsTest, UnknownMethodIsAUsageError) {
  const auto r = Invoke({"correct", "--feature", "age", "--method", "magic"});
  EXPECT_EQ(r.code, cli::kExitConfigError);
  EXPECT_NE((r.out + r.err).find("--method"), std::string::npos);
}

TEST(CliBasicsTest, MissingSubcommandIsAUsageError) {
  EXPECT_EQ(Invoke({}).code, cli::kExitConfigError);
  EXPECT_EQ(Invoke({"frobnicate"}).code, cli::kExitConfigError);
}

TEST_F(CliTest, BadSchemaPathFailsWithoutOutput) {
  const auto r = Invoke({"audit", "--config", Config(), "--schema", (dir_ / "nope.json").string(),
                         "--out", Out().string()});
  EXPECT_EQ(r.code, cli::kExitConfigError);
  EXPECT_FALSE(r.err.empty());
  EXPECT_FALSE(fs::exists(Out()));
}

TEST_F(CliTest, MalformedDataIsAnInputError) {
  std::ofstream(dir_ / "bad.csv") << "x1,x2,color,group,label\n1,2,red,A,7\n";
  const auto r = Invoke({"audit", "--config", Config(), "--data", (dir_ / "bad.csv").string(),
                         "--out", Out().string()});
  EXPECT_EQ(r.code, cli::kExitConfigError);
  EXPECT_NE(r.err.find("row 1"), std::string::npos);
  EXPECT_FALSE(fs::exists(Out()));
}

TEST_F(CliTest, AuditWritesReportsAndOverwritesCleanly) {
  auto r = Invoke({"audit", "--config", Config(), "--out", Out().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("group"), std::string::npos);
  for (const char* f : {"model.json", "audit.json", "alerts.csv", "groups/group.csv"}) {
    EXPECT_TRUE(fs::exists(Out() / f)) << f;
  }
  const auto first = testing::ReadFile(Out() / "audit.json");
  const auto j = nlohmann::json::parse(first);
  EXPECT_EQ(j["kind"], "audit");
  EXPECT_FALSE(j["alerts"].empty());

  std::ofstream(Out() / "groups" / "stale.csv") << "old";
  r = Invoke({"audit", "--config", Config(), "--out", Out().string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(testing::ReadFile(Out() / "audit.json"), first);
  EXPECT_FALSE(fs::exists(Out() / "groups" / "stale.csv"));

  r = Invoke({"report", (Out() / "audit.json").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("group"), std::string::npos);

  // A saved model audits to the same alerts.
  r = Invoke({"audit", "--config", Config(), "--model", (Out() / "model.json").string(),
              "--out", (dir_ / "again").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(testing::ReadFile(dir_ / "again" / "alerts.csv"), testing::ReadFile(Out() / "alerts.csv"));
}

TEST_F(CliTest, ShuffledLabelsStillGiveAValidReport) {
  WriteDataset(dir_ / "shuffled.csv", true);
  const auto r = Invoke({"audit", "--config", Config(), "--data", (dir_ / "shuffled.csv").string(),
                         "--out", Out().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(testing::ReadFile(Out() / "audit.json"));
  EXPECT_EQ(j["kind"], "audit");
  EXPECT_TRUE(j["alerts"].is_array());
}

TEST_F(CliTest, CorrectWithBothMethods) {
  auto r = Invoke({"correct", "--config", Config(), "--feature", "group", "--method", "fairdream",
                   "--out", Out().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"model.json", "fairdream.json", "candidates.csv", "tradeoff.csv",
                        "selected_groups.csv"}) {
    EXPECT_TRUE(fs::exists(Out() / f)) << f;
  }
  r = Invoke({"correct", "--config", Config(), "--feature", "group", "--method", "gridsearch",
              "--out", Out().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(Out() / "grid_points.csv"));
  EXPECT_FALSE(fs::exists(Out() / "fairdream.json"));
  EXPECT_NE(r.out.find("lambda"), std::string::npos);
}

TEST_F(CliTest, CorrectUnknownFeatureFails) {
  const auto r = Invoke({"correct", "--config", Config(), "--feature", "nope", "--method",
                         "fairdream", "--out", Out().string()});
  EXPECT_EQ(r.code, cli::kExitConfigError);
  EXPECT_FALSE(fs::exists(Out()));
}

TEST_F(CliTest, BenchmarkIsReproducibleAndLeavesTheDataAlone) {
  const auto before = testing::ReadFile(dir_ / "data.csv");
  auto r = Invoke({"benchmark", "--config", Config(), "--families", "logistic", "--features",
                   "group,color", "--out", Out().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto summary = testing::ReadFile(Out() / "summary.json");
  const auto j = nlohmann::json::parse(summary);
  EXPECT_EQ(j["kind"], "benchmark");
  for (const auto& cell : j["cells"]) EXPECT_EQ(cell["family"], "logistic");

  r = Invoke({"benchmark", "--config", Config(), "--families", "logistic", "--features",
              "group,color", "--out", Out().string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(testing::ReadFile(Out() / "summary.json"), summary);
  EXPECT_EQ(testing::ReadFile(dir_ / "data.csv"), before);
}

TEST(CliCensusTest, DeskAuditFlagsTheYoungestAgeBin) {
  const auto out = testing::FreshDir("cli_census");
  const auto config = testing::DataDir().parent_path() / "configs" / "desk.json";
  const auto r = Invoke({"audit", "--config", config.string(), "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("[17,29)"), std::string::npos);
  const auto j = nlohmann::json::parse(testing::ReadFile(out / "audit.json"));
  bool age = false;
  for (const auto& a : j["alerts"]) {
    if (a["feature"] == "age" && a["disadvantaged"] == "[17,29)") age = true;
  }
  EXPECT_TRUE(age);
}

}  // namespace
}  // namespace fairaudit
