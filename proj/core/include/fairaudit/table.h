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

#ifndef FAIRAUDIT_TABLE_H_
#define FAIRAUDIT_TABLE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fairaudit {

enum class ColumnKind { kNumeric, kCategorical };

const char* ToString(ColumnKind kind);

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;
};

// Column declarations for a CSV file. Exactly one column is the binary
// target; the remaining ones are features, in file order.
struct Schema {
  std::vector<ColumnSpec> features;
  std::string target;
  // Header position of the target column.
  std::size_t target_position = 0;
  // Raw target strings mapped to 1 and to 0. When both are empty the target
  // must literally be "0" or "1".
  std::vector<std::string> positive_labels;
  std::vector<std::string> negative_labels;
  std::string missing_marker = "?";

  // Names of all columns in header order, target included.
  std::vector<std::string> HeaderNames() const;
};

// Reads a schema document (JSON):
//   {"version": 1, "missing": "?",
//    "columns": [{"name": "age", "kind": "numeric"}, ...,
//                {"name": "income", "kind": "target",
//                 "positive": [">50K"], "negative": ["<=50K"]}]}
Schema LoadSchema(const std::filesystem::path& path);
Schema ParseSchema(const std::string& json_text);

// One feature column. Numeric columns fill `numeric`; categorical columns
// fill `codes`, indices into `dictionary`.
struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;
  std::vector<double> numeric;
  std::vector<std::int32_t> codes;
  std::vector<std::string> dictionary;

  std::size_t size() const {
    return kind == ColumnKind::kNumeric ? numeric.size() : codes.size();
  }
  const std::string& category(std::size_t row) const {
    return dictionary[static_cast<std::size_t>(codes[row])];
  }
};

// Immutable column-major table with a binary target.
class DataTable {
 public:
  DataTable() = default;
  // Validates the invariants: unique names, equal lengths, target in {0,1}.
  DataTable(std::vector<Column> columns, std::vector<std::uint8_t> target,
            std::string target_name = "target");

  std::size_t rows() const { return target_.size(); }
  std::size_t num_columns() const { return columns_.size(); }
  const std::vector<Column>& columns() const { return columns_; }
  const Column& column(std::size_t i) const { return columns_[i]; }
  const Column& column(const std::string& name) const;
  std::optional<std::size_t> FindColumn(const std::string& name) const;
  std::span<const std::uint8_t> target() const { return target_; }
  const std::string& target_name() const { return target_name_; }
  double PositiveRate() const;

  // Rows in the given order; dictionaries are shared with the source.
  DataTable Select(std::span<const std::size_t> rows) const;
  // Same features, different labels (used by permutation checks).
  DataTable WithTarget(std::vector<std::uint8_t> target) const;

 private:
  std::vector<Column> columns_;
  std::vector<std::uint8_t> target_;
  std::string target_name_ = "target";
};

// Parses a comma-separated file with a header row that must match
// `schema.HeaderNames()` exactly. Missing numeric values are replaced by the
// column median; missing categorical values become their own category.
DataTable LoadTable(const std::filesystem::path& path, const Schema& schema);
DataTable ParseTable(std::istream& in, const Schema& schema);

struct SplitResult {
  DataTable train;
  DataTable test;
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
};

// Stratified by target. |test| == round(test_fraction * rows) and the per
// class test counts are allocated by largest remainder.
SplitResult Split(const DataTable& table, double test_fraction,
                  std::uint64_t seed);

// Stratified subsample of `rows` rows (no-op when rows >= table.rows()).
DataTable StratifiedSubsample(const DataTable& table, std::size_t rows,
                              std::uint64_t seed);

}  // namespace fairaudit

#endif  // FAIRAUDIT_TABLE_H_
