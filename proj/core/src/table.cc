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

#include "fairaudit/table.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "fairaudit/error.h"
#include "fairaudit/random.h"
#include "json.hpp"

namespace fairaudit {
namespace {

using nlohmann::json;

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(Trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(Trim(current));
  return fields;
}

bool ParseDouble(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

double Median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

std::vector<std::size_t> RowsOfClass(const DataTable& table, std::uint8_t cls) {
  std::vector<std::size_t> rows;
  const auto y = table.target();
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == cls) rows.push_back(i);
  }
  return rows;
}

// Splits `total` picks across classes proportionally to their sizes using
// the largest-remainder rule (ties to the lower class index).
std::array<std::size_t, 2> Allocate(std::size_t total,
                                    const std::array<std::size_t, 2>& sizes) {
  const double n = static_cast<double>(sizes[0] + sizes[1]);
  std::array<std::size_t, 2> picks{};
  std::array<double, 2> remainder{};
  std::size_t assigned = 0;
  for (int c = 0; c < 2; ++c) {
    const double exact = static_cast<double>(total) * sizes[c] / n;
    picks[c] = static_cast<std::size_t>(std::floor(exact));
    remainder[c] = exact - std::floor(exact);
    assigned += picks[c];
  }
  while (assigned < total) {
    int best = -1;
    for (int c = 0; c < 2; ++c) {
      if (picks[c] >= sizes[c]) continue;
      if (best < 0 || remainder[c] > remainder[best]) best = c;
    }
    picks[best] += 1;
    remainder[best] = -1.0;
    ++assigned;
  }
  return picks;
}

}  // namespace

const char* ToString(ColumnKind kind) {
  return kind == ColumnKind::kNumeric ? "numeric" : "categorical";
}

std::vector<std::string> Schema::HeaderNames() const {
  std::vector<std::string> names;
  names.reserve(features.size() + 1);
  for (const auto& f : features) names.push_back(f.name);
  names.insert(names.begin() + static_cast<std::ptrdiff_t>(target_position),
               target);
  return names;
}

Schema ParseSchema(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("schema is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("columns") ||
      !doc["columns"].is_array()) {
    throw ConfigError("schema needs a \"columns\" array");
  }
  if (doc.contains("version") && doc["version"] != 1) {
    throw ConfigError("unsupported schema version");
  }
  Schema schema;
  if (doc.contains("missing")) {
    schema.missing_marker = doc["missing"].get<std::string>();
  }
  std::unordered_set<std::string> seen;
  bool has_target = false;
  std::size_t position = 0;
  for (const auto& col : doc["columns"]) {
    if (!col.contains("name") || !col.contains("kind")) {
      throw ConfigError("schema column needs \"name\" and \"kind\"");
    }
    const auto name = col["name"].get<std::string>();
    const auto kind = col["kind"].get<std::string>();
    if (!seen.insert(name).second) {
      throw ConfigError("duplicate column name in schema: " + name);
    }
    if (kind == "target") {
      if (has_target) throw ConfigError("schema declares two target columns");
      has_target = true;
      schema.target = name;
      schema.target_position = position;
      if (col.contains("positive")) {
        schema.positive_labels = col["positive"].get<std::vector<std::string>>();
      }
      if (col.contains("negative")) {
        schema.negative_labels = col["negative"].get<std::vector<std::string>>();
      }
    } else if (kind == "numeric") {
      schema.features.push_back({name, ColumnKind::kNumeric});
    } else if (kind == "categorical") {
      schema.features.push_back({name, ColumnKind::kCategorical});
    } else {
      throw ConfigError("unknown column kind '" + kind + "' for " + name);
    }
    ++position;
  }
  if (!has_target) throw ConfigError("schema has no target column");
  return schema;
}

Schema LoadSchema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open schema file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseSchema(buffer.str());
}

DataTable::DataTable(std::vector<Column> columns,
                     std::vector<std::uint8_t> target, std::string target_name)
    : columns_(std::move(columns)),
      target_(std::move(target)),
      target_name_(std::move(target_name)) {
  std::unordered_set<std::string> names;
  for (const auto& c : columns_) {
    if (!names.insert(c.name).second) {
      throw ConfigError("duplicate column name: " + c.name);
    }
    if (c.size() != target_.size()) {
      throw ConfigError("column " + c.name + " has " +
                        std::to_string(c.size()) + " entries, expected " +
                        std::to_string(target_.size()));
    }
    if (c.kind == ColumnKind::kCategorical) {
      for (auto code : c.codes) {
        if (code < 0 || static_cast<std::size_t>(code) >= c.dictionary.size()) {
          throw ConfigError("category code out of range in column " + c.name);
        }
      }
    }
  }
  for (auto v : target_) {
    if (v > 1) throw ConfigError("target values must be 0 or 1");
  }
}

const Column& DataTable::column(const std::string& name) const {
  const auto idx = FindColumn(name);
  if (!idx) throw ConfigError("no column named '" + name + "'");
  return columns_[*idx];
}

std::optional<std::size_t> DataTable::FindColumn(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  return std::nullopt;
}

double DataTable::PositiveRate() const {
  if (target_.empty()) return 0.0;
  const auto pos = std::count(target_.begin(), target_.end(), 1);
  return static_cast<double>(pos) / static_cast<double>(target_.size());
}

DataTable DataTable::Select(std::span<const std::size_t> rows) const {
  std::vector<Column> columns;
  columns.reserve(columns_.size());
  for (const auto& src : columns_) {
    Column c;
    c.name = src.name;
    c.kind = src.kind;
    c.dictionary = src.dictionary;
    if (src.kind == ColumnKind::kNumeric) {
      c.numeric.reserve(rows.size());
      for (auto r : rows) c.numeric.push_back(src.numeric.at(r));
    } else {
      c.codes.reserve(rows.size());
      for (auto r : rows) c.codes.push_back(src.codes.at(r));
    }
    columns.push_back(std::move(c));
  }
  std::vector<std::uint8_t> target;
  target.reserve(rows.size());
  for (auto r : rows) target.push_back(target_.at(r));
  return DataTable(std::move(columns), std::move(target), target_name_);
}

DataTable DataTable::WithTarget(std::vector<std::uint8_t> target) const {
  return DataTable(columns_, std::move(target), target_name_);
}

DataTable ParseTable(std::istream& in, const Schema& schema) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = SplitCsvLine(line);
  const auto expected = schema.HeaderNames();
  if (header != expected) {
    std::string got;
    for (const auto& h : header) got += (got.empty() ? "" : ",") + h;
    throw ConfigError("header does not match schema; got: " + got);
  }

  const std::size_t n_features = schema.features.size();
  std::vector<std::vector<double>> numeric(n_features);
  std::vector<std::vector<std::int32_t>> codes(n_features);
  std::vector<std::vector<std::string>> dictionaries(n_features);
  std::vector<std::unordered_map<std::string, std::int32_t>> lookup(n_features);
  std::vector<std::vector<std::size_t>> missing_rows(n_features);
  std::vector<std::uint8_t> target;

  const bool literal_target =
      schema.positive_labels.empty() && schema.negative_labels.empty();
  long row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    ++row;
    const auto fields = SplitCsvLine(line);
    if (fields.size() != expected.size()) {
      throw ParseError("expected " + std::to_string(expected.size()) +
                           " fields, found " + std::to_string(fields.size()),
                       row);
    }
    std::size_t f = 0;
    for (std::size_t pos = 0; pos < fields.size(); ++pos) {
      const std::string& value = fields[pos];
      if (pos == schema.target_position) {
        std::uint8_t label;
        if (literal_target) {
          if (value == "1") {
            label = 1;
          } else if (value == "0") {
            label = 0;
          } else {
            throw ParseError("non-binary target value '" + value + "'", row);
          }
        } else if (std::find(schema.positive_labels.begin(),
                             schema.positive_labels.end(),
                             value) != schema.positive_labels.end()) {
          label = 1;
        } else if (std::find(schema.negative_labels.begin(),
                             schema.negative_labels.end(),
                             value) != schema.negative_labels.end()) {
          label = 0;
        } else {
          throw ParseError("non-binary target value '" + value + "'", row);
        }
        target.push_back(label);
        continue;
      }
      if (schema.features[f].kind == ColumnKind::kNumeric) {
        double v = 0.0;
        if (value == schema.missing_marker || value.empty()) {
          missing_rows[f].push_back(numeric[f].size());
        } else if (!ParseDouble(value, v) || !std::isfinite(v)) {
          throw ParseError("column " + schema.features[f].name +
                               ": not a finite number '" + value + "'",
                           row);
        }
        numeric[f].push_back(v);
      } else {
        auto [it, inserted] = lookup[f].try_emplace(
            value, static_cast<std::int32_t>(dictionaries[f].size()));
        if (inserted) dictionaries[f].push_back(value);
        codes[f].push_back(it->second);
      }
      ++f;
    }
  }

  std::vector<Column> columns;
  columns.reserve(n_features);
  for (std::size_t f = 0; f < n_features; ++f) {
    Column c;
    c.name = schema.features[f].name;
    c.kind = schema.features[f].kind;
    if (c.kind == ColumnKind::kNumeric) {
      if (!missing_rows[f].empty()) {
        std::vector<double> observed;
        std::size_t m = 0;
        for (std::size_t i = 0; i < numeric[f].size(); ++i) {
          if (m < missing_rows[f].size() && missing_rows[f][m] == i) {
            ++m;
          } else {
            observed.push_back(numeric[f][i]);
          }
        }
        const double median = Median(std::move(observed));
        for (auto i : missing_rows[f]) numeric[f][i] = median;
      }
      c.numeric = std::move(numeric[f]);
    } else {
      c.codes = std::move(codes[f]);
      c.dictionary = std::move(dictionaries[f]);
    }
    columns.push_back(std::move(c));
  }
  return DataTable(std::move(columns), std::move(target), schema.target);
}

DataTable LoadTable(const std::filesystem::path& path, const Schema& schema) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open data file: " + path.string());
  return ParseTable(in, schema);
}

SplitResult Split(const DataTable& table, double test_fraction,
                  std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ConfigError("test_fraction must lie in (0, 1)");
  }
  if (table.rows() == 0) throw ConfigError("cannot split an empty table");

  std::array<std::vector<std::size_t>, 2> by_class = {RowsOfClass(table, 0),
                                                      RowsOfClass(table, 1)};
  Rng rng(seed);
  for (auto& rows : by_class) rng.Shuffle(std::span<std::size_t>(rows));

  const auto total_test = static_cast<std::size_t>(
      std::llround(test_fraction * static_cast<double>(table.rows())));
  const auto picks =
      Allocate(total_test, {by_class[0].size(), by_class[1].size()});

  SplitResult out;
  for (int c = 0; c < 2; ++c) {
    const auto& rows = by_class[c];
    out.test_rows.insert(out.test_rows.end(), rows.begin(),
                         rows.begin() + static_cast<std::ptrdiff_t>(picks[c]));
    out.train_rows.insert(out.train_rows.end(),
                          rows.begin() + static_cast<std::ptrdiff_t>(picks[c]),
                          rows.end());
  }
  std::sort(out.test_rows.begin(), out.test_rows.end());
  std::sort(out.train_rows.begin(), out.train_rows.end());
  out.train = table.Select(out.train_rows);
  out.test = table.Select(out.test_rows);
  return out;
}

DataTable StratifiedSubsample(const DataTable& table, std::size_t rows,
                              std::uint64_t seed) {
  if (rows >= table.rows()) return table;
  std::array<std::vector<std::size_t>, 2> by_class = {RowsOfClass(table, 0),
                                                      RowsOfClass(table, 1)};
  Rng rng(DeriveSeed(seed, 0x5b));
  for (auto& r : by_class) rng.Shuffle(std::span<std::size_t>(r));
  const auto picks = Allocate(rows, {by_class[0].size(), by_class[1].size()});
  std::vector<std::size_t> keep;
  for (int c = 0; c < 2; ++c) {
    keep.insert(keep.end(), by_class[c].begin(),
                by_class[c].begin() + static_cast<std::ptrdiff_t>(picks[c]));
  }
  std::sort(keep.begin(), keep.end());
  return table.Select(keep);
}

}  // namespace fairaudit
