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

#include "fairaudit/encode.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "fairaudit/error.h"

namespace fairaudit {

const char* ToString(EncodingMode mode) {
  return mode == EncodingMode::kTree ? "tree" : "linear";
}

EncodedMatrix::EncodedMatrix(std::size_t rows, std::size_t cols,
                             std::vector<double> values,
                             std::vector<std::uint8_t> target,
                             std::vector<std::string> column_names)
    : rows_(rows),
      cols_(cols),
      values_(std::move(values)),
      target_(std::move(target)),
      column_names_(std::move(column_names)) {
  if (values_.size() != rows_ * cols_) {
    throw ConfigError("matrix values do not match its shape");
  }
  if (target_.size() != rows_) {
    throw ConfigError("matrix target length does not match its rows");
  }
  if (column_names_.empty()) {
    for (std::size_t c = 0; c < cols_; ++c) {
      column_names_.push_back("x" + std::to_string(c));
    }
  } else if (column_names_.size() != cols_) {
    throw ConfigError("matrix column names do not match its shape");
  }
}

EncodedMatrix EncodedMatrix::SelectRows(std::span<const std::size_t> rows) const {
  std::vector<double> values;
  values.reserve(rows.size() * cols_);
  std::vector<std::uint8_t> target;
  target.reserve(rows.size());
  for (auto r : rows) {
    const auto src = row(r);
    values.insert(values.end(), src.begin(), src.end());
    target.push_back(target_.at(r));
  }
  return EncodedMatrix(rows.size(), cols_, std::move(values), std::move(target),
                       column_names_);
}

EncodedMatrix EncodedMatrix::WithTarget(std::vector<std::uint8_t> target) const {
  return EncodedMatrix(rows_, cols_, values_, std::move(target), column_names_);
}

Encoder Encoder::Fit(const DataTable& table, EncodingMode mode) {
  std::vector<ColumnEncoding> columns;
  const auto y = table.target();
  for (const auto& col : table.columns()) {
    ColumnEncoding enc;
    enc.name = col.name;
    enc.kind = col.kind;
    if (col.kind == ColumnKind::kNumeric) {
      if (mode == EncodingMode::kLinear && !col.numeric.empty()) {
        double mean = 0.0;
        for (double v : col.numeric) mean += v;
        mean /= static_cast<double>(col.numeric.size());
        double var = 0.0;
        for (double v : col.numeric) var += (v - mean) * (v - mean);
        var /= static_cast<double>(col.numeric.size());
        enc.mean = mean;
        enc.scale = var > 0.0 ? std::sqrt(var) : 1.0;
      }
    } else {
      // Observed categories with their counts and positives.
      std::map<std::string, std::pair<std::size_t, std::size_t>> stats;
      for (std::size_t i = 0; i < col.codes.size(); ++i) {
        auto& s = stats[col.category(i)];
        ++s.first;
        s.second += y[i];
      }
      std::vector<std::string> order;
      for (const auto& [name, s] : stats) order.push_back(name);
      if (mode == EncodingMode::kTree) {
        std::stable_sort(order.begin(), order.end(),
                         [&](const std::string& a, const std::string& b) {
                           const auto& sa = stats[a];
                           const auto& sb = stats[b];
                           // Compare positive rates exactly via cross products.
                           return sa.second * sb.first < sb.second * sa.first;
                         });
      }
      for (std::size_t c = 0; c < order.size(); ++c) {
        enc.codes.emplace(order[c], static_cast<std::int32_t>(c));
      }
      enc.categories = std::move(order);
    }
    columns.push_back(std::move(enc));
  }
  return FromParts(mode, std::move(columns));
}

Encoder Encoder::FromParts(EncodingMode mode,
                           std::vector<ColumnEncoding> columns) {
  Encoder e;
  e.mode_ = mode;
  e.columns_ = std::move(columns);
  e.output_columns_ = 0;
  for (auto& c : e.columns_) {
    if (c.codes.empty() && !c.categories.empty()) {
      for (std::size_t i = 0; i < c.categories.size(); ++i) {
        c.codes.emplace(c.categories[i], static_cast<std::int32_t>(i));
      }
    }
    if (c.kind == ColumnKind::kCategorical && mode == EncodingMode::kLinear) {
      e.output_columns_ += c.categories.size();
    } else {
      e.output_columns_ += 1;
    }
  }
  return e;
}

std::vector<std::string> Encoder::OutputNames() const {
  std::vector<std::string> names;
  names.reserve(output_columns_);
  for (const auto& c : columns_) {
    if (c.kind == ColumnKind::kCategorical && mode_ == EncodingMode::kLinear) {
      for (const auto& cat : c.categories) names.push_back(c.name + "=" + cat);
    } else {
      names.push_back(c.name);
    }
  }
  return names;
}

EncodedMatrix Encoder::Transform(const DataTable& table) const {
  if (table.num_columns() != columns_.size()) {
    throw ConfigError("table has " + std::to_string(table.num_columns()) +
                      " feature columns, encoder expects " +
                      std::to_string(columns_.size()));
  }
  const std::size_t rows = table.rows();
  std::vector<double> values(rows * output_columns_, 0.0);
  std::size_t offset = 0;
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    const auto& enc = columns_[j];
    const auto& col = table.column(j);
    if (col.name != enc.name || col.kind != enc.kind) {
      throw ConfigError("column " + col.name + " does not match encoder column " +
                        enc.name);
    }
    if (enc.kind == ColumnKind::kNumeric) {
      for (std::size_t i = 0; i < rows; ++i) {
        values[i * output_columns_ + offset] =
            (col.numeric[i] - enc.mean) / enc.scale;
      }
      offset += 1;
      continue;
    }
    // Map the table's dictionary onto encoder codes once.
    std::vector<std::int32_t> remap(col.dictionary.size(), -1);
    for (std::size_t c = 0; c < col.dictionary.size(); ++c) {
      auto it = enc.codes.find(col.dictionary[c]);
      if (it != enc.codes.end()) remap[c] = it->second;
    }
    if (mode_ == EncodingMode::kTree) {
      for (std::size_t i = 0; i < rows; ++i) {
        const auto code = remap[static_cast<std::size_t>(col.codes[i])];
        values[i * output_columns_ + offset] =
            code < 0 ? kUnknownCode : static_cast<double>(code);
      }
      offset += 1;
    } else {
      for (std::size_t i = 0; i < rows; ++i) {
        const auto code = remap[static_cast<std::size_t>(col.codes[i])];
        if (code >= 0) {
          values[i * output_columns_ + offset + static_cast<std::size_t>(code)] =
              1.0;
        }
      }
      offset += enc.categories.size();
    }
  }
  return EncodedMatrix(rows, output_columns_, std::move(values),
                       std::vector<std::uint8_t>(table.target().begin(),
                                                 table.target().end()),
                       OutputNames());
}

EncodedMatrix Encode(const DataTable& table, EncodingMode mode) {
  return Encoder::Fit(table, mode).Transform(table);
}

}  // namespace fairaudit
