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

#ifndef FAIRAUDIT_ENCODE_H_
#define FAIRAUDIT_ENCODE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fairaudit/table.h"

namespace fairaudit {

enum class EncodingMode { kTree, kLinear };

const char* ToString(EncodingMode mode);

// Dense row-major feature matrix aligned with a DataTable.
class EncodedMatrix {
 public:
  EncodedMatrix() = default;
  EncodedMatrix(std::size_t rows, std::size_t cols, std::vector<double> values,
                std::vector<std::uint8_t> target,
                std::vector<std::string> column_names = {});

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }
  std::span<const double> values() const { return values_; }
  std::span<const std::uint8_t> target() const { return target_; }
  const std::vector<std::string>& column_names() const { return column_names_; }

  EncodedMatrix SelectRows(std::span<const std::size_t> rows) const;
  EncodedMatrix WithTarget(std::vector<std::uint8_t> target) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
  std::vector<std::uint8_t> target_;
  std::vector<std::string> column_names_;
};

// Feature encoding fitted on a training table and applied to others.
//
// Tree mode: numeric columns pass through; each category maps to an integer
// code ordered by its training positive rate (ties by name), and categories
// unseen at fit time map to the reserved code -1.
//
// Linear mode: numeric columns are standardized with the training mean and
// standard deviation; categories are one-hot expanded with one column per
// training category, and unseen categories produce an all-zero block.
class Encoder {
 public:
  struct ColumnEncoding {
    std::string name;
    ColumnKind kind = ColumnKind::kNumeric;
    double mean = 0.0;
    double scale = 1.0;
    // Category name -> code (tree) or one-hot offset (linear).
    std::unordered_map<std::string, std::int32_t> codes;
    std::vector<std::string> categories;  // in code order
  };

  static constexpr double kUnknownCode = -1.0;

  Encoder() = default;
  static Encoder Fit(const DataTable& table, EncodingMode mode);

  EncodedMatrix Transform(const DataTable& table) const;

  EncodingMode mode() const { return mode_; }
  std::size_t output_columns() const { return output_columns_; }
  const std::vector<ColumnEncoding>& columns() const { return columns_; }
  std::vector<std::string> OutputNames() const;

  // Reconstruction from a serialized form.
  static Encoder FromParts(EncodingMode mode,
                           std::vector<ColumnEncoding> columns);

 private:
  EncodingMode mode_ = EncodingMode::kTree;
  std::vector<ColumnEncoding> columns_;
  std::size_t output_columns_ = 0;
};

// Fit + transform on the same table.
EncodedMatrix Encode(const DataTable& table, EncodingMode mode);

}  // namespace fairaudit

#endif  // FAIRAUDIT_ENCODE_H_
