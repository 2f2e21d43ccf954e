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

#ifndef FAIRAUDIT_PARTITION_H_
#define FAIRAUDIT_PARTITION_H_

#include <cstddef>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "fairaudit/table.h"

namespace fairaudit {

// Half-open numeric interval [lo, hi).
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool operator==(const Interval&) const = default;
};

struct CategorySet {
  std::vector<std::string> categories;
  // Also receives categories not listed anywhere in the scheme.
  bool catch_all = false;
  bool operator==(const CategorySet&) const = default;
};

using GroupDescriptor = std::variant<Interval, CategorySet>;

std::string Describe(const GroupDescriptor& group);

// Binning strategies.
struct QuantileBins {
  int k = 5;
};
struct ExplicitEdges {
  // Sorted edges e0 < e1 < ... < em giving groups [e0,e1), ..., [em-1,em).
  std::vector<double> edges;
};
// One group per category; `groups` optionally lists explicit category sets.
// Categories left out of every set form a trailing "other" group.
struct CategoryGroups {
  std::vector<std::vector<std::string>> groups;
};
using BinStrategy = std::variant<QuantileBins, ExplicitEdges, CategoryGroups>;

inline constexpr std::size_t kDefaultMinGroupSize = 50;

// The group definitions of a sensitive feature, independent of any table.
struct GroupScheme {
  std::string feature;
  ColumnKind kind = ColumnKind::kNumeric;
  std::vector<GroupDescriptor> groups;

  std::size_t size() const { return groups.size(); }
  std::vector<std::string> Labels() const;
};

// Every row of one table assigned to exactly one group of `scheme`.
// Partitions produced by BinFeature have no empty group; partitions produced
// by ApplyScheme on another table may.
struct GroupPartition {
  GroupScheme scheme;
  std::vector<std::size_t> assignment;
  std::vector<std::size_t> sizes;

  std::size_t num_groups() const { return scheme.size(); }
  std::size_t rows() const { return assignment.size(); }
  // Row indices of each group, in ascending row order.
  std::vector<std::vector<std::size_t>> Members() const;
};

// Builds the groups of `feature` on `table`. Numeric intervals are sorted;
// groups smaller than `min_group_size` are merged into their smaller adjacent
// interval (numeric) or pooled into an "other" set (categorical).
GroupPartition BinFeature(const DataTable& table, const std::string& feature,
                          const BinStrategy& strategy,
                          std::size_t min_group_size = kDefaultMinGroupSize);

// Default strategy: quantile(5) for numeric features, one group per category
// for categorical features.
BinStrategy DefaultStrategy(ColumnKind kind);

// Assigns the rows of `table` to an existing scheme. Numeric values outside
// the scheme's range go to the nearest end group; unseen categories go to the
// catch-all group if one exists, else to group 0.
GroupPartition ApplyScheme(const GroupScheme& scheme, const DataTable& table);

}  // namespace fairaudit

#endif  // FAIRAUDIT_PARTITION_H_
