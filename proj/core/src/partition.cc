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

#include "fairaudit/partition.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "fairaudit/error.h"

namespace fairaudit {
namespace {

std::string FormatNumber(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

struct NumericGroup {
  Interval interval;
  std::size_t size = 0;
};

struct CategoryGroup {
  CategorySet set;
  std::size_t size = 0;
};

std::size_t IntervalIndex(const std::vector<GroupDescriptor>& groups,
                          double value) {
  // Groups are sorted; the last group whose lower bound is <= value wins,
  // values below the first bound go to group 0.
  std::size_t lo = 0;
  std::size_t hi = groups.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (std::get<Interval>(groups[mid]).lo <= value) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

void MergeSmallIntervals(std::vector<NumericGroup>& groups,
                         std::size_t min_size) {
  while (groups.size() > 1) {
    std::size_t smallest = 0;
    for (std::size_t i = 1; i < groups.size(); ++i) {
      if (groups[i].size < groups[smallest].size) smallest = i;
    }
    if (groups[smallest].size >= min_size) break;
    std::size_t into;
    if (smallest == 0) {
      into = 1;
    } else if (smallest + 1 == groups.size()) {
      into = smallest - 1;
    } else {
      into = groups[smallest - 1].size <= groups[smallest + 1].size
                 ? smallest - 1
                 : smallest + 1;
    }
    const std::size_t left = std::min(smallest, into);
    const std::size_t right = std::max(smallest, into);
    groups[left].interval.hi = groups[right].interval.hi;
    groups[left].size += groups[right].size;
    groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(right));
  }
}

void MergeSmallCategories(std::vector<CategoryGroup>& groups,
                          std::size_t min_size) {
  auto is_small = [&](const CategoryGroup& g) {
    return g.size < min_size || g.set.catch_all;
  };
  // Pool every small group (and any existing catch-all) together.
  const auto n_small = std::count_if(groups.begin(), groups.end(), is_small);
  if (n_small > 0) {
    CategoryGroup pooled;
    pooled.set.catch_all = true;
    std::vector<CategoryGroup> kept;
    for (auto& g : groups) {
      if (is_small(g)) {
        pooled.size += g.size;
        pooled.set.categories.insert(pooled.set.categories.end(),
                                     g.set.categories.begin(),
                                     g.set.categories.end());
      } else {
        kept.push_back(std::move(g));
      }
    }
    std::sort(pooled.set.categories.begin(), pooled.set.categories.end());
    if (pooled.size >= min_size || kept.empty()) {
      kept.push_back(std::move(pooled));
    } else {
      auto target = std::min_element(
          kept.begin(), kept.end(),
          [](const auto& a, const auto& b) { return a.size < b.size; });
      target->size += pooled.size;
      target->set.catch_all = true;
      target->set.categories.insert(target->set.categories.end(),
                                    pooled.set.categories.begin(),
                                    pooled.set.categories.end());
      std::sort(target->set.categories.begin(), target->set.categories.end());
    }
    groups = std::move(kept);
  }
}

GroupPartition AssignNumeric(GroupScheme scheme, const Column& column) {
  GroupPartition p;
  p.sizes.assign(scheme.size(), 0);
  p.assignment.reserve(column.numeric.size());
  for (double v : column.numeric) {
    const auto g = IntervalIndex(scheme.groups, v);
    p.assignment.push_back(g);
    ++p.sizes[g];
  }
  p.scheme = std::move(scheme);
  return p;
}

GroupPartition AssignCategorical(GroupScheme scheme, const Column& column) {
  std::unordered_map<std::string, std::size_t> group_of;
  std::size_t fallback = 0;
  for (std::size_t g = 0; g < scheme.size(); ++g) {
    const auto& set = std::get<CategorySet>(scheme.groups[g]);
    for (const auto& c : set.categories) group_of.emplace(c, g);
    if (set.catch_all) fallback = g;
  }
  std::vector<std::size_t> code_to_group(column.dictionary.size(), fallback);
  for (std::size_t code = 0; code < column.dictionary.size(); ++code) {
    auto it = group_of.find(column.dictionary[code]);
    if (it != group_of.end()) code_to_group[code] = it->second;
  }
  GroupPartition p;
  p.sizes.assign(scheme.size(), 0);
  p.assignment.reserve(column.codes.size());
  for (auto code : column.codes) {
    const auto g = code_to_group[static_cast<std::size_t>(code)];
    p.assignment.push_back(g);
    ++p.sizes[g];
  }
  p.scheme = std::move(scheme);
  return p;
}

GroupPartition BinNumeric(const Column& column,
                          const BinStrategy& strategy, std::size_t min_size) {
  std::vector<double> sorted = column.numeric;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  std::vector<double> lower_bounds;
  if (const auto* q = std::get_if<QuantileBins>(&strategy)) {
    if (q->k < 1) throw ConfigError("quantile bin count must be >= 1");
    std::set<double> unique_values(sorted.begin(), sorted.end());
    if (static_cast<std::size_t>(q->k) > unique_values.size()) {
      throw ConfigError("quantile(" + std::to_string(q->k) +
                        ") exceeds the " +
                        std::to_string(unique_values.size()) +
                        " distinct values of " + column.name);
    }
    lower_bounds.push_back(-std::numeric_limits<double>::infinity());
    for (int j = 1; j < q->k; ++j) {
      const auto pos = static_cast<std::size_t>(std::llround(
          static_cast<double>(j) * static_cast<double>(n) / q->k));
      const double cut = sorted[std::min(pos, n - 1)];
      // Ties push the cut up; cuts equal to the minimum would leave an
      // empty first group.
      if (cut > sorted.front() && cut > lower_bounds.back()) {
        lower_bounds.push_back(cut);
      }
    }
  } else if (const auto* e = std::get_if<ExplicitEdges>(&strategy)) {
    const auto& edges = e->edges;
    if (edges.size() < 2) throw ConfigError("explicit edges need >= 2 values");
    for (std::size_t i = 1; i < edges.size(); ++i) {
      if (!(edges[i] > edges[i - 1])) {
        throw ConfigError("explicit edges must be strictly increasing");
      }
    }
    if (n > 0 && (sorted.front() < edges.front() || sorted.back() >= edges.back())) {
      throw ConfigError("explicit edges [" + FormatNumber(edges.front()) + ", " +
                        FormatNumber(edges.back()) +
                        ") do not cover the observed range of " + column.name +
                        " [" + FormatNumber(sorted.front()) + ", " +
                        FormatNumber(sorted.back()) + "]");
    }
    lower_bounds.assign(edges.begin(), edges.end() - 1);
  } else {
    throw ConfigError("numeric feature " + column.name +
                      " needs quantile or explicit-edge binning");
  }

  std::vector<NumericGroup> groups;
  for (std::size_t i = 0; i < lower_bounds.size(); ++i) {
    NumericGroup g;
    g.interval.lo = lower_bounds[i];
    g.interval.hi = i + 1 < lower_bounds.size()
                        ? lower_bounds[i + 1]
                        : std::numeric_limits<double>::infinity();
    groups.push_back(g);
  }
  if (const auto* e = std::get_if<ExplicitEdges>(&strategy)) {
    groups.back().interval.hi = e->edges.back();
  }
  for (double v : column.numeric) {
    std::size_t lo = 0;
    std::size_t hi = groups.size();
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (groups[mid].interval.lo <= v) lo = mid; else hi = mid;
    }
    ++groups[lo].size;
  }
  MergeSmallIntervals(groups, std::max<std::size_t>(min_size, 1));

  GroupScheme scheme;
  scheme.feature = column.name;
  scheme.kind = ColumnKind::kNumeric;
  for (const auto& g : groups) scheme.groups.emplace_back(g.interval);
  return AssignNumeric(std::move(scheme), column);
}

GroupPartition BinCategorical(const Column& column, const BinStrategy& strategy,
                              std::size_t min_size) {
  const auto* spec = std::get_if<CategoryGroups>(&strategy);
  if (spec == nullptr) {
    throw ConfigError("categorical feature " + column.name +
                      " needs category binning");
  }
  std::map<std::string, std::size_t> counts;
  for (const auto& name : column.dictionary) counts.emplace(name, 0);
  for (auto code : column.codes) {
    ++counts[column.dictionary[static_cast<std::size_t>(code)]];
  }

  std::vector<CategoryGroup> groups;
  std::set<std::string> listed;
  for (const auto& set : spec->groups) {
    CategoryGroup g;
    for (const auto& c : set) {
      if (!listed.insert(c).second) {
        throw ConfigError("category '" + c + "' listed in two groups of " +
                          column.name);
      }
      g.set.categories.push_back(c);
      auto it = counts.find(c);
      if (it != counts.end()) g.size += it->second;
    }
    std::sort(g.set.categories.begin(), g.set.categories.end());
    groups.push_back(std::move(g));
  }
  if (spec->groups.empty()) {
    for (const auto& [name, count] : counts) {
      if (count == 0) continue;
      CategoryGroup g;
      g.set.categories = {name};
      g.size = count;
      groups.push_back(std::move(g));
    }
  } else {
    CategoryGroup rest;
    rest.set.catch_all = true;
    for (const auto& [name, count] : counts) {
      if (listed.count(name) || count == 0) continue;
      rest.set.categories.push_back(name);
      rest.size += count;
    }
    if (!rest.set.categories.empty()) groups.push_back(std::move(rest));
  }
  // Drop listed groups with no rows at all before size merging.
  groups.erase(std::remove_if(groups.begin(), groups.end(),
                              [](const auto& g) { return g.size == 0; }),
               groups.end());
  MergeSmallCategories(groups, std::max<std::size_t>(min_size, 1));

  GroupScheme scheme;
  scheme.feature = column.name;
  scheme.kind = ColumnKind::kCategorical;
  for (auto& g : groups) scheme.groups.emplace_back(std::move(g.set));
  return AssignCategorical(std::move(scheme), column);
}

}  // namespace

std::string Describe(const GroupDescriptor& group) {
  if (const auto* iv = std::get_if<Interval>(&group)) {
    const bool lo_inf = std::isinf(iv->lo);
    const bool hi_inf = std::isinf(iv->hi);
    if (lo_inf && hi_inf) return "all";
    if (lo_inf) return "<" + FormatNumber(iv->hi);
    if (hi_inf) return ">=" + FormatNumber(iv->lo);
    return "[" + FormatNumber(iv->lo) + "," + FormatNumber(iv->hi) + ")";
  }
  const auto& set = std::get<CategorySet>(group);
  std::string out;
  for (const auto& c : set.categories) out += (out.empty() ? "" : "|") + c;
  if (set.catch_all) out = "other{" + out + "}";
  return out;
}

std::vector<std::string> GroupScheme::Labels() const {
  std::vector<std::string> labels;
  labels.reserve(groups.size());
  for (const auto& g : groups) labels.push_back(Describe(g));
  return labels;
}

std::vector<std::vector<std::size_t>> GroupPartition::Members() const {
  std::vector<std::vector<std::size_t>> members(num_groups());
  for (std::size_t g = 0; g < members.size(); ++g) members[g].reserve(sizes[g]);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    members[assignment[i]].push_back(i);
  }
  return members;
}

BinStrategy DefaultStrategy(ColumnKind kind) {
  if (kind == ColumnKind::kNumeric) return QuantileBins{5};
  return CategoryGroups{};
}

GroupPartition BinFeature(const DataTable& table, const std::string& feature,
                          const BinStrategy& strategy,
                          std::size_t min_group_size) {
  const Column& column = table.column(feature);
  if (table.rows() == 0) throw ConfigError("cannot bin an empty table");
  if (column.kind == ColumnKind::kNumeric) {
    return BinNumeric(column, strategy, min_group_size);
  }
  return BinCategorical(column, strategy, min_group_size);
}

GroupPartition ApplyScheme(const GroupScheme& scheme, const DataTable& table) {
  const Column& column = table.column(scheme.feature);
  if (column.kind != scheme.kind) {
    throw ConfigError("column " + scheme.feature +
                      " does not match the kind of its group scheme");
  }
  if (scheme.groups.empty()) throw ConfigError("group scheme has no groups");
  if (column.kind == ColumnKind::kNumeric) return AssignNumeric(scheme, column);
  return AssignCategorical(scheme, column);
}

}  // namespace fairaudit
