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

#ifndef FAIRAUDIT_SRC_LEARNERS_INTERNAL_H_
#define FAIRAUDIT_SRC_LEARNERS_INTERNAL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fairaudit/encode.h"
#include "fairaudit/learner.h"

namespace fairaudit::internal {

// Features quantized against per-feature candidate thresholds. bin(r, c) is
// the number of thresholds <= x(r, c), so "x < thresholds[c][t]" is
// equivalent to "bin <= t".
struct BinnedMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<double>> thresholds;
  std::vector<std::uint8_t> bins;  // column-major

  std::uint8_t bin(std::size_t r, std::size_t c) const {
    return bins[c * rows + r];
  }
  std::size_t num_bins(std::size_t c) const { return thresholds[c].size() + 1; }
};

// Thresholds are midpoints between adjacent distinct values; when a feature
// has more than max_thresholds + 1 distinct values they are placed at
// weighted quantiles. Rows with zero weight are ignored. Depends only on the
// total weight per distinct value, so integer weights and row duplication
// give identical thresholds.
BinnedMatrix BinMatrix(const EncodedMatrix& x, std::span<const double> weights,
                       int max_thresholds);

TreeEnsemble TrainGbdt(const EncodedMatrix& x, std::span<const double> weights,
                       const LearnerConfig& config,
                       std::vector<double>* loss_history);

TreeEnsemble TrainForest(const EncodedMatrix& x,
                         std::span<const double> weights,
                         const LearnerConfig& config);

LinearModel TrainLogistic(const EncodedMatrix& x,
                          std::span<const double> weights,
                          const LearnerConfig& config);

double Sigmoid(double z);

}  // namespace fairaudit::internal

#endif  // FAIRAUDIT_SRC_LEARNERS_INTERNAL_H_
