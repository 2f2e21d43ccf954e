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

#ifndef FAIRAUDIT_SRC_PARALLEL_H_
#define FAIRAUDIT_SRC_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace fairaudit::internal {

// Worker count for a request: threads <= 0 means hardware concurrency.
int ResolveThreads(int threads);

// Runs fn(0..n-1) on up to `threads` workers. Each index runs exactly once.
// If any call throws, the exception of the lowest failing index is rethrown
// after all workers stop, so failures are deterministic.
void ParallelFor(std::size_t n, int threads,
                 const std::function<void(std::size_t)>& fn);

}  // namespace fairaudit::internal

#endif  // FAIRAUDIT_SRC_PARALLEL_H_
