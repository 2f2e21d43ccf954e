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

#ifndef FAIRAUDIT_TOOLS_COMMANDS_H_
#define FAIRAUDIT_TOOLS_COMMANDS_H_

#include <ostream>

namespace fairaudit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRuntimeError = 3;

// Entry point of the fairaudit tool:
//   fairaudit audit     [common flags] [--model FILE] [--features a,b]
//   fairaudit correct   [common flags] --feature F --method fairdream|gridsearch
//   fairaudit benchmark [common flags] [--families a,b] [--features a,b]
//   fairaudit report    FILE
// Common flags: --config, --data, --schema, --seed, --out, --format,
// --subsample, --threads. Returns the process exit code.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace fairaudit::cli

#endif  // FAIRAUDIT_TOOLS_COMMANDS_H_
