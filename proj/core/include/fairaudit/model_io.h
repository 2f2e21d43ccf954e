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

#ifndef FAIRAUDIT_MODEL_IO_H_
#define FAIRAUDIT_MODEL_IO_H_

#include <filesystem>
#include <string>

#include "fairaudit/learner.h"

namespace fairaudit {

inline constexpr int kModelFormatVersion = 1;

// Self-describing JSON documents. Doubles are written with round-trip
// precision, so Load(Save(m)) reproduces every parameter bit for bit.
std::string SerializeModel(const TrainedModel& model);
TrainedModel DeserializeModel(const std::string& text);

std::string SerializePipeline(const Pipeline& pipeline);
Pipeline DeserializePipeline(const std::string& text);

void SavePipeline(const Pipeline& pipeline, const std::filesystem::path& path);
Pipeline LoadPipeline(const std::filesystem::path& path);

}  // namespace fairaudit

#endif  // FAIRAUDIT_MODEL_IO_H_
