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

#ifndef FAIRAUDIT_ERROR_H_
#define FAIRAUDIT_ERROR_H_

#include <stdexcept>
#include <string>

namespace fairaudit {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: schema, config, arguments out of range.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed data file contents. Carries the 1-based data row when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long row = -1)
      : Error(row >= 0 ? what + " (row " + std::to_string(row) + ")" : what),
        row_(row) {}
  long row() const { return row_; }

 private:
  long row_;
};

// Learner could not be fit on the given data.
class TrainingError : public Error {
 public:
  using Error::Error;
};

// A metric is undefined on its input (e.g. AUC with a single class).
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace fairaudit

#endif  // FAIRAUDIT_ERROR_H_
