/*
 * Copyright 2026 The gopenmax Authors.
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

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gopenmax {

enum class ErrorKind {
  InsufficientData,
  DegenerateTail,
  ParseError,
  DimensionMismatch,
  EmptyClass,
  MissingPrediction,
  InvalidCounts,
  EmptyInput,
  EmptySubset,
  InvalidConfig,
  Io,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this type. `class_id` is set
// when the failure belongs to one class of a multi-class fit.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<int> class_id = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<int> class_id() const noexcept { return class_id_; }

  // Validation errors are caused by user input rather than by the data
  // (CLI maps them to exit code 2).
  bool is_validation() const noexcept;

 private:
  ErrorKind kind_;
  std::optional<int> class_id_;
};

}  // namespace gopenmax
