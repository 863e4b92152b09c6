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

#include "gopenmax/error.hpp"

namespace gopenmax {
namespace {

std::string decorate(ErrorKind kind, const std::string& message,
                     std::optional<int> class_id) {
  std::string out(to_string(kind));
  if (class_id) out += " (class " + std::to_string(*class_id) + ")";
  out += ": ";
  out += message;
  return out;
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::DegenerateTail: return "DegenerateTail";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EmptyClass: return "EmptyClass";
    case ErrorKind::MissingPrediction: return "MissingPrediction";
    case ErrorKind::InvalidCounts: return "InvalidCounts";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<int> class_id)
    : std::runtime_error(decorate(kind, message, class_id)),
      kind_(kind),
      class_id_(class_id) {}

bool Error::is_validation() const noexcept {
  switch (kind_) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidConfig:
    case ErrorKind::InvalidCounts:
    case ErrorKind::MissingPrediction:
    case ErrorKind::Io:
      return true;
    default:
      return false;
  }
}

}  // namespace gopenmax
