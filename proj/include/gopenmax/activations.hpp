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

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gopenmax {

/// Label value for ground-truth unknown samples and for rejected predictions.
inline constexpr int kUnknownLabel = -1;

enum class Split { Train, Val, Test, Generated };

std::string_view to_string(Split split);
Split parse_split(std::string_view text);

/// One line of an activation dump.
///
/// `source_class` is an optional extension field holding the original
/// dataset class of a sample. It lets the evaluation harness grow the set of
/// unknown test classes one class at a time.
struct ActivationRecord {
  std::string id;
  Split split = Split::Train;
  int true_label = kUnknownLabel;
  std::optional<int> predicted_label;
  std::vector<double> av;
  std::optional<int> source_class;

  friend bool operator==(const ActivationRecord&,
                         const ActivationRecord&) = default;
};

/// Parses JSON-lines activation records. Blank lines are skipped but still
/// counted for error positions. Throws Error{ParseError} (with the 1-based
/// line number in the message) or Error{DimensionMismatch}.
std::vector<ActivationRecord> parse_dump(std::istream& in);
std::vector<ActivationRecord> load_dump(const std::filesystem::path& path);

void write_dump(std::ostream& out, std::span<const ActivationRecord> records);
void save_dump(const std::filesystem::path& path,
               std::span<const ActivationRecord> records);

enum class DistanceMetric { Euclidean, Cosine, EucosCombined };

std::string_view to_string(DistanceMetric metric);
DistanceMetric parse_metric(std::string_view text);

/// Distance between an activation vector and a class mean.
/// Euclidean is the L2 norm of the difference; Cosine is 1 - cos(av, mav),
/// 0 when either vector is zero; EucosCombined is Euclidean / D + Cosine.
double distance(std::span<const double> av, std::span<const double> mav,
                DistanceMetric metric);

struct ClassStats {
  int class_id = 0;
  std::vector<double> mav;
  std::vector<double> distances;
  std::size_t n_samples = 0;
};

/// Mean activation vector and distance population for one class, over the
/// train-split records labelled `class_id`. With `correct_only`, a record
/// only contributes if its prediction matches its label; a record without
/// predicted_label is judged by the argmax of its activations.
///
/// The mean uses compensated summation so it does not depend on record
/// order beyond rounding. Throws Error{EmptyClass}.
ClassStats compute_class_stats(std::span<const ActivationRecord> records,
                               int class_id, DistanceMetric metric,
                               bool correct_only);

/// Index of the largest element; ties go to the lowest index.
std::size_t argmax(std::span<const double> values);

}  // namespace gopenmax
