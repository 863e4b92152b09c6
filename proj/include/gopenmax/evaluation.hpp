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

#include "gopenmax/activations.hpp"
#include "gopenmax/calibrator.hpp"
#include "json.hpp"

namespace gopenmax {

// Open-set classifiers compared by the harness. The G- variants read the
// augmented (K+1 output) dump; the others read the closed-set dump.
enum class Method { SoftMax, GSoftMax, OpenMax, GOpenMax };

std::string_view to_string(Method method);
Method parse_method(std::string_view text);
bool uses_augmented_dump(Method method);

struct SplitFractions {
  double train = 0.6;
  double val = 0.2;
  double test = 0.2;
};

/// Known classes are listed by source id; known_classes[i] is label i in
/// the dumps. Unknown test classes are added one at a time, in list order,
/// to raise openness.
struct ProtocolSpec {
  std::vector<int> known_classes;
  std::vector<int> unknown_test_classes;
  std::size_t n_folds = 3;
  SplitFractions fractions;

  void validate() const;  // Error{InvalidConfig}
};

void to_json(nlohmann::json& j, const ProtocolSpec& p);
void from_json(const nlohmann::json& j, ProtocolSpec& p);

/// 1 - sqrt(2 * n_train / (n_r + n_test)). Throws Error{InvalidCounts} for
/// non-positive counts.
double openness(long n_train, long n_test, long n_r);

enum class FMeasureAveraging {
  Micro,       // Unknown counted as one more label; equals accuracy
  MacroKnown,  // unweighted mean of per-class F1 over known truth classes
};

std::string_view to_string(FMeasureAveraging averaging);
FMeasureAveraging parse_averaging(std::string_view text);

/// Labels are class indices, kUnknownLabel for Unknown.
/// Throws Error{EmptyInput} on empty input, Error{DimensionMismatch} on
/// length mismatch.
double f_measure(std::span<const int> predictions, std::span<const int> truths,
                 FMeasureAveraging averaging = FMeasureAveraging::Micro);

/// Fraction of known-truth samples predicted with their exact class.
/// Throws Error{EmptySubset} when there are none.
double known_accuracy(std::span<const int> predictions,
                      std::span<const int> truths);

/// Fraction of Unknown-truth samples predicted Unknown.
/// Throws Error{EmptySubset} when there are none.
double unknown_accuracy(std::span<const int> predictions,
                        std::span<const int> truths);

/// Probabilities for one sample after whatever calibration a method applies.
struct ScoredSample {
  Split split = Split::Test;
  int truth = kUnknownLabel;
  std::vector<double> probabilities;
};

/// Picks the candidate threshold with the best F-measure on validation
/// samples (smallest threshold on ties). Only val-split samples are
/// accepted; anything else throws Error{InvalidConfig}.
double choose_epsilon(std::span<const ScoredSample> validation,
                      std::span<const double> candidates, UnknownSlot slot,
                      FMeasureAveraging averaging);

/// Activation dumps for one cross-validation fold.
struct FoldDumps {
  std::vector<ActivationRecord> closed_set;  // K outputs
  std::vector<ActivationRecord> augmented;   // K + 1 outputs, may be empty
};

struct SweepGrid {
  std::vector<Method> methods{Method::SoftMax, Method::OpenMax,
                              Method::GOpenMax};
  std::vector<std::size_t> alphas{2};
  std::vector<std::size_t> tail_sizes{20};
  std::vector<double> epsilons{0.0};
  // Pick epsilon per fold on validation data instead of one cell per value.
  bool optimize_epsilon = false;
  // Openness levels as numbers of unknown test classes; empty = 0..all.
  std::vector<std::size_t> unknown_class_counts;
  DistanceMetric metric = DistanceMetric::Euclidean;
  WeightFormula weight_formula = WeightFormula::CdfDamping;
  bool correct_only = true;
  FMeasureAveraging averaging = FMeasureAveraging::Micro;

  void validate(const ProtocolSpec& protocol) const;  // Error{InvalidConfig}
};

struct FoldMetrics {
  std::size_t fold = 0;
  double epsilon = 0.0;
  double f_measure = 0.0;
  std::optional<double> known_accuracy;
  std::optional<double> unknown_accuracy;
  std::size_t n_test = 0;
};

struct EvaluationReport {
  Method method = Method::SoftMax;
  std::size_t alpha = 0;
  std::size_t tail_size = 0;
  std::optional<double> epsilon;  // empty when chosen per fold on val
  std::size_t n_unknown_classes = 0;
  double openness = 0.0;
  std::vector<FoldMetrics> folds;
  // arithmetic means over folds
  double mean_epsilon = 0.0;
  double f_measure = 0.0;
  std::optional<double> known_accuracy;
  std::optional<double> unknown_accuracy;
  std::optional<std::string> error;
};

/// Evaluates the Cartesian product of the grid over every fold, fitting
/// each (fold, method, tail size) calibrator once. A failing cell keeps its
/// error message and the sweep continues. Reports come back in grid order
/// (method, alpha, tail size, epsilon, openness level) regardless of `jobs`.
std::vector<EvaluationReport> sweep(std::span<const FoldDumps> folds,
                                    const ProtocolSpec& protocol,
                                    const SweepGrid& grid,
                                    std::size_t jobs = 1);

nlohmann::json reports_to_json(std::span<const EvaluationReport> reports);
std::vector<EvaluationReport> reports_from_json(const nlohmann::json& j);

/// Columns: mode, alpha, epsilon, tail_size, openness, f_measure, known_acc,
/// unknown_acc, fold. One row per fold; a "mean" row follows when a report
/// has more than one fold. Missing metrics are left empty.
void write_reports_csv(std::ostream& out,
                       std::span<const EvaluationReport> reports);

/// Fold list plus optional protocol, read from a JSON manifest:
/// {"protocol": {...}, "folds": [{"closed_set": path, "augmented": path}]}
/// Relative paths resolve against the manifest's directory.
struct DumpManifest {
  std::optional<ProtocolSpec> protocol;
  std::vector<std::filesystem::path> closed_set;
  std::vector<std::filesystem::path> augmented;  // empty entries allowed
};

DumpManifest load_manifest(const std::filesystem::path& path);
std::vector<FoldDumps> load_folds(const DumpManifest& manifest);

}  // namespace gopenmax
