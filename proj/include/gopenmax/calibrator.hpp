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
#include <span>
#include <string_view>
#include <vector>

#include "gopenmax/activations.hpp"
#include "gopenmax/weibull.hpp"
#include "json.hpp"

namespace gopenmax {

// OpenMax appends a pseudo-unknown score aggregated from the damped known
// activations. GOpenMax reads the unknown score from the classifier's own
// extra output (the last position).
enum class Mode { OpenMax, GOpenMax };

// AsWritten:  w = 1 - (alpha - rank) / alpha * (1 - cdf(d))
// CdfDamping: w = 1 - (alpha - rank + 1) / alpha * cdf(d)
// with rank starting at 1 for the top activation. The first form is the
// survival-function weighting taken literally; it damps samples *near* the
// class mean. The second damps samples far from it.
enum class WeightFormula { AsWritten, CdfDamping };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);
std::string_view to_string(WeightFormula formula);
WeightFormula parse_weight_formula(std::string_view text);

struct CalibrationConfig {
  std::size_t alpha = 2;
  double epsilon = 0.0;
  std::size_t tail_size = 20;
  DistanceMetric metric = DistanceMetric::Euclidean;
  WeightFormula weight_formula = WeightFormula::CdfDamping;
  Mode mode = Mode::GOpenMax;
  bool correct_only = true;

  /// Throws Error{InvalidConfig}. alpha = 0 is accepted and means "no
  /// recalibration" (plain softmax, plus a zero pseudo-unknown in OpenMax).
  void validate(std::size_t n_outputs) const;

  friend bool operator==(const CalibrationConfig&,
                         const CalibrationConfig&) = default;
};

void to_json(nlohmann::json& j, const CalibrationConfig& config);
void from_json(const nlohmann::json& j, CalibrationConfig& config);

struct ClassModel {
  int class_id = 0;
  std::vector<double> mav;
  WeibullModel weibull;

  friend bool operator==(const ClassModel&, const ClassModel&) = default;
};

struct CalibratedOutput {
  std::vector<double> revised_activations;  // av * w, one per classifier output
  std::vector<double> weights;
  // OpenMax: outputs + pseudo-unknown (last); GOpenMax: one per output.
  std::vector<double> probabilities;
  int decision = kUnknownLabel;
  double unknown_probability = 0.0;
};

/// Per-output Weibull models and class means. Immutable once built.
class FittedCalibrator {
 public:
  FittedCalibrator(CalibrationConfig config, std::vector<ClassModel> classes);

  const CalibrationConfig& config() const { return config_; }
  const std::vector<ClassModel>& classes() const { return classes_; }
  std::size_t dimension() const { return classes_.size(); }

  /// Same models under a different alpha / epsilon / weighting; refitting
  /// is only needed when the tail, metric or training data change.
  FittedCalibrator with_config(const CalibrationConfig& config) const;

  nlohmann::json to_json() const;
  static FittedCalibrator from_json(const nlohmann::json& j);

 private:
  CalibrationConfig config_;
  std::vector<ClassModel> classes_;
};

/// Fits one Weibull tail per classifier output. For GOpenMax the last
/// output is the synthetic unknown class and needs its own train-split
/// records (true_label = D - 1). Errors carry the failing class id.
FittedCalibrator fit(std::span<const ActivationRecord> records,
                     const CalibrationConfig& config);

CalibratedOutput recalibrate(std::span<const double> av,
                             const FittedCalibrator& calibrator);

// Where the unknown score lives in a probability vector. None is the plain
// softmax baseline over known classes only.
enum class UnknownSlot { None, Last };

/// Threshold rule: Unknown if the top probability is below epsilon, or if
/// the argmax lands on the unknown slot.
int decide(std::span<const double> probabilities, double epsilon,
           UnknownSlot slot);

/// Both calibrated modes keep the unknown score in the last position.
int decide(std::span<const double> probabilities, double epsilon, Mode mode);

/// Numerically stable softmax.
std::vector<double> softmax(std::span<const double> scores);

/// Class order by descending activation, ties broken by lower index.
std::vector<std::size_t> rank_classes(std::span<const double> av);

}  // namespace gopenmax
