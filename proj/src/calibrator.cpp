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

#include "gopenmax/calibrator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gopenmax/error.hpp"

namespace gopenmax {

std::string_view to_string(Mode mode) {
  return mode == Mode::OpenMax ? "openmax" : "gopenmax";
}

Mode parse_mode(std::string_view text) {
  if (text == "openmax") return Mode::OpenMax;
  if (text == "gopenmax") return Mode::GOpenMax;
  throw Error(ErrorKind::InvalidConfig,
              "unknown mode \"" + std::string(text) + "\"");
}

std::string_view to_string(WeightFormula formula) {
  return formula == WeightFormula::AsWritten ? "as_written" : "cdf_damping";
}

WeightFormula parse_weight_formula(std::string_view text) {
  if (text == "as_written") return WeightFormula::AsWritten;
  if (text == "cdf_damping") return WeightFormula::CdfDamping;
  throw Error(ErrorKind::InvalidConfig,
              "unknown weight formula \"" + std::string(text) + "\"");
}

void CalibrationConfig::validate(std::size_t n_outputs) const {
  if (alpha > n_outputs) {
    throw Error(ErrorKind::InvalidConfig,
                "alpha=" + std::to_string(alpha) + " exceeds the " +
                    std::to_string(n_outputs) + " classifier outputs");
  }
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorKind::InvalidConfig, "epsilon must lie in [0, 1]");
  }
  if (tail_size < 2) {
    throw Error(ErrorKind::InvalidConfig, "tail_size must be at least 2");
  }
  if (mode == Mode::GOpenMax && n_outputs < 2) {
    throw Error(ErrorKind::InvalidConfig,
                "gopenmax needs at least one known class plus the unknown "
                "output");
  }
}

void to_json(nlohmann::json& j, const CalibrationConfig& c) {
  j = nlohmann::json{{"alpha", c.alpha},
                     {"epsilon", c.epsilon},
                     {"tail_size", c.tail_size},
                     {"metric", to_string(c.metric)},
                     {"weight_formula", to_string(c.weight_formula)},
                     {"mode", to_string(c.mode)},
                     {"correct_only", c.correct_only}};
}

void from_json(const nlohmann::json& j, CalibrationConfig& c) {
  j.at("alpha").get_to(c.alpha);
  j.at("epsilon").get_to(c.epsilon);
  j.at("tail_size").get_to(c.tail_size);
  c.metric = parse_metric(j.at("metric").get<std::string>());
  c.weight_formula =
      parse_weight_formula(j.at("weight_formula").get<std::string>());
  c.mode = parse_mode(j.at("mode").get<std::string>());
  j.at("correct_only").get_to(c.correct_only);
}

FittedCalibrator::FittedCalibrator(CalibrationConfig config,
                                   std::vector<ClassModel> classes)
    : config_(config), classes_(std::move(classes)) {
  config_.validate(classes_.size());
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (classes_[i].class_id != static_cast<int>(i)) {
      throw Error(ErrorKind::InvalidConfig,
                  "class models must be ordered by output position");
    }
    if (classes_[i].mav.size() != classes_.size()) {
      throw Error(ErrorKind::DimensionMismatch,
                  "mav length does not match the number of outputs",
                  classes_[i].class_id);
    }
  }
}

FittedCalibrator FittedCalibrator::with_config(
    const CalibrationConfig& config) const {
  return FittedCalibrator(config, classes_);
}

nlohmann::json FittedCalibrator::to_json() const {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : classes_) {
    classes.push_back(
        {{"class_id", c.class_id}, {"mav", c.mav}, {"weibull", c.weibull}});
  }
  return {{"mode", to_string(config_.mode)},
          {"config", config_},
          {"classes", std::move(classes)}};
}

FittedCalibrator FittedCalibrator::from_json(const nlohmann::json& j) {
  try {
    auto config = j.at("config").get<CalibrationConfig>();
    if (parse_mode(j.at("mode").get<std::string>()) != config.mode) {
      throw Error(ErrorKind::ParseError, "mode and config.mode disagree");
    }
    std::vector<ClassModel> classes;
    for (const auto& c : j.at("classes")) {
      ClassModel model;
      c.at("class_id").get_to(model.class_id);
      c.at("mav").get_to(model.mav);
      c.at("weibull").get_to(model.weibull);
      classes.push_back(std::move(model));
    }
    return FittedCalibrator(config, std::move(classes));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError,
                std::string("malformed calibrator: ") + e.what());
  }
}

FittedCalibrator fit(std::span<const ActivationRecord> records,
                     const CalibrationConfig& config) {
  if (records.empty()) {
    throw Error(ErrorKind::EmptyInput, "no activation records to fit");
  }
  const std::size_t dim = records.front().av.size();
  config.validate(dim);

  std::vector<ClassModel> classes;
  classes.reserve(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    const int class_id = static_cast<int>(c);
    const ClassStats stats =
        compute_class_stats(records, class_id, config.metric,
                            config.correct_only);
    ClassModel model;
    model.class_id = class_id;
    model.mav = stats.mav;
    try {
      model.weibull = fit_weibull_tail(stats.distances, config.tail_size);
    } catch (const Error& e) {
      throw Error(e.kind(), e.what(), class_id);
    }
    classes.push_back(std::move(model));
  }
  return FittedCalibrator(config, std::move(classes));
}

std::vector<std::size_t> rank_classes(std::span<const double> av) {
  std::vector<std::size_t> order(av.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return av[a] > av[b]; });
  return order;
}

std::vector<double> softmax(std::span<const double> scores) {
  std::vector<double> out(scores.size());
  if (scores.empty()) return out;
  const double top = *std::max_element(scores.begin(), scores.end());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out[i] = std::exp(scores[i] - top);
    total += out[i];
  }
  for (double& p : out) p /= total;
  return out;
}

CalibratedOutput recalibrate(std::span<const double> av,
                             const FittedCalibrator& calibrator) {
  const auto& config = calibrator.config();
  const auto& classes = calibrator.classes();
  if (av.size() != classes.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "activation vector has length " + std::to_string(av.size()) +
                    ", calibrator expects " + std::to_string(classes.size()));
  }

  CalibratedOutput out;
  out.weights.assign(av.size(), 1.0);
  const auto order = rank_classes(av);
  const double alpha = static_cast<double>(config.alpha);
  for (std::size_t rank = 1; rank <= config.alpha; ++rank) {
    const ClassModel& model = classes[order[rank - 1]];
    const double d = distance(av, model.mav, config.metric);
    const double cdf = model.weibull.cdf(d);
    const double r = static_cast<double>(rank);
    double& w = out.weights[order[rank - 1]];
    if (config.weight_formula == WeightFormula::AsWritten) {
      w = 1.0 - (alpha - r) / alpha * (1.0 - cdf);
    } else {
      w = 1.0 - (alpha - r + 1.0) / alpha * cdf;
    }
  }

  out.revised_activations.resize(av.size());
  for (std::size_t i = 0; i < av.size(); ++i) {
    out.revised_activations[i] = av[i] * out.weights[i];
  }

  std::vector<double> scores = out.revised_activations;
  if (config.mode == Mode::OpenMax) {
    double pseudo_unknown = 0.0;
    for (std::size_t i = 0; i < av.size(); ++i) {
      pseudo_unknown += av[i] * (1.0 - out.weights[i]);
    }
    scores.push_back(pseudo_unknown);
  }
  out.probabilities = softmax(scores);
  out.unknown_probability = out.probabilities.back();
  out.decision = decide(out.probabilities, config.epsilon, config.mode);
  return out;
}

int decide(std::span<const double> probabilities, double epsilon,
           UnknownSlot slot) {
  if (probabilities.empty()) return kUnknownLabel;
  const std::size_t top = argmax(probabilities);
  if (probabilities[top] < epsilon) return kUnknownLabel;
  if (slot == UnknownSlot::Last && top + 1 == probabilities.size()) {
    return kUnknownLabel;
  }
  return static_cast<int>(top);
}

int decide(std::span<const double> probabilities, double epsilon, Mode) {
  return decide(probabilities, epsilon, UnknownSlot::Last);
}

}  // namespace gopenmax
