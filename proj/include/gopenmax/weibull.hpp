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

#include "json.hpp"

namespace gopenmax {

/// Extreme-value tail model: a two-parameter Weibull fitted to the excesses
/// of the largest distances over a translation point.
///
/// cdf(x) = 0 for x <= translation, otherwise
/// 1 - exp(-((x - translation) / scale)^shape).
struct WeibullModel {
  double translation = 0.0;
  double scale = 1.0;  // lambda
  double shape = 1.0;  // k
  std::size_t tail_size = 0;
  std::size_t n_fitted = 0;

  double cdf(double x) const;

  friend bool operator==(const WeibullModel&, const WeibullModel&) = default;
};

/// Fits the largest `tail_size` values of `distances` by maximum likelihood.
///
/// The translation is the largest distance left out of the tail, or 0 when
/// the tail is the whole population. If that point is not strictly below
/// the tail minimum, it falls back to tail_min - 1e-6 * max(1, |tail_min|).
/// The shape solves the MLE stationarity equation (safeguarded Newton,
/// tolerance 1e-10, at most 200 iterations, bracket (1e-4, 1e4)); the
/// scale follows in closed form.
///
/// Throws Error{InsufficientData} for fewer than 2 samples or tail_size < 2,
/// Error{DegenerateTail} when every tail value is equal.
WeibullModel fit_weibull_tail(std::span<const double> distances,
                              std::size_t tail_size);

double weibull_cdf(const WeibullModel& model, double x);

void to_json(nlohmann::json& j, const WeibullModel& model);
void from_json(const nlohmann::json& j, WeibullModel& model);

}  // namespace gopenmax
