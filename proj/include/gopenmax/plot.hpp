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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gopenmax/evaluation.hpp"

namespace gopenmax {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;  // sorted by x
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  // Fixed y range; metrics live in [0, 1].
  double y_min = 0.0;
  double y_max = 1.0;
};

/// Standalone SVG document.
std::string render_svg(const LineChart& chart);

/// F-measure against openness, one line per method. Uses the reports
/// matching `alpha` and `tail_size` (first ones found when unset) with
/// per-fold optimal epsilon if present, else the first fixed epsilon.
LineChart fmeasure_vs_openness(std::span<const EvaluationReport> reports,
                               std::optional<std::size_t> alpha = std::nullopt,
                               std::optional<std::size_t> tail_size =
                                   std::nullopt);

/// Unknown-class (or known-class) accuracy against tail size at the highest
/// openness level in the reports.
LineChart accuracy_vs_tail_size(std::span<const EvaluationReport> reports,
                                bool unknown_class = true);

}  // namespace gopenmax
