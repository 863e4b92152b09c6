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

#include "gopenmax/weibull.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "gopenmax/error.hpp"

namespace gopenmax {
namespace {

constexpr double kShapeLow = 1e-4;
constexpr double kShapeHigh = 1e4;
constexpr double kShapeTolerance = 1e-10;
constexpr int kMaxIterations = 200;

// Weighted moments of log(y) with weights y^k, evaluated relative to the
// largest log value so y^k never overflows.
struct ShapeMoments {
  double weight_sum = 0.0;
  double mean_log = 0.0;      // sum(y^k ln y) / sum(y^k)
  double mean_log_sq = 0.0;   // sum(y^k ln^2 y) / sum(y^k)
};

ShapeMoments moments(std::span<const double> log_y, double max_log,
                     double shape) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (double l : log_y) {
    const double w = std::exp(shape * (l - max_log));
    s0 += w;
    s1 += w * l;
    s2 += w * l * l;
  }
  return {s0, s1 / s0, s2 / s0};
}

// Profile-likelihood stationarity equation for the shape k:
//   g(k) = sum(y^k ln y)/sum(y^k) - 1/k - mean(ln y) = 0
// g is strictly increasing, so the root is unique.
double solve_shape(std::span<const double> log_y, double max_log,
                   double mean_log) {
  auto g = [&](double k) {
    return moments(log_y, max_log, k).mean_log - 1.0 / k - mean_log;
  };

  double lo = kShapeLow;
  double hi = kShapeHigh;
  if (g(lo) >= 0.0) return lo;
  if (g(hi) <= 0.0) return hi;

  double k = 1.0;
  for (int it = 0; it < kMaxIterations; ++it) {
    const ShapeMoments m = moments(log_y, max_log, k);
    const double value = m.mean_log - 1.0 / k - mean_log;
    if (value == 0.0) return k;
    if (value < 0.0) {
      lo = k;
    } else {
      hi = k;
    }
    const double slope =
        m.mean_log_sq - m.mean_log * m.mean_log + 1.0 / (k * k);
    double next = k - value / slope;
    if (!(next > lo && next < hi)) {
      next = std::sqrt(lo * hi);
    }
    if (std::abs(next - k) <= kShapeTolerance * std::max(1.0, k)) {
      return next;
    }
    k = next;
  }
  return k;
}

double translation_for(const std::vector<double>& sorted_desc,
                       std::size_t n_tail) {
  const double tail_min = sorted_desc[n_tail - 1];
  const double candidate =
      n_tail < sorted_desc.size() ? sorted_desc[n_tail] : 0.0;
  if (candidate < tail_min) return candidate;
  return tail_min - 1e-6 * std::max(1.0, std::abs(tail_min));
}

}  // namespace

WeibullModel fit_weibull_tail(std::span<const double> distances,
                              std::size_t tail_size) {
  if (distances.size() < 2) {
    throw Error(ErrorKind::InsufficientData,
                "need at least 2 distances, got " +
                    std::to_string(distances.size()));
  }
  if (tail_size < 2) {
    throw Error(ErrorKind::InsufficientData,
                "tail size must be at least 2, got " +
                    std::to_string(tail_size));
  }

  std::vector<double> sorted(distances.begin(), distances.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const std::size_t n = std::min(tail_size, sorted.size());
  if (sorted.front() == sorted[n - 1]) {
    throw Error(ErrorKind::DegenerateTail,
                "all " + std::to_string(n) + " tail values equal " +
                    std::to_string(sorted.front()));
  }

  const double t = translation_for(sorted, n);
  std::vector<double> log_y(n);
  double mean_log = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    log_y[i] = std::log(sorted[i] - t);
    mean_log += log_y[i];
  }
  mean_log /= static_cast<double>(n);
  // sorted descending, so the first excess is the largest
  const double max_log = log_y.front();

  const double k = solve_shape(log_y, max_log, mean_log);
  const ShapeMoments m = moments(log_y, max_log, k);
  const double log_scale =
      max_log + std::log(m.weight_sum / static_cast<double>(n)) / k;

  WeibullModel model;
  model.translation = t;
  model.scale = std::exp(log_scale);
  model.shape = k;
  model.tail_size = tail_size;
  model.n_fitted = n;
  return model;
}

double WeibullModel::cdf(double x) const {
  if (!(x > translation)) return 0.0;
  return -std::expm1(-std::pow((x - translation) / scale, shape));
}

double weibull_cdf(const WeibullModel& model, double x) {
  return model.cdf(x);
}

void to_json(nlohmann::json& j, const WeibullModel& model) {
  j = nlohmann::json{{"t", model.translation},
                     {"lambda", model.scale},
                     {"k", model.shape},
                     {"tail_size", model.tail_size},
                     {"n_fitted", model.n_fitted}};
}

void from_json(const nlohmann::json& j, WeibullModel& model) {
  j.at("t").get_to(model.translation);
  j.at("lambda").get_to(model.scale);
  j.at("k").get_to(model.shape);
  j.at("tail_size").get_to(model.tail_size);
  j.at("n_fitted").get_to(model.n_fitted);
  if (!(model.scale > 0.0) || !(model.shape > 0.0)) {
    throw Error(ErrorKind::ParseError,
                "weibull model needs lambda > 0 and k > 0");
  }
}

}  // namespace gopenmax
