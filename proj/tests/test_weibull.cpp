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

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "doctest.h"
#include "gopenmax/error.hpp"
#include "gopenmax/weibull.hpp"
#include "oracles.hpp"

using gopenmax::Error;
using gopenmax::ErrorKind;
using gopenmax::WeibullModel;
using gopenmax::fit_weibull_tail;
using gopenmax::weibull_cdf;

namespace {

std::vector<double> weibull_samples(std::size_t n, double scale, double shape,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::weibull_distribution<double> dist(shape, scale);
  std::vector<double> xs(n);
  for (double& x : xs) x = dist(rng);
  return xs;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

// Excesses over the model's translation for the `tail` largest values.
std::vector<double> tail_excesses(std::vector<double> xs, std::size_t tail,
                                  double t) {
  std::sort(xs.begin(), xs.end(), std::greater<>());
  xs.resize(std::min(tail, xs.size()));
  for (double& x : xs) x -= t;
  return xs;
}

}  // namespace

TEST_CASE("cdf closed form") {
  const WeibullModel unit{0.0, 1.0, 1.0, 2, 2};
  CHECK(weibull_cdf(unit, 0.0) == 0.0);
  CHECK(weibull_cdf(unit, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(weibull_cdf(unit, 1.0) == doctest::Approx(0.632121).epsilon(1e-6));

  const WeibullModel shifted{2.0, 3.0, 0.5, 2, 2};
  CHECK(weibull_cdf(shifted, 1.0) == 0.0);
  CHECK(weibull_cdf(shifted, 2.0) == 0.0);
  CHECK(weibull_cdf(shifted, 1e9) == doctest::Approx(1.0));
}

TEST_CASE("cdf is monotone over random models") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> t_dist(-2.0, 2.0), pos(0.05, 5.0),
      x_dist(-5.0, 20.0);
  for (int m = 0; m < 300; ++m) {
    const WeibullModel model{t_dist(rng), pos(rng), pos(rng), 2, 2};
    std::vector<double> xs(60);
    for (double& x : xs) x = x_dist(rng);
    std::sort(xs.begin(), xs.end());
    double prev = 0.0;
    for (double x : xs) {
      const double p = weibull_cdf(model, x);
      REQUIRE(p >= prev);
      REQUIRE(p >= 0.0);
      REQUIRE(p <= 1.0);
      if (x <= model.translation) REQUIRE(p == 0.0);
      prev = p;
    }
  }
}

TEST_CASE("fit errors") {
  CHECK(kind_of([] {
          const std::vector<double> d{5.0, 5.0, 5.0};
          fit_weibull_tail(d, 3);
        }) == ErrorKind::DegenerateTail);
  CHECK(kind_of([] {
          const std::vector<double> d{1.0};
          fit_weibull_tail(d, 3);
        }) == ErrorKind::InsufficientData);
  CHECK(kind_of([] {
          const std::vector<double> d{1.0, 2.0, 3.0};
          fit_weibull_tail(d, 1);
        }) == ErrorKind::InsufficientData);
  // distinct values overall, but the tail itself is flat
  CHECK(kind_of([] {
          const std::vector<double> d{1.0, 2.0, 4.0, 4.0};
          fit_weibull_tail(d, 2);
        }) == ErrorKind::DegenerateTail);
}

TEST_CASE("small tail matches the grid-search MLE") {
  const std::vector<double> d{0.5, 1.0, 1.5, 2.0, 2.5};
  const WeibullModel model = fit_weibull_tail(d, 3);
  CHECK(model.n_fitted == 3);
  CHECK(model.tail_size == 3);
  // tail {1.5, 2.0, 2.5}; the largest excluded value is 1.0
  CHECK(model.translation == 1.0);

  const auto grid = oracle::grid_search_weibull({0.5, 1.0, 1.5});
  CHECK(std::abs(model.scale - grid.scale) <= 0.02);
  CHECK(std::abs(model.shape - grid.shape) <= 0.02);
}

TEST_CASE("tail of a larger sample matches the grid-search MLE") {
  const auto xs = weibull_samples(1000, 1.0, 2.0, 5);
  const WeibullModel model = fit_weibull_tail(xs, 250);
  CHECK(model.n_fitted == 250);

  const auto grid =
      oracle::grid_search_weibull(tail_excesses(xs, 250, model.translation));
  CHECK(model.shape == doctest::Approx(grid.shape).epsilon(0.15));
  CHECK(model.scale == doctest::Approx(grid.scale).epsilon(0.15));
  CHECK(model.translation < 1.5);  // the 75th percentile sits near 1.18
  CHECK(model.translation > 0.9);
}

TEST_CASE("MLE log-likelihood is never beaten by the grid") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> size(2, 10);
  std::uniform_real_distribution<double> value(0.0, 5.0);
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<double> d(size(rng));
    for (double& x : d) x = value(rng);
    const WeibullModel model = fit_weibull_tail(d, d.size());
    const auto y = tail_excesses(d, d.size(), model.translation);
    const double ll = oracle::weibull_log_likelihood(y, model.scale, model.shape);
    const auto grid = oracle::grid_search_weibull(y);
    INFO("trial " << trial << " k=" << model.shape << " lambda=" << model.scale);
    CHECK(ll >= grid.log_likelihood - 1e-3);
  }
}

TEST_CASE("fit recovers generating parameters on large samples") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const auto xs = weibull_samples(10000, 1.0, 2.0, seed);
    const WeibullModel model = fit_weibull_tail(xs, xs.size());
    INFO("seed " << seed);
    CHECK(model.translation == 0.0);
    CHECK(model.scale == doctest::Approx(1.0).epsilon(0.05));
    CHECK(model.shape == doctest::Approx(2.0).epsilon(0.05));
  }
  const auto heavy = weibull_samples(10000, 3.0, 0.7, 9);
  const WeibullModel model = fit_weibull_tail(heavy, heavy.size());
  CHECK(model.scale == doctest::Approx(3.0).epsilon(0.05));
  CHECK(model.shape == doctest::Approx(0.7).epsilon(0.05));
}

TEST_CASE("fit invariants") {
  const auto xs = weibull_samples(40, 2.0, 1.5, 21);
  SUBCASE("tail larger than the population") {
    const WeibullModel model = fit_weibull_tail(xs, 100);
    CHECK(model.n_fitted == 40);
    CHECK(model.tail_size == 100);
  }
  SUBCASE("translation sits below every fitted point") {
    const WeibullModel model = fit_weibull_tail(xs, 10);
    auto sorted = xs;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    CHECK(model.translation < sorted[9]);
    CHECK(model.translation == sorted[10]);
    CHECK(model.scale > 0.0);
    CHECK(model.shape > 0.0);
  }
  SUBCASE("zero distance in a full tail falls back to the margin rule") {
    const std::vector<double> d{0.0, 0.4, 1.1, 2.0};
    const WeibullModel model = fit_weibull_tail(d, 4);
    CHECK(model.translation == -1e-6);
  }
  SUBCASE("ties at the tail boundary fall back to the margin rule") {
    const std::vector<double> d{1.0, 2.0, 2.0, 3.0};
    const WeibullModel model = fit_weibull_tail(d, 2);
    CHECK(model.translation == doctest::Approx(2.0 - 2e-6).epsilon(1e-15));
  }
  SUBCASE("bit-identical refits, independent of input order") {
    auto shuffled = xs;
    std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(4));
    CHECK(fit_weibull_tail(xs, 25) == fit_weibull_tail(xs, 25));
    CHECK(fit_weibull_tail(xs, 25) == fit_weibull_tail(shuffled, 25));
  }
}

TEST_CASE("json layout") {
  const WeibullModel model{0.25, 1.5, 2.5, 20, 17};
  const nlohmann::json j = model;
  CHECK(j.at("t") == 0.25);
  CHECK(j.at("lambda") == 1.5);
  CHECK(j.at("k") == 2.5);
  CHECK(j.at("tail_size") == 20);
  CHECK(j.at("n_fitted") == 17);
  CHECK(j.get<WeibullModel>() == model);

  nlohmann::json bad = j;
  bad["k"] = 0.0;
  CHECK_THROWS_AS(bad.get<WeibullModel>(), Error);
}
