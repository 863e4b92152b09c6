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


#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "gopenmax/activations.hpp"
#include "gopenmax/error.hpp"

using namespace gopenmax;

namespace {

ActivationRecord rec(std::string id, int label, std::vector<double> av,
                     Split split = Split::Train) {
  ActivationRecord r;
  r.id = std::move(id);
  r.split = split;
  r.true_label = label;
  r.av = std::move(av);
  r.predicted_label = static_cast<int>(argmax(r.av));
  return r;
}

ErrorKind parse_kind(const std::string& text, std::string* message = nullptr) {
  std::istringstream in(text);
  try {
    parse_dump(in);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d(0.0, 3.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("parse: empty input gives no records") {
  std::istringstream in("");
  CHECK(parse_dump(in).empty());
  std::istringstream blank("\n\n  \n");
  CHECK(parse_dump(blank).empty());
}

TEST_CASE("parse: one line") {
  std::istringstream in(
      R"({"id":"a","split":"train","true_label":0,"predicted_label":0,"av":[1.0,2.0]})"
      "\n");
  const auto records = parse_dump(in);
  REQUIRE(records.size() == 1);
  CHECK(records[0].id == "a");
  CHECK(records[0].split == Split::Train);
  CHECK(records[0].true_label == 0);
  CHECK(records[0].predicted_label == 0);
  CHECK(records[0].av == std::vector<double>{1.0, 2.0});
  CHECK_FALSE(records[0].source_class.has_value());
}

TEST_CASE("parse: optional and null fields") {
  std::istringstream in(
      R"({"id":"u","split":"test","true_label":-1,"predicted_label":null,"av":[0.5],"source_class":7})");
  const auto records = parse_dump(in);
  REQUIRE(records.size() == 1);
  CHECK_FALSE(records[0].predicted_label.has_value());
  CHECK(records[0].source_class == 7);
  CHECK(records[0].true_label == kUnknownLabel);
}

TEST_CASE("parse: failures") {
  const std::string good =
      R"({"id":"a","split":"train","true_label":0,"predicted_label":0,"av":[1,2]})";
  CHECK(parse_kind(good + "\n" +
                   R"({"id":"b","split":"train","true_label":0,"predicted_label":0,"av":[1,2,3]})") ==
        ErrorKind::DimensionMismatch);

  std::string message;
  CHECK(parse_kind(good + "\n{not json\n", &message) == ErrorKind::ParseError);
  CHECK(message.find("line 2") != std::string::npos);

  CHECK(parse_kind(R"({"id":"a","split":"later","true_label":0,"av":[1]})") ==
        ErrorKind::ParseError);
  CHECK(parse_kind(R"({"id":"a","split":"train","true_label":0})") ==
        ErrorKind::ParseError);
  CHECK(parse_kind(R"({"id":"a","split":"train","true_label":0,"av":["x"]})") ==
        ErrorKind::ParseError);
}

TEST_CASE("dump round trip") {
  std::vector<ActivationRecord> records{rec("a", 0, {1.5, -2.25}),
                                        rec("b", 1, {0.1, 0.7}, Split::Val)};
  records[1].predicted_label.reset();
  records[1].source_class = 3;
  std::ostringstream out;
  write_dump(out, records);
  std::istringstream in(out.str());
  CHECK(parse_dump(in) == records);
  CHECK(out.str().rfind(R"({"id":"a","split":"train","true_label":0,"predicted_label":0,"av":)", 0) == 0);
}

TEST_CASE("load_dump: missing file is an Io error naming the path") {
  try {
    load_dump("/nonexistent/dir/dump.jsonl");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
    CHECK(std::string(e.what()).find("/nonexistent/dir/dump.jsonl") != std::string::npos);
  }
}

TEST_CASE("distance examples") {
  const std::vector<double> a{1.0, 0.0}, b{0.0, 1.0};
  CHECK(distance(a, b, DistanceMetric::Euclidean) == doctest::Approx(std::sqrt(2.0)));
  CHECK(distance(a, b, DistanceMetric::Cosine) == doctest::Approx(1.0));
  CHECK(distance(a, a, DistanceMetric::Euclidean) == 0.0);
  CHECK(distance(a, a, DistanceMetric::Cosine) == doctest::Approx(0.0).epsilon(1e-15));
  // Euclidean / D + cosine
  CHECK(distance(a, b, DistanceMetric::EucosCombined) ==
        doctest::Approx(std::sqrt(2.0) / 2.0 + 1.0));
  const std::vector<double> zero{0.0, 0.0};
  CHECK(distance(zero, a, DistanceMetric::Cosine) == 0.0);
  CHECK(parse_metric("eucos") == DistanceMetric::EucosCombined);
  CHECK_THROWS_AS(parse_metric("manhattan"), Error);
}

TEST_CASE("class stats examples") {
  const std::vector<ActivationRecord> records{rec("a", 0, {0.0, 2.0}),
                                              rec("b", 0, {2.0, 0.0})};
  // predicted labels are 1 and 0; keep both
  const auto stats = compute_class_stats(records, 0, DistanceMetric::Euclidean, false);
  CHECK(stats.mav == std::vector<double>{1.0, 1.0});
  REQUIRE(stats.distances.size() == 2);
  CHECK(stats.distances[0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(stats.distances[1] == doctest::Approx(std::sqrt(2.0)));
  CHECK(stats.n_samples == 2);

  const auto correct = compute_class_stats(records, 0, DistanceMetric::Euclidean, true);
  CHECK(correct.n_samples == 1);
  CHECK(correct.mav == std::vector<double>{2.0, 0.0});
  CHECK(correct.distances == std::vector<double>{0.0});

  try {
    compute_class_stats(records, 4, DistanceMetric::Euclidean, false);
    FAIL("expected EmptyClass");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyClass);
    CHECK(e.class_id() == 4);
  }
}

TEST_CASE("class stats ignore non-train splits") {
  const std::vector<ActivationRecord> records{
      rec("a", 0, {4.0, 0.0}), rec("b", 0, {100.0, 0.0}, Split::Test)};
  const auto stats = compute_class_stats(records, 0, DistanceMetric::Euclidean, false);
  CHECK(stats.n_samples == 1);
  CHECK(stats.mav == std::vector<double>{4.0, 0.0});
}

TEST_CASE("mav properties") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 2 + trial % 6;
    std::vector<ActivationRecord> records;
    for (int i = 0; i < 12; ++i)
      records.push_back(rec("r" + std::to_string(i), 0, random_vec(rng, dim)));
    const auto base = compute_class_stats(records, 0, DistanceMetric::Euclidean, false);

    // mean of the inputs, computed here naively
    for (std::size_t d = 0; d < dim; ++d) {
      double s = 0.0;
      for (const auto& r : records) s += r.av[d];
      CHECK(base.mav[d] == doctest::Approx(s / records.size()).epsilon(1e-12));
    }

    // permutation invariance
    auto shuffled = records;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto perm = compute_class_stats(shuffled, 0, DistanceMetric::Euclidean, false);
    for (std::size_t d = 0; d < dim; ++d)
      CHECK(std::abs(perm.mav[d] - base.mav[d]) <= 1e-9);

    // linearity: mav(a*x + b) = a*mav(x) + b
    auto scaled = records;
    for (auto& r : scaled)
      for (double& x : r.av) x = 2.5 * x - 1.0;
    const auto lin = compute_class_stats(scaled, 0, DistanceMetric::Euclidean, false);
    for (std::size_t d = 0; d < dim; ++d)
      CHECK(std::abs(lin.mav[d] - (2.5 * base.mav[d] - 1.0)) <= 1e-9);
  }
}

TEST_CASE("metric properties") {
  std::mt19937_64 rng(29);
  for (auto metric : {DistanceMetric::Euclidean, DistanceMetric::Cosine}) {
    for (int trial = 0; trial < 500; ++trial) {
      const auto x = random_vec(rng, 5), y = random_vec(rng, 5), z = random_vec(rng, 5);
      const double xy = distance(x, y, metric);
      CHECK(xy >= 0.0);
      CHECK(std::abs(xy - distance(y, x, metric)) <= 1e-12);
      CHECK(distance(x, x, metric) <= 1e-12);
      if (metric == DistanceMetric::Euclidean)
        CHECK(xy <= distance(x, z, metric) + distance(z, y, metric) + 1e-9);
    }
  }
}

TEST_CASE("argmax takes the first maximum") {
  const std::vector<double> v{1.0, 3.0, 3.0, 2.0};
  CHECK(argmax(v) == 1);
}
