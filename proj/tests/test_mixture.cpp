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
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "gopenmax/error.hpp"
#include "gopenmax/mixture.hpp"

using namespace gopenmax;

namespace {

std::vector<ActivationRecord> random_generated(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> label(0, 4);
  std::vector<ActivationRecord> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].id = "g" + std::to_string(i);
    out[i].split = Split::Generated;
    out[i].true_label = label(rng);
    out[i].predicted_label = label(rng);
    out[i].av = {0.0};
  }
  return out;
}

// The filter, spelled out.
std::vector<std::string> brute_force(const std::vector<ActivationRecord>& records) {
  std::vector<std::string> ids;
  for (const auto& r : records)
    if (r.predicted_label.value() != r.true_label) ids.push_back(r.id);
  return ids;
}

}  // namespace

TEST_CASE("single class mixture") {
  const auto mv = sample_mixture(1, 42);
  CHECK(mv.m == std::vector<double>{1.0});
  CHECK(mv.seed == 42);
  CHECK(mixture_argmax(mv) == 0);
}

TEST_CASE("mixtures lie on the sum-to-one plane") {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto mv = sample_mixture(2 + seed % 9, seed);
    double total = 0.0;
    for (double x : mv.m) total += x;
    REQUIRE(std::abs(total - 1.0) <= 1e-12);
  }
}

TEST_CASE("component means sit at 1/N") {
  const std::size_t n = 5;
  std::vector<double> mean(n, 0.0);
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const auto mv = sample_mixture(n, seed);
    for (std::size_t i = 0; i < n; ++i) mean[i] += mv.m[i] / 10000.0;
  }
  for (double m : mean) CHECK(std::abs(m - 0.2) <= 0.02);
}

TEST_CASE("same seed, same vector") {
  CHECK(sample_mixture(6, 9) == sample_mixture(6, 9));
  CHECK_FALSE(sample_mixture(6, 9) == sample_mixture(6, 10));
}

TEST_CASE("argmax examples") {
  CHECK(mixture_argmax({{0.1, 0.6, 0.3}, 0}) == 1);
  CHECK(mixture_argmax({{0.4, 0.4, 0.2}, 0}) == 0);  // ties go to the lowest index
  CHECK(mixture_argmax({{-0.3, 0.2, 1.1}, 0}) == 2);
}

TEST_CASE("invalid sampling parameters") {
  CHECK_THROWS_AS(sample_mixture(0, 1), Error);
  CHECK_THROWS_AS(sample_mixture(3, 1, 0.0), Error);
}

TEST_CASE("batch layout") {
  const auto batch = sample_mixture_batch(4, 3, 100, kDefaultMixtureSigma);
  REQUIRE(batch.size() == 3);
  CHECK(batch[0].id == "mix-000000");
  CHECK(batch[2].id == "mix-000002");
  CHECK(batch[2].vector == sample_mixture(4, 102));

  std::ostringstream out;
  write_mixture_batch(out, batch);
  std::istringstream in(out.str());
  const auto back = parse_mixture_batch(in);
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back[i].id == batch[i].id);
    CHECK(back[i].vector == batch[i].vector);
  }
  CHECK(out.str().find("\"argmax\":") != std::string::npos);
  CHECK(sample_mixture_batch(4, 0, 1, 0.2).empty());
}

TEST_CASE("selection examples") {
  std::vector<ActivationRecord> records(3);
  const int truths[] = {2, 2, 0}, predictions[] = {2, 1, 0};
  for (int i = 0; i < 3; ++i) {
    records[i].id = "x" + std::to_string(i);
    records[i].true_label = truths[i];
    records[i].predicted_label = predictions[i];
  }
  const auto sel = select_unknown_candidates(records);
  CHECK(sel.selected_ids == std::vector<std::string>{"x1"});
  CHECK(sel.total_generated == 3);
  CHECK(sel.rejection_reasons.at("x0") == kReasonNetAgrees);
  CHECK(sel.rejection_reasons.at("x2") == kReasonNetAgrees);

  CHECK(select_unknown_candidates(std::vector<ActivationRecord>{}).selected_ids.empty());
}

TEST_CASE("selection agrees with the brute-force filter") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto records = random_generated(500, seed);
    const auto sel = select_unknown_candidates(records);
    CHECK(sel.selected_ids == brute_force(records));

    // selected and rejected partition the input
    std::set<std::string> ids(sel.selected_ids.begin(), sel.selected_ids.end());
    for (const auto& [id, reason] : sel.rejection_reasons) CHECK(ids.insert(id).second);
    CHECK(ids.size() == records.size());

    // idempotent: re-running on the survivors keeps them all
    std::vector<ActivationRecord> kept;
    for (const auto& r : records)
      if (r.predicted_label != r.true_label) kept.push_back(r);
    CHECK(select_unknown_candidates(kept).selected_ids == sel.selected_ids);
  }
}

TEST_CASE("cap keeps the first candidates") {
  const auto records = random_generated(200, 3);
  const auto all = brute_force(records);
  const auto sel = select_unknown_candidates(records, 10);
  REQUIRE(all.size() > 10);
  CHECK(sel.selected_ids == std::vector<std::string>(all.begin(), all.begin() + 10));
  CHECK(sel.rejection_reasons.at(all[10]) == kReasonOverCap);
}

TEST_CASE("selection errors") {
  auto records = random_generated(5, 1);
  records[3].predicted_label.reset();
  try {
    select_unknown_candidates(records);
    FAIL("expected MissingPrediction");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingPrediction);
  }
  records = random_generated(5, 1);
  records[4].id = records[0].id;
  CHECK_THROWS_AS(select_unknown_candidates(records), Error);
}

TEST_CASE("synthetic budget scales with the mean class size") {
  std::vector<ActivationRecord> dump;
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < 10 + 5 * c; ++i) {  // 10, 15, 20 samples
      ActivationRecord r;
      r.true_label = c;
      dump.push_back(r);
    }
  const auto budget = synthetic_budget(dump);
  CHECK(budget.retain_cap == 15);
  CHECK(budget.generate_count == 150);
  CHECK_THROWS_AS(synthetic_budget(std::vector<ActivationRecord>{}), Error);
}
