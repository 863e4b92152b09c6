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

// Writes the synthetic open-set fixture used by the end-to-end tests:
// Gaussian logit clusters for 6 known classes, a synthetic "generated"
// unknown class for the augmented classifier, and 4 held-out unknown test
// classes that look like confident but off-cluster known samples.
//
//   make_fixture <out_dir> [seed]

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "gopenmax/activations.hpp"
#include "json.hpp"

namespace {

using gopenmax::ActivationRecord;
using gopenmax::Split;

constexpr int kKnown = 6;
constexpr int kFolds = 3;
constexpr int kTrainPerClass = 60;
constexpr int kValPerClass = 20;
constexpr int kTestPerClass = 20;
constexpr int kUnknownVal = 10;
constexpr int kUnknownTest = 20;

// (strong class, weaker class, strong logit, weak logit) per unknown class
struct Imposter {
  int source;
  int strong, weak;
  double strong_logit, weak_logit;
};
constexpr Imposter kImposters[] = {
    {6, 0, 1, 10.0, 5.0},
    {7, 2, 3, 10.0, 5.0},
    {8, 4, 5, 10.5, 4.5},
    {9, 1, 4, 9.5, 5.5},
};

double round4(double x) { return std::round(x * 1e4) / 1e4; }

class FoldWriter {
 public:
  FoldWriter(int fold, std::uint64_t seed) : fold_(fold), rng_(seed) {}

  void build() {
    for (int c = 0; c < kKnown; ++c) {
      add_known(c, Split::Train, kTrainPerClass);
      add_known(c, Split::Val, kValPerClass);
      add_known(c, Split::Test, kTestPerClass);
    }
    add_generated(kTrainPerClass);
    for (const auto& imp : kImposters) {
      add_unknown(imp, Split::Val, kUnknownVal);
      add_unknown(imp, Split::Test, kUnknownTest);
    }
  }

  const std::vector<ActivationRecord>& closed_set() const { return closed_; }
  const std::vector<ActivationRecord>& augmented() const { return augmented_; }

 private:
  std::string id(const std::string& kind, Split split, int n) const {
    return "f" + std::to_string(fold_) + "-" + kind + "-" +
           std::string(gopenmax::to_string(split)) + "-" + std::to_string(n);
  }

  std::vector<double> noise(int dim, double sd) {
    std::normal_distribution<double> n(0.0, sd);
    std::vector<double> v(dim);
    for (double& x : v) x = n(rng_);
    return v;
  }

  void push(std::vector<ActivationRecord>& dump, ActivationRecord rec) {
    for (double& x : rec.av) x = round4(x);
    rec.predicted_label = static_cast<int>(gopenmax::argmax(rec.av));
    dump.push_back(std::move(rec));
  }

  void add_known(int c, Split split, int count) {
    for (int i = 0; i < count; ++i) {
      auto av = noise(kKnown + 1, 1.0);
      av[c] += 6.0;
      ActivationRecord rec;
      rec.id = id("k" + std::to_string(c), split, i);
      rec.split = split;
      rec.true_label = c;
      rec.source_class = c;
      rec.av = av;
      rec.av.pop_back();
      push(closed_, rec);
      rec.av = av;
      push(augmented_, rec);
    }
  }

  // Mixture-like samples labelled with the extra output of the augmented
  // classifier; the closed-set classifier never sees them.
  void add_generated(int count) {
    std::uniform_int_distribution<int> pick(0, kKnown - 1);
    for (int i = 0; i < count; ++i) {
      auto av = noise(kKnown + 1, 1.0);
      const int a = pick(rng_);
      int b = pick(rng_);
      if (b == a) b = (a + 1) % kKnown;
      av[a] += 3.5;
      av[b] += 3.0;
      av[kKnown] += 6.0;
      ActivationRecord rec;
      rec.id = id("gen", Split::Train, i);
      rec.split = Split::Train;
      rec.true_label = kKnown;
      rec.av = av;
      push(augmented_, rec);
    }
  }

  void add_unknown(const Imposter& imp, Split split, int count) {
    std::normal_distribution<double> extra(6.5, 1.5);
    for (int i = 0; i < count; ++i) {
      auto av = noise(kKnown + 1, 1.0);
      av[imp.strong] += imp.strong_logit;
      av[imp.weak] += imp.weak_logit;
      ActivationRecord rec;
      rec.id = id("u" + std::to_string(imp.source), split, i);
      rec.split = split;
      rec.true_label = gopenmax::kUnknownLabel;
      rec.source_class = imp.source;
      rec.av = av;
      rec.av.pop_back();
      push(closed_, rec);
      rec.av = av;
      rec.av[kKnown] += extra(rng_);
      push(augmented_, rec);
    }
  }

  int fold_;
  std::mt19937_64 rng_;
  std::vector<ActivationRecord> closed_;
  std::vector<ActivationRecord> augmented_;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: make_fixture <out_dir> [seed]\n";
    return 2;
  }
  const std::filesystem::path dir(argv[1]);
  const std::uint64_t seed = argc > 2 ? std::stoull(argv[2]) : 20260101;
  std::filesystem::create_directories(dir);

  nlohmann::ordered_json manifest;
  manifest["protocol"] = {{"known_classes", {0, 1, 2, 3, 4, 5}},
                          {"unknown_test_classes", {6, 7, 8, 9}},
                          {"n_folds", kFolds},
                          {"split_fractions", {0.6, 0.2, 0.2}}};
  manifest["folds"] = nlohmann::ordered_json::array();
  for (int f = 0; f < kFolds; ++f) {
    FoldWriter writer(f, seed + static_cast<std::uint64_t>(f));
    writer.build();
    const std::string closed = "fold" + std::to_string(f) + "_closed.jsonl";
    const std::string augmented = "fold" + std::to_string(f) + "_augmented.jsonl";
    gopenmax::save_dump(dir / closed, writer.closed_set());
    gopenmax::save_dump(dir / augmented, writer.augmented());
    manifest["folds"].push_back({{"closed_set", closed}, {"augmented", augmented}});
  }
  std::ofstream(dir / "manifest.json") << manifest.dump(2) << '\n';
  std::cout << "fixture written to " << dir << '\n';
  return 0;
}
