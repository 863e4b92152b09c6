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

#include "gopenmax/mixture.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <string_view>

#include "gopenmax/error.hpp"
#include "json.hpp"

namespace gopenmax {

MixtureVector sample_mixture(std::size_t n_classes, std::uint64_t seed,
                             double sigma) {
  if (n_classes < 1) {
    throw Error(ErrorKind::InvalidConfig, "mixture needs at least one class");
  }
  if (!(sigma > 0.0)) {
    throw Error(ErrorKind::InvalidConfig, "mixture sigma must be positive");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> draw(1.0 / static_cast<double>(n_classes),
                                        sigma);
  MixtureVector mv;
  mv.seed = seed;
  mv.m.resize(n_classes);
  double partial = 0.0;
  for (std::size_t i = 0; i + 1 < n_classes; ++i) {
    mv.m[i] = draw(rng);
    partial += mv.m[i];
  }
  mv.m.back() = 1.0 - partial;
  return mv;
}

std::size_t mixture_argmax(const MixtureVector& mv) { return argmax(mv.m); }

std::vector<MixtureEntry> sample_mixture_batch(std::size_t n_classes,
                                               std::size_t count,
                                               std::uint64_t base_seed,
                                               double sigma) {
  std::vector<MixtureEntry> batch;
  batch.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "mix-%06zu", i);
    batch.push_back({id, sample_mixture(n_classes, base_seed + i, sigma)});
  }
  return batch;
}

void write_mixture_batch(std::ostream& out,
                         std::span<const MixtureEntry> entries) {
  for (const auto& e : entries) {
    nlohmann::ordered_json line;
    line["id"] = e.id;
    line["seed"] = e.vector.seed;
    line["m"] = e.vector.m;
    line["argmax"] = mixture_argmax(e.vector);
    out << line.dump() << '\n';
  }
}

std::vector<MixtureEntry> parse_mixture_batch(std::istream& in) {
  std::vector<MixtureEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      MixtureEntry e;
      j.at("id").get_to(e.id);
      j.at("seed").get_to(e.vector.seed);
      j.at("m").get_to(e.vector.m);
      if (e.vector.m.empty()) throw Error(ErrorKind::ParseError, "empty m");
      entries.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorKind::ParseError,
                  "line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return entries;
}

CandidateSelection select_unknown_candidates(
    std::span<const ActivationRecord> generated,
    std::optional<std::size_t> cap) {
  std::set<std::string_view> seen;
  for (const auto& rec : generated) {
    if (!rec.predicted_label) {
      throw Error(ErrorKind::MissingPrediction,
                  "generated record " + rec.id + " has no predicted_label");
    }
    if (!seen.insert(rec.id).second) {
      throw Error(ErrorKind::InvalidConfig,
                  "duplicate generated record id " + rec.id);
    }
  }

  CandidateSelection out;
  out.total_generated = generated.size();
  for (const auto& rec : generated) {
    if (*rec.predicted_label == rec.true_label) {
      out.rejection_reasons[rec.id] = kReasonNetAgrees;
    } else if (cap && out.selected_ids.size() >= *cap) {
      out.rejection_reasons[rec.id] = kReasonOverCap;
    } else {
      out.selected_ids.push_back(rec.id);
    }
  }
  return out;
}

SyntheticBudget synthetic_budget(std::span<const ActivationRecord> known_dump) {
  std::map<int, std::size_t> per_class;
  for (const auto& rec : known_dump) {
    if (rec.split == Split::Train && rec.true_label >= 0) {
      ++per_class[rec.true_label];
    }
  }
  if (per_class.empty()) {
    throw Error(ErrorKind::EmptyInput, "dump has no labelled train records");
  }
  std::size_t total = 0;
  for (const auto& [label, n] : per_class) total += n;
  const std::size_t mean = total / per_class.size();
  return {10 * mean, mean};
}

}  // namespace gopenmax
