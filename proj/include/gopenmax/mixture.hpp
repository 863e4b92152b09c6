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
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gopenmax/activations.hpp"

namespace gopenmax {

/// Class-mixture conditioning vector for the generator. Components sum to 1;
/// individual components may be negative.
struct MixtureVector {
  std::vector<double> m;
  std::uint64_t seed = 0;

  friend bool operator==(const MixtureVector&, const MixtureVector&) = default;
};

inline constexpr double kDefaultMixtureSigma = 0.2;

/// Draws m_1..m_{N-1} from Normal(1/N, sigma) and sets m_N = 1 - sum.
/// The generator is seeded from `seed` alone.
MixtureVector sample_mixture(std::size_t n_classes, std::uint64_t seed,
                             double sigma = kDefaultMixtureSigma);

/// Index of the largest component, lowest index on ties.
std::size_t mixture_argmax(const MixtureVector& mv);

/// One line of a mixture batch file.
struct MixtureEntry {
  std::string id;
  MixtureVector vector;
};

/// `count` vectors; entry i uses seed base_seed + i and id "mix-<i>".
std::vector<MixtureEntry> sample_mixture_batch(std::size_t n_classes,
                                               std::size_t count,
                                               std::uint64_t base_seed,
                                               double sigma);

void write_mixture_batch(std::ostream& out,
                         std::span<const MixtureEntry> entries);
std::vector<MixtureEntry> parse_mixture_batch(std::istream& in);

inline constexpr const char* kReasonNetAgrees = "net_agrees";
inline constexpr const char* kReasonOverCap = "over_cap";

struct CandidateSelection {
  std::vector<std::string> selected_ids;
  std::size_t total_generated = 0;
  std::map<std::string, std::string> rejection_reasons;
};

/// Keeps the generated samples the closed-set classifier gets wrong
/// (predicted_label != true_label, where true_label is the mixture argmax).
/// Selected ids keep input order. With `cap`, only the first `cap`
/// candidates are kept and the rest are rejected as over_cap.
/// Throws Error{MissingPrediction}.
CandidateSelection select_unknown_candidates(
    std::span<const ActivationRecord> generated,
    std::optional<std::size_t> cap = std::nullopt);

/// Default synthetic budget and cap derived from the known-class train
/// counts of a closed-set dump: 10x and 1x the mean per-class count.
struct SyntheticBudget {
  std::size_t generate_count = 0;
  std::size_t retain_cap = 0;
};
SyntheticBudget synthetic_budget(std::span<const ActivationRecord> known_dump);

}  // namespace gopenmax
