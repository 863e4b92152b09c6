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

#include "gopenmax/activations.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "gopenmax/error.hpp"
#include "json.hpp"

namespace gopenmax {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorKind::ParseError,
              "line " + std::to_string(line_no) + ": " + what);
}

int integer_field(const json& obj, const char* key, std::size_t line_no) {
  const auto it = obj.find(key);
  if (it == obj.end()) parse_fail(line_no, std::string("missing \"") + key + "\"");
  if (!it->is_number_integer()) {
    parse_fail(line_no, std::string("\"") + key + "\" must be an integer");
  }
  return it->get<int>();
}

std::optional<int> optional_integer_field(const json& obj, const char* key,
                                          std::size_t line_no) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) {
    parse_fail(line_no,
               std::string("\"") + key + "\" must be an integer or null");
  }
  return it->get<int>();
}

ActivationRecord parse_record(const std::string& line, std::size_t line_no) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    parse_fail(line_no, e.what());
  }
  if (!obj.is_object()) parse_fail(line_no, "expected a JSON object");

  ActivationRecord rec;
  const auto id = obj.find("id");
  if (id == obj.end() || !id->is_string()) {
    parse_fail(line_no, "\"id\" must be a string");
  }
  rec.id = id->get<std::string>();

  const auto split = obj.find("split");
  if (split == obj.end() || !split->is_string()) {
    parse_fail(line_no, "\"split\" must be a string");
  }
  try {
    rec.split = parse_split(split->get<std::string>());
  } catch (const Error& e) {
    parse_fail(line_no, e.what());
  }

  rec.true_label = integer_field(obj, "true_label", line_no);
  rec.predicted_label = optional_integer_field(obj, "predicted_label", line_no);
  rec.source_class = optional_integer_field(obj, "source_class", line_no);

  const auto av = obj.find("av");
  if (av == obj.end() || !av->is_array() || av->empty()) {
    parse_fail(line_no, "\"av\" must be a non-empty array");
  }
  rec.av.reserve(av->size());
  for (const auto& v : *av) {
    if (!v.is_number()) parse_fail(line_no, "\"av\" entries must be numbers");
    rec.av.push_back(v.get<double>());
  }
  return rec;
}

// Neumaier summation; keeps the MAV independent of record order to within
// a few ulps.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::string_view to_string(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
    case Split::Generated: return "generated";
  }
  return "train";
}

Split parse_split(std::string_view text) {
  if (text == "train") return Split::Train;
  if (text == "val") return Split::Val;
  if (text == "test") return Split::Test;
  if (text == "generated") return Split::Generated;
  throw Error(ErrorKind::ParseError,
              "unknown split \"" + std::string(text) + "\"");
}

std::vector<ActivationRecord> parse_dump(std::istream& in) {
  std::vector<ActivationRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ActivationRecord rec = parse_record(line, line_no);
    if (!records.empty() && rec.av.size() != records.front().av.size()) {
      throw Error(ErrorKind::DimensionMismatch,
                  "line " + std::to_string(line_no) + ": av has length " +
                      std::to_string(rec.av.size()) + ", expected " +
                      std::to_string(records.front().av.size()));
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<ActivationRecord> load_dump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open dump " + path.string());
  }
  try {
    return parse_dump(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void write_dump(std::ostream& out, std::span<const ActivationRecord> records) {
  for (const auto& rec : records) {
    ordered_json obj;
    obj["id"] = rec.id;
    obj["split"] = to_string(rec.split);
    obj["true_label"] = rec.true_label;
    obj["predicted_label"] =
        rec.predicted_label ? ordered_json(*rec.predicted_label) : ordered_json();
    obj["av"] = rec.av;
    if (rec.source_class) obj["source_class"] = *rec.source_class;
    out << obj.dump() << '\n';
  }
}

void save_dump(const std::filesystem::path& path,
               std::span<const ActivationRecord> records) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  write_dump(out, records);
}

std::string_view to_string(DistanceMetric metric) {
  switch (metric) {
    case DistanceMetric::Euclidean: return "euclidean";
    case DistanceMetric::Cosine: return "cosine";
    case DistanceMetric::EucosCombined: return "eucos";
  }
  return "euclidean";
}

DistanceMetric parse_metric(std::string_view text) {
  if (text == "euclidean") return DistanceMetric::Euclidean;
  if (text == "cosine") return DistanceMetric::Cosine;
  if (text == "eucos") return DistanceMetric::EucosCombined;
  throw Error(ErrorKind::InvalidConfig,
              "unknown distance metric \"" + std::string(text) + "\"");
}

double distance(std::span<const double> av, std::span<const double> mav,
                DistanceMetric metric) {
  if (av.size() != mav.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "distance between vectors of length " +
                    std::to_string(av.size()) + " and " +
                    std::to_string(mav.size()));
  }
  auto euclidean = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < av.size(); ++i) {
      const double d = av[i] - mav[i];
      s += d * d;
    }
    return std::sqrt(s);
  };
  auto cosine = [&] {
    const double na = std::sqrt(dot(av, av));
    const double nb = std::sqrt(dot(mav, mav));
    if (na == 0.0 || nb == 0.0) return 0.0;
    // rounding can push the cosine slightly past 1
    return std::max(0.0, 1.0 - dot(av, mav) / (na * nb));
  };

  switch (metric) {
    case DistanceMetric::Euclidean:
      return euclidean();
    case DistanceMetric::Cosine:
      return cosine();
    case DistanceMetric::EucosCombined:
      return euclidean() / static_cast<double>(av.size()) + cosine();
  }
  return euclidean();
}

std::size_t argmax(std::span<const double> values) {
  return static_cast<std::size_t>(
      std::max_element(values.begin(), values.end()) - values.begin());
}

ClassStats compute_class_stats(std::span<const ActivationRecord> records,
                               int class_id, DistanceMetric metric,
                               bool correct_only) {
  std::vector<const ActivationRecord*> members;
  for (const auto& rec : records) {
    if (rec.split != Split::Train || rec.true_label != class_id) continue;
    if (correct_only) {
      const int predicted = rec.predicted_label
                                ? *rec.predicted_label
                                : static_cast<int>(argmax(rec.av));
      if (predicted != rec.true_label) continue;
    }
    members.push_back(&rec);
  }
  if (members.empty()) {
    throw Error(ErrorKind::EmptyClass,
                correct_only ? "no correctly classified train samples"
                             : "no train samples",
                class_id);
  }

  const std::size_t dim = members.front()->av.size();
  std::vector<CompensatedSum> sums(dim);
  for (const auto* rec : members) {
    if (rec->av.size() != dim) {
      throw Error(ErrorKind::DimensionMismatch,
                  "record " + rec->id + " has a different av length",
                  class_id);
    }
    for (std::size_t i = 0; i < dim; ++i) sums[i].add(rec->av[i]);
  }

  ClassStats stats;
  stats.class_id = class_id;
  stats.n_samples = members.size();
  stats.mav.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    stats.mav[i] = sums[i].value() / static_cast<double>(members.size());
  }
  stats.distances.reserve(members.size());
  for (const auto* rec : members) {
    stats.distances.push_back(distance(rec->av, stats.mav, metric));
  }
  return stats;
}

}  // namespace gopenmax
