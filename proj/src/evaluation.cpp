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

#include "gopenmax/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <thread>
#include <tuple>

#include "gopenmax/error.hpp"

namespace gopenmax {
namespace {

using nlohmann::json;

void check_lengths(std::span<const int> predictions,
                   std::span<const int> truths) {
  if (predictions.size() != truths.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::to_string(predictions.size()) + " predictions for " +
                    std::to_string(truths.size()) + " truths");
  }
}

std::optional<double> mean_of(const std::vector<std::optional<double>>& xs) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& x : xs) {
    if (x) {
      sum += *x;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

json optional_number(const std::optional<double>& x) {
  return x ? json(*x) : json();
}

std::optional<double> read_optional(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// sweep internals

struct FitSlot {
  std::optional<FittedCalibrator> calibrator;
  std::string error;
};

using FitKey = std::tuple<std::size_t, Method, std::size_t>;  // fold, method, tail

struct Cell {
  Method method;
  std::size_t alpha;
  std::size_t tail_size;
  std::optional<double> epsilon;
  std::size_t n_unknown;
};

UnknownSlot slot_for(Method method) {
  return method == Method::SoftMax ? UnknownSlot::None : UnknownSlot::Last;
}

template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : workers) t.join();
}

class SweepRunner {
 public:
  SweepRunner(std::span<const FoldDumps> folds, const ProtocolSpec& protocol,
              const SweepGrid& grid)
      : folds_(folds), protocol_(protocol), grid_(grid),
        n_known_(protocol.known_classes.size()) {}

  void fit_all(std::size_t jobs) {
    std::vector<FitKey> keys;
    for (std::size_t f = 0; f < folds_.size(); ++f) {
      for (Method m : grid_.methods) {
        if (m != Method::OpenMax && m != Method::GOpenMax) continue;
        for (std::size_t tail : grid_.tail_sizes) {
          const FitKey key{f, m, tail};
          if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            keys.push_back(key);
          }
        }
      }
    }
    std::vector<FitSlot> slots(keys.size());
    parallel_for(keys.size(), jobs, [&](std::size_t i) {
      const auto& [f, m, tail] = keys[i];
      try {
        const auto& records = dump_for(f, m);
        CalibrationConfig config;
        config.alpha = 0;
        config.tail_size = tail;
        config.metric = grid_.metric;
        config.weight_formula = grid_.weight_formula;
        config.mode = m == Method::OpenMax ? Mode::OpenMax : Mode::GOpenMax;
        config.correct_only = grid_.correct_only;
        slots[i].calibrator = fit(records, config);
      } catch (const std::exception& e) {
        slots[i].error = e.what();
      }
    });
    for (std::size_t i = 0; i < keys.size(); ++i) {
      fits_.emplace(keys[i], std::move(slots[i]));
    }
  }

  EvaluationReport run(const Cell& cell) const {
    EvaluationReport report;
    report.method = cell.method;
    report.alpha = cell.alpha;
    report.tail_size = cell.tail_size;
    report.epsilon = cell.epsilon;
    report.n_unknown_classes = cell.n_unknown;
    const long k = static_cast<long>(n_known_);
    report.openness = openness(k, k + static_cast<long>(cell.n_unknown), k);

    try {
      for (std::size_t f = 0; f < folds_.size(); ++f) {
        try {
          report.folds.push_back(run_fold(cell, f));
        } catch (const std::exception& e) {
          throw Error(ErrorKind::InvalidConfig,
                      "fold " + std::to_string(f) + ": " + e.what());
        }
      }
    } catch (const std::exception& e) {
      report.folds.clear();
      report.error = e.what();
      return report;
    }

    double eps_sum = 0.0, f_sum = 0.0;
    std::vector<std::optional<double>> known, unknown;
    for (const auto& m : report.folds) {
      eps_sum += m.epsilon;
      f_sum += m.f_measure;
      known.push_back(m.known_accuracy);
      unknown.push_back(m.unknown_accuracy);
    }
    const double n = static_cast<double>(report.folds.size());
    report.mean_epsilon = eps_sum / n;
    report.f_measure = f_sum / n;
    report.known_accuracy = mean_of(known);
    report.unknown_accuracy = mean_of(unknown);
    return report;
  }

 private:
  const std::vector<ActivationRecord>& dump_for(std::size_t fold,
                                                Method method) const {
    const FoldDumps& dumps = folds_[fold];
    const bool augmented = uses_augmented_dump(method);
    const auto& records = augmented ? dumps.augmented : dumps.closed_set;
    if (records.empty()) {
      throw Error(ErrorKind::EmptyInput,
                  std::string(augmented ? "augmented" : "closed-set") +
                      " dump is empty");
    }
    const std::size_t expected = n_known_ + (augmented ? 1 : 0);
    if (records.front().av.size() != expected) {
      throw Error(ErrorKind::DimensionMismatch,
                  std::string(augmented ? "augmented" : "closed-set") +
                      " dump has " +
                      std::to_string(records.front().av.size()) +
                      " outputs, protocol needs " + std::to_string(expected));
    }
    return records;
  }

  // Ground truth under the cell's openness level, or nothing if the record
  // is not part of this level's evaluation set.
  std::optional<int> truth_for(const ActivationRecord& rec,
                               std::size_t n_unknown) const {
    if (rec.true_label >= 0 && rec.true_label < static_cast<int>(n_known_)) {
      return rec.true_label;
    }
    const auto& pool = protocol_.unknown_test_classes;
    if (rec.source_class) {
      const auto end = pool.begin() + static_cast<std::ptrdiff_t>(n_unknown);
      if (std::find(pool.begin(), end, *rec.source_class) != end) {
        return kUnknownLabel;
      }
      return std::nullopt;
    }
    // untagged unknowns only count once every unknown class is in play
    if (n_unknown == pool.size() && n_unknown > 0) return kUnknownLabel;
    return std::nullopt;
  }

  FoldMetrics run_fold(const Cell& cell, std::size_t fold) const {
    const auto& records = dump_for(fold, cell.method);

    std::optional<FittedCalibrator> calibrator;
    if (cell.method == Method::OpenMax || cell.method == Method::GOpenMax) {
      const FitSlot& slot = fits_.at(FitKey{fold, cell.method, cell.tail_size});
      if (!slot.calibrator) throw Error(ErrorKind::InvalidConfig, slot.error);
      CalibrationConfig config = slot.calibrator->config();
      config.alpha = cell.alpha;
      calibrator = slot.calibrator->with_config(config);
    }

    std::vector<ScoredSample> val, test;
    for (const auto& rec : records) {
      if (rec.split != Split::Val && rec.split != Split::Test) continue;
      const auto truth = truth_for(rec, cell.n_unknown);
      if (!truth) continue;
      ScoredSample s;
      s.split = rec.split;
      s.truth = *truth;
      s.probabilities = calibrator ? recalibrate(rec.av, *calibrator).probabilities
                                   : softmax(rec.av);
      (rec.split == Split::Val ? val : test).push_back(std::move(s));
    }
    if (test.empty()) {
      throw Error(ErrorKind::EmptySubset, "no test records at this level");
    }

    const UnknownSlot slot = slot_for(cell.method);
    FoldMetrics metrics;
    metrics.fold = fold;
    if (cell.epsilon) {
      metrics.epsilon = *cell.epsilon;
    } else {
      if (val.empty()) {
        throw Error(ErrorKind::EmptySubset,
                    "no validation records to choose epsilon");
      }
      metrics.epsilon =
          choose_epsilon(val, grid_.epsilons, slot, grid_.averaging);
    }

    std::vector<int> predictions, truths;
    predictions.reserve(test.size());
    truths.reserve(test.size());
    for (const auto& s : test) {
      predictions.push_back(decide(s.probabilities, metrics.epsilon, slot));
      truths.push_back(s.truth);
    }
    metrics.n_test = test.size();
    metrics.f_measure = f_measure(predictions, truths, grid_.averaging);
    const bool any_known = std::any_of(truths.begin(), truths.end(),
                                       [](int t) { return t >= 0; });
    const bool any_unknown = std::any_of(truths.begin(), truths.end(),
                                         [](int t) { return t < 0; });
    if (any_known) metrics.known_accuracy = known_accuracy(predictions, truths);
    if (any_unknown) {
      metrics.unknown_accuracy = unknown_accuracy(predictions, truths);
    }
    return metrics;
  }

  std::span<const FoldDumps> folds_;
  const ProtocolSpec& protocol_;
  const SweepGrid& grid_;
  std::size_t n_known_;
  std::map<FitKey, FitSlot> fits_;
};

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::SoftMax: return "softmax";
    case Method::GSoftMax: return "gsoftmax";
    case Method::OpenMax: return "openmax";
    case Method::GOpenMax: return "gopenmax";
  }
  return "softmax";
}

Method parse_method(std::string_view text) {
  if (text == "softmax") return Method::SoftMax;
  if (text == "gsoftmax") return Method::GSoftMax;
  if (text == "openmax") return Method::OpenMax;
  if (text == "gopenmax") return Method::GOpenMax;
  throw Error(ErrorKind::InvalidConfig,
              "unknown method \"" + std::string(text) + "\"");
}

bool uses_augmented_dump(Method method) {
  return method == Method::GSoftMax || method == Method::GOpenMax;
}

void ProtocolSpec::validate() const {
  if (known_classes.empty()) {
    throw Error(ErrorKind::InvalidConfig, "known_classes is empty");
  }
  const std::set<int> known(known_classes.begin(), known_classes.end());
  if (known.size() != known_classes.size()) {
    throw Error(ErrorKind::InvalidConfig, "known_classes has duplicates");
  }
  std::set<int> unknown;
  for (int c : unknown_test_classes) {
    if (known.contains(c)) {
      throw Error(ErrorKind::InvalidConfig,
                  "class " + std::to_string(c) +
                      " is both known and unknown");
    }
    if (!unknown.insert(c).second) {
      throw Error(ErrorKind::InvalidConfig,
                  "unknown_test_classes has duplicates");
    }
  }
  if (n_folds < 1) throw Error(ErrorKind::InvalidConfig, "n_folds must be >= 1");
  const double total = fractions.train + fractions.val + fractions.test;
  if (fractions.train < 0 || fractions.val < 0 || fractions.test < 0 ||
      std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorKind::InvalidConfig,
                "split_fractions must be non-negative and sum to 1");
  }
}

void to_json(json& j, const ProtocolSpec& p) {
  j = json{{"known_classes", p.known_classes},
           {"unknown_test_classes", p.unknown_test_classes},
           {"n_folds", p.n_folds},
           {"split_fractions",
            {p.fractions.train, p.fractions.val, p.fractions.test}}};
}

void from_json(const json& j, ProtocolSpec& p) {
  j.at("known_classes").get_to(p.known_classes);
  if (j.contains("unknown_test_classes")) {
    j.at("unknown_test_classes").get_to(p.unknown_test_classes);
  }
  if (j.contains("n_folds")) j.at("n_folds").get_to(p.n_folds);
  if (j.contains("split_fractions")) {
    const auto f = j.at("split_fractions").get<std::vector<double>>();
    if (f.size() != 3) {
      throw Error(ErrorKind::InvalidConfig,
                  "split_fractions needs three values");
    }
    p.fractions = {f[0], f[1], f[2]};
  }
}

double openness(long n_train, long n_test, long n_r) {
  if (n_train <= 0 || n_test <= 0 || n_r <= 0) {
    throw Error(ErrorKind::InvalidCounts,
                "openness needs positive class counts (train=" +
                    std::to_string(n_train) + ", test=" +
                    std::to_string(n_test) + ", recognized=" +
                    std::to_string(n_r) + ")");
  }
  return 1.0 - std::sqrt(2.0 * static_cast<double>(n_train) /
                         static_cast<double>(n_r + n_test));
}

std::string_view to_string(FMeasureAveraging averaging) {
  return averaging == FMeasureAveraging::Micro ? "micro" : "macro_known";
}

FMeasureAveraging parse_averaging(std::string_view text) {
  if (text == "micro") return FMeasureAveraging::Micro;
  if (text == "macro_known") return FMeasureAveraging::MacroKnown;
  throw Error(ErrorKind::InvalidConfig,
              "unknown F-measure averaging \"" + std::string(text) + "\"");
}

double f_measure(std::span<const int> predictions, std::span<const int> truths,
                 FMeasureAveraging averaging) {
  check_lengths(predictions, truths);
  if (truths.empty()) throw Error(ErrorKind::EmptyInput, "no samples");

  if (averaging == FMeasureAveraging::Micro) {
    // Single-label predictions: every miss is one false positive (for the
    // predicted label) and one false negative (for the true label).
    std::size_t tp = 0;
    for (std::size_t i = 0; i < truths.size(); ++i) {
      if (predictions[i] == truths[i]) ++tp;
    }
    const double n = static_cast<double>(truths.size());
    const double fp = n - static_cast<double>(tp);
    const double fn = fp;
    const double precision = static_cast<double>(tp) / (tp + fp);
    const double recall = static_cast<double>(tp) / (tp + fn);
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
  }

  std::set<int> classes;
  for (int t : truths) {
    if (t >= 0) classes.insert(t);
  }
  if (classes.empty()) {
    throw Error(ErrorKind::EmptySubset, "macro F-measure needs known truths");
  }
  double sum = 0.0;
  for (int c : classes) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < truths.size(); ++i) {
      const bool predicted = predictions[i] == c;
      const bool actual = truths[i] == c;
      if (predicted && actual) ++tp;
      else if (predicted) ++fp;
      else if (actual) ++fn;
    }
    sum += 2.0 * static_cast<double>(tp) /
           static_cast<double>(2 * tp + fp + fn);
  }
  return sum / static_cast<double>(classes.size());
}

double known_accuracy(std::span<const int> predictions,
                      std::span<const int> truths) {
  check_lengths(predictions, truths);
  std::size_t total = 0, hit = 0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    if (truths[i] < 0) continue;
    ++total;
    if (predictions[i] == truths[i]) ++hit;
  }
  if (total == 0) throw Error(ErrorKind::EmptySubset, "no known-class truths");
  return static_cast<double>(hit) / static_cast<double>(total);
}

double unknown_accuracy(std::span<const int> predictions,
                        std::span<const int> truths) {
  check_lengths(predictions, truths);
  std::size_t total = 0, hit = 0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    if (truths[i] >= 0) continue;
    ++total;
    if (predictions[i] < 0) ++hit;
  }
  if (total == 0) throw Error(ErrorKind::EmptySubset, "no unknown truths");
  return static_cast<double>(hit) / static_cast<double>(total);
}

double choose_epsilon(std::span<const ScoredSample> validation,
                      std::span<const double> candidates, UnknownSlot slot,
                      FMeasureAveraging averaging) {
  if (candidates.empty()) {
    throw Error(ErrorKind::InvalidConfig, "no epsilon candidates");
  }
  for (const auto& s : validation) {
    if (s.split != Split::Val) {
      throw Error(ErrorKind::InvalidConfig,
                  "epsilon selection received a non-validation sample");
    }
  }
  std::vector<double> sorted(candidates.begin(), candidates.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<int> truths;
  truths.reserve(validation.size());
  for (const auto& s : validation) truths.push_back(s.truth);

  double best_eps = sorted.front();
  double best_score = -1.0;
  std::vector<int> predictions(validation.size());
  for (double eps : sorted) {
    for (std::size_t i = 0; i < validation.size(); ++i) {
      predictions[i] = decide(validation[i].probabilities, eps, slot);
    }
    const double score = f_measure(predictions, truths, averaging);
    if (score > best_score) {
      best_score = score;
      best_eps = eps;
    }
  }
  return best_eps;
}

void SweepGrid::validate(const ProtocolSpec& protocol) const {
  auto fail = [](const std::string& field, const std::string& what) {
    throw Error(ErrorKind::InvalidConfig, field + ": " + what);
  };
  if (methods.empty()) fail("modes", "empty");
  if (alphas.empty()) fail("alphas", "empty");
  if (tail_sizes.empty()) fail("tail_sizes", "empty");
  if (epsilons.empty()) fail("epsilons", "empty");
  const std::size_t k = protocol.known_classes.size();
  for (std::size_t a : alphas) {
    if (a > k) {
      fail("alphas", "alpha " + std::to_string(a) + " exceeds " +
                         std::to_string(k) + " known classes");
    }
  }
  for (std::size_t t : tail_sizes) {
    if (t < 2) fail("tail_sizes", "tail size must be at least 2");
  }
  for (double e : epsilons) {
    if (!(e >= 0.0 && e <= 1.0)) fail("epsilons", "values must lie in [0, 1]");
  }
  for (std::size_t u : unknown_class_counts) {
    if (u > protocol.unknown_test_classes.size()) {
      fail("unknown_class_counts",
           std::to_string(u) + " exceeds the " +
               std::to_string(protocol.unknown_test_classes.size()) +
               " unknown test classes");
    }
  }
}

std::vector<EvaluationReport> sweep(std::span<const FoldDumps> folds,
                                    const ProtocolSpec& protocol,
                                    const SweepGrid& grid, std::size_t jobs) {
  protocol.validate();
  grid.validate(protocol);
  if (folds.size() != protocol.n_folds) {
    throw Error(ErrorKind::InvalidConfig,
                "protocol expects " + std::to_string(protocol.n_folds) +
                    " folds, got " + std::to_string(folds.size()));
  }

  std::vector<std::size_t> levels = grid.unknown_class_counts;
  if (levels.empty()) {
    for (std::size_t u = 0; u <= protocol.unknown_test_classes.size(); ++u) {
      levels.push_back(u);
    }
  }
  std::vector<std::optional<double>> epsilons;
  if (grid.optimize_epsilon) {
    epsilons.push_back(std::nullopt);
  } else {
    epsilons.assign(grid.epsilons.begin(), grid.epsilons.end());
  }

  std::vector<Cell> cells;
  for (Method m : grid.methods) {
    for (std::size_t a : grid.alphas) {
      for (std::size_t t : grid.tail_sizes) {
        for (const auto& e : epsilons) {
          for (std::size_t u : levels) cells.push_back({m, a, t, e, u});
        }
      }
    }
  }

  SweepRunner runner(folds, protocol, grid);
  runner.fit_all(jobs);
  std::vector<EvaluationReport> reports(cells.size());
  parallel_for(cells.size(), jobs,
               [&](std::size_t i) { reports[i] = runner.run(cells[i]); });
  return reports;
}

json reports_to_json(std::span<const EvaluationReport> reports) {
  json out = json::array();
  for (const auto& r : reports) {
    json folds = json::array();
    for (const auto& f : r.folds) {
      folds.push_back({{"fold", f.fold},
                       {"epsilon", f.epsilon},
                       {"f_measure", f.f_measure},
                       {"known_acc", optional_number(f.known_accuracy)},
                       {"unknown_acc", optional_number(f.unknown_accuracy)},
                       {"n_test", f.n_test}});
    }
    out.push_back({{"mode", to_string(r.method)},
                   {"alpha", r.alpha},
                   {"tail_size", r.tail_size},
                   {"epsilon", optional_number(r.epsilon)},
                   {"epsilon_optimized", !r.epsilon.has_value()},
                   {"n_unknown_classes", r.n_unknown_classes},
                   {"openness", r.openness},
                   {"mean_epsilon", r.mean_epsilon},
                   {"f_measure", r.f_measure},
                   {"known_acc", optional_number(r.known_accuracy)},
                   {"unknown_acc", optional_number(r.unknown_accuracy)},
                   {"folds", std::move(folds)},
                   {"error", r.error ? json(*r.error) : json()}});
  }
  return out;
}

std::vector<EvaluationReport> reports_from_json(const json& j) {
  std::vector<EvaluationReport> reports;
  try {
    for (const auto& item : j) {
      EvaluationReport r;
      r.method = parse_method(item.at("mode").get<std::string>());
      item.at("alpha").get_to(r.alpha);
      item.at("tail_size").get_to(r.tail_size);
      r.epsilon = read_optional(item, "epsilon");
      item.at("n_unknown_classes").get_to(r.n_unknown_classes);
      item.at("openness").get_to(r.openness);
      item.at("mean_epsilon").get_to(r.mean_epsilon);
      item.at("f_measure").get_to(r.f_measure);
      r.known_accuracy = read_optional(item, "known_acc");
      r.unknown_accuracy = read_optional(item, "unknown_acc");
      for (const auto& f : item.at("folds")) {
        FoldMetrics m;
        f.at("fold").get_to(m.fold);
        f.at("epsilon").get_to(m.epsilon);
        f.at("f_measure").get_to(m.f_measure);
        m.known_accuracy = read_optional(f, "known_acc");
        m.unknown_accuracy = read_optional(f, "unknown_acc");
        f.at("n_test").get_to(m.n_test);
        r.folds.push_back(m);
      }
      if (item.contains("error") && !item.at("error").is_null()) {
        r.error = item.at("error").get<std::string>();
      }
      reports.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError,
                std::string("malformed report: ") + e.what());
  }
  return reports;
}

void write_reports_csv(std::ostream& out,
                       std::span<const EvaluationReport> reports) {
  out << "mode,alpha,epsilon,tail_size,openness,f_measure,known_acc,"
         "unknown_acc,fold\n";
  auto opt = [](const std::optional<double>& x) {
    return x ? format_number(*x) : std::string();
  };
  for (const auto& r : reports) {
    const std::string prefix =
        std::string(to_string(r.method)) + "," + std::to_string(r.alpha) + ",";
    for (const auto& f : r.folds) {
      out << prefix << format_number(f.epsilon) << "," << r.tail_size << ","
          << format_number(r.openness) << "," << format_number(f.f_measure)
          << "," << opt(f.known_accuracy) << "," << opt(f.unknown_accuracy)
          << "," << f.fold << "\n";
    }
    if (r.folds.size() > 1) {
      out << prefix << format_number(r.mean_epsilon) << "," << r.tail_size
          << "," << format_number(r.openness) << ","
          << format_number(r.f_measure) << "," << opt(r.known_accuracy) << ","
          << opt(r.unknown_accuracy) << ",mean\n";
    }
  }
}

DumpManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open manifest " + path.string());
  DumpManifest manifest;
  try {
    const json j = json::parse(in);
    const auto base = path.parent_path();
    if (j.contains("protocol")) manifest.protocol = j.at("protocol").get<ProtocolSpec>();
    for (const auto& fold : j.at("folds")) {
      manifest.closed_set.push_back(base /
                                    fold.at("closed_set").get<std::string>());
      manifest.augmented.push_back(
          fold.contains("augmented")
              ? base / fold.at("augmented").get<std::string>()
              : std::filesystem::path());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError,
                path.string() + ": malformed manifest: " + e.what());
  }
  return manifest;
}

std::vector<FoldDumps> load_folds(const DumpManifest& manifest) {
  std::vector<FoldDumps> folds(manifest.closed_set.size());
  for (std::size_t i = 0; i < folds.size(); ++i) {
    folds[i].closed_set = load_dump(manifest.closed_set[i]);
    if (!manifest.augmented[i].empty()) {
      folds[i].augmented = load_dump(manifest.augmented[i]);
    }
  }
  return folds;
}

}  // namespace gopenmax
