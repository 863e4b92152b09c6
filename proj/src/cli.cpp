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

#include "gopenmax/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "gopenmax/activations.hpp"
#include "gopenmax/calibrator.hpp"
#include "gopenmax/error.hpp"
#include "gopenmax/evaluation.hpp"
#include "gopenmax/mixture.hpp"
#include "gopenmax/plot.hpp"
#include "json.hpp"

namespace gopenmax::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// value parsing

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

template <typename T>
T parse_number(const std::string& field, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw UsageError(field + ": invalid value '" + text + "'");
  }
  return value;
}

template <typename T>
std::vector<T> parse_number_list(const std::string& field,
                                 const std::string& text) {
  std::vector<T> values;
  for (const auto& item : split_list(text)) {
    values.push_back(parse_number<T>(field, item));
  }
  if (values.empty()) throw UsageError(field + ": empty list");
  return values;
}

template <typename Fn>
auto with_field(const std::string& field, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw UsageError(field + ": " + e.what());
  }
}

void require_file(const std::string& field, const std::string& path) {
  if (path.empty()) throw UsageError(field + ": required");
  if (!fs::is_regular_file(path)) {
    throw Error(ErrorKind::Io, field + ": no such file " + path);
  }
}

std::ofstream open_output(const std::string& field, const std::string& path) {
  if (path.empty()) throw UsageError(field + ": required");
  const fs::path p(path);
  if (p.has_parent_path() && !fs::is_directory(p.parent_path())) {
    throw Error(ErrorKind::Io,
                field + ": directory does not exist: " +
                    p.parent_path().string());
  }
  std::ofstream out(p);
  if (!out) throw Error(ErrorKind::Io, field + ": cannot write " + path);
  return out;
}

json read_json_file(const std::string& field, const std::string& path) {
  require_file(field, path);
  std::ifstream in(path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// --config support

std::string config_value(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_array()) {
    std::string joined;
    for (const auto& item : v) {
      if (!joined.empty()) joined += ",";
      joined += config_value(item);
    }
    return joined;
  }
  return v.dump();
}

std::string option_name(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return "--" + key;
}

// Expands --config into explicit flags placed right after the subcommand
// name, ahead of the user's own flags, so the user's flags take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args,
                                       CLI::App& app) {
  std::vector<std::string> rest;
  std::optional<std::string> config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("config: missing file name");
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!config_path) return rest;

  const auto sub_it = std::find_if(rest.begin(), rest.end(), [](const auto& a) {
    return !a.empty() && a[0] != '-';
  });
  if (sub_it == rest.end()) return rest;
  CLI::App* sub = app.get_subcommand_no_throw(*sub_it);
  if (sub == nullptr) return rest;

  const json doc = read_json_file("config", *config_path);
  if (!doc.is_object()) throw UsageError("config: expected a JSON object");

  std::vector<std::string> injected;
  auto inject = [&](const json& obj, bool strict) {
    for (const auto& [key, value] : obj.items()) {
      if (value.is_object()) continue;
      const std::string name = option_name(key);
      if (sub->get_option_no_throw(name) == nullptr) {
        if (strict) {
          throw UsageError("config: unknown key '" + key + "' for " +
                           sub->get_name());
        }
        continue;
      }
      injected.push_back(name + "=" + config_value(value));
    }
  };
  inject(doc, false);
  if (doc.contains(sub->get_name()) && doc.at(sub->get_name()).is_object()) {
    inject(doc.at(sub->get_name()), true);
  }
  rest.insert(sub_it + 1, injected.begin(), injected.end());
  return rest;
}

// ---------------------------------------------------------------------------
// shared option groups

struct CalibrationFlags {
  std::string mode = "gopenmax";
  std::size_t alpha = 2;
  double epsilon = 0.0;
  std::size_t tail_size = 20;
  std::string metric = "euclidean";
  std::string weight_formula = "cdf_damping";
  bool correct_only = true;

  void add(CLI::App* app) {
    app->add_option("--mode", mode, "openmax | gopenmax");
    app->add_option("--alpha", alpha, "number of top activations to recalibrate");
    app->add_option("--epsilon", epsilon, "probability threshold in [0, 1]");
    app->add_option("--tail-size", tail_size, "largest distances fitted per class");
    app->add_option("--metric", metric, "euclidean | cosine | eucos");
    app->add_option("--weight-formula", weight_formula,
                    "cdf_damping | as_written");
    app->add_flag("--correct-only", correct_only,
                    "MAV from correctly classified train samples only");
  }

  CalibrationConfig config() const {
    CalibrationConfig c;
    c.mode = with_field("mode", [&] { return parse_mode(mode); });
    c.alpha = alpha;
    c.epsilon = epsilon;
    c.tail_size = tail_size;
    c.metric = with_field("metric", [&] { return parse_metric(metric); });
    c.weight_formula = with_field(
        "weight_formula", [&] { return parse_weight_formula(weight_formula); });
    c.correct_only = correct_only;
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
      throw UsageError("epsilon: must lie in [0, 1]");
    }
    if (tail_size < 2) throw UsageError("tail_size: must be at least 2");
    return c;
  }
};

struct ProtocolFlags {
  std::string manifest;
  std::string known_classes;
  std::string unknown_classes;
  std::optional<std::size_t> folds;
  std::string split_fractions;

  void add(CLI::App* app) {
    app->add_option("--manifest", manifest, "JSON manifest listing fold dumps");
    app->add_option("--known-classes", known_classes,
                    "comma-separated source ids of the known classes");
    app->add_option("--unknown-classes", unknown_classes,
                    "comma-separated source ids of unknown test classes, in "
                    "the order they are added");
    app->add_option("--folds", folds, "number of cross-validation folds");
    app->add_option("--split-fractions", split_fractions,
                    "train,val,test fractions");
  }

  std::pair<ProtocolSpec, std::vector<FoldDumps>> load() const {
    require_file("manifest", manifest);
    const DumpManifest m = load_manifest(manifest);
    ProtocolSpec protocol = m.protocol.value_or(ProtocolSpec{});
    if (!m.protocol) protocol.n_folds = m.closed_set.size();
    if (!known_classes.empty()) {
      protocol.known_classes = parse_number_list<int>("known_classes", known_classes);
    }
    if (!unknown_classes.empty()) {
      protocol.unknown_test_classes =
          parse_number_list<int>("unknown_classes", unknown_classes);
    }
    if (folds) protocol.n_folds = *folds;
    if (!split_fractions.empty()) {
      const auto f = parse_number_list<double>("split_fractions", split_fractions);
      if (f.size() != 3) throw UsageError("split_fractions: need three values");
      protocol.fractions = {f[0], f[1], f[2]};
    }
    with_field("protocol", [&] { protocol.validate(); });
    for (std::size_t i = 0; i < m.closed_set.size(); ++i) {
      require_file("manifest", m.closed_set[i].string());
      if (!m.augmented[i].empty()) {
        require_file("manifest", m.augmented[i].string());
      }
    }
    return {protocol, load_folds(m)};
  }
};

struct GridFlags {
  std::string metric = "euclidean";
  std::string weight_formula = "cdf_damping";
  bool correct_only = true;
  std::string averaging = "micro";
  std::size_t jobs = 1;

  void add(CLI::App* app) {
    app->add_option("--metric", metric, "euclidean | cosine | eucos");
    app->add_option("--weight-formula", weight_formula,
                    "cdf_damping | as_written");
    app->add_flag("--correct-only", correct_only,
                    "MAV from correctly classified train samples only");
    app->add_option("--averaging", averaging, "micro | macro_known");
    app->add_option("--jobs", jobs, "worker threads");
  }

  void apply(SweepGrid& grid) const {
    grid.metric = with_field("metric", [&] { return parse_metric(metric); });
    grid.weight_formula = with_field(
        "weight_formula", [&] { return parse_weight_formula(weight_formula); });
    grid.correct_only = correct_only;
    grid.averaging =
        with_field("averaging", [&] { return parse_averaging(averaging); });
  }
};

struct ReportOutputs {
  std::string out_json;
  std::string out_csv;
  std::string plots_dir;

  void add(CLI::App* app) {
    app->add_option("--out-json", out_json, "report as JSON");
    app->add_option("--out-csv", out_csv, "report as CSV");
    app->add_option("--plots-dir", plots_dir, "directory for SVG plots");
  }
};

void write_plots(const std::string& dir,
                 std::span<const EvaluationReport> reports) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) {
    throw Error(ErrorKind::Io, "plots_dir: not a directory: " + dir);
  }
  const fs::path base(dir);
  const std::pair<std::string, LineChart> charts[] = {
      {"fmeasure_vs_openness.svg", fmeasure_vs_openness(reports)},
      {"unknown_accuracy_vs_tail_size.svg", accuracy_vs_tail_size(reports, true)},
      {"known_accuracy_vs_tail_size.svg", accuracy_vs_tail_size(reports, false)},
  };
  for (const auto& [name, chart] : charts) {
    auto out = open_output("plots_dir", (base / name).string());
    out << render_svg(chart);
  }
}

void emit_reports(const ReportOutputs& outputs,
                  const std::vector<EvaluationReport>& reports,
                  std::ostream& out) {
  if (outputs.out_json.empty() && outputs.out_csv.empty()) {
    write_reports_csv(out, reports);
  }
  if (!outputs.out_json.empty()) {
    auto f = open_output("out_json", outputs.out_json);
    f << reports_to_json(reports).dump(2) << '\n';
  }
  if (!outputs.out_csv.empty()) {
    auto f = open_output("out_csv", outputs.out_csv);
    write_reports_csv(f, reports);
  }
  if (!outputs.plots_dir.empty()) write_plots(outputs.plots_dir, reports);
}

// ---------------------------------------------------------------------------
// commands

struct FitCommand {
  std::string dump, out_path;
  CalibrationFlags flags;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("fit", "fit per-class Weibull models");
    cmd->add_option("--dump", dump, "activation dump (JSON lines)");
    cmd->add_option("--out", out_path, "calibrator JSON");
    flags.add(cmd);
  }

  void run(std::ostream& out) const {
    require_file("dump", dump);
    const auto config = flags.config();
    const auto records = load_dump(dump);
    const auto calibrator = fit(records, config);
    auto f = open_output("out", out_path);
    f << calibrator.to_json().dump(2) << '\n';
    out << "fitted " << calibrator.dimension() << " class models ("
        << to_string(config.mode) << ") -> " << out_path << '\n';
  }
};

struct CalibrateCommand {
  std::string model, dump, out_path, split = "all";
  std::optional<double> epsilon;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("calibrate",
                                   "recalibrate activations with a fitted model");
    cmd->add_option("--model", model, "calibrator JSON from fit");
    cmd->add_option("--dump", dump, "activation dump (JSON lines)");
    cmd->add_option("--out", out_path, "calibrated output (JSON lines)");
    cmd->add_option("--split", split, "all | train | val | test | generated");
    cmd->add_option("--epsilon", epsilon, "override the model's threshold");
  }

  void run(std::ostream& out) const {
    const auto calibrator = with_field("model", [&] {
      return FittedCalibrator::from_json(read_json_file("model", model));
    });
    std::optional<Split> only;
    if (split != "all") only = with_field("split", [&] { return parse_split(split); });
    require_file("dump", dump);
    const auto records = load_dump(dump);

    CalibrationConfig config = calibrator.config();
    if (epsilon) config.epsilon = *epsilon;
    const auto active =
        with_field("epsilon", [&] { return calibrator.with_config(config); });

    auto f = open_output("out", out_path);
    std::size_t n = 0;
    for (const auto& rec : records) {
      if (only && rec.split != *only) continue;
      const auto result = recalibrate(rec.av, active);
      ordered_json line;
      line["id"] = rec.id;
      line["true_label"] = rec.true_label;
      line["revised"] = result.revised_activations;
      line["probabilities"] = result.probabilities;
      line["unknown_probability"] = result.unknown_probability;
      line["decision"] = result.decision;
      f << line.dump() << '\n';
      ++n;
    }
    out << "calibrated " << n << " records -> " << out_path << '\n';
  }
};

struct DecideCommand {
  std::string input, out_path, slot = "last";
  double epsilon = 0.0;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("decide", "apply the threshold rule");
    cmd->add_option("--input", input, "calibrated output (JSON lines)");
    cmd->add_option("--epsilon", epsilon, "probability threshold in [0, 1]");
    cmd->add_option("--slot", slot, "last | none: where the unknown score is");
    cmd->add_option("--out", out_path, "decisions (JSON lines)");
  }

  void run(std::ostream& out) const {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
      throw UsageError("epsilon: must lie in [0, 1]");
    }
    UnknownSlot unknown_slot;
    if (slot == "last") {
      unknown_slot = UnknownSlot::Last;
    } else if (slot == "none") {
      unknown_slot = UnknownSlot::None;
    } else {
      throw UsageError("slot: invalid value '" + slot + "'");
    }
    require_file("input", input);
    std::ifstream in(input);
    auto f = open_output("out", out_path);
    std::string line;
    std::size_t line_no = 0, n = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      ordered_json result;
      try {
        const auto j = json::parse(line);
        const auto probs = j.at("probabilities").get<std::vector<double>>();
        result["id"] = j.at("id").get<std::string>();
        result["decision"] = decide(probs, epsilon, unknown_slot);
      } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, input + ": line " +
                                               std::to_string(line_no) + ": " +
                                               e.what());
      }
      f << result.dump() << '\n';
      ++n;
    }
    out << "decided " << n << " records -> " << out_path << '\n';
  }
};

struct MixCommand {
  std::optional<std::size_t> classes, count;
  std::uint64_t seed = 0;
  double sigma = kDefaultMixtureSigma;
  std::string from_dump, out_path;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("mix", "sample class-mixture vectors");
    cmd->add_option("--classes", classes, "number of known classes N");
    cmd->add_option("--count", count, "number of vectors");
    cmd->add_option("--seed", seed, "base seed; vector i uses seed + i");
    cmd->add_option("--sigma", sigma, "stddev of each component");
    cmd->add_option("--from-dump", from_dump,
                    "closed-set dump: N from its width, count defaults to 10x "
                    "the mean per-class train count");
    cmd->add_option("--out", out_path, "mixture batch (JSON lines)");
  }

  void run(std::ostream& out) const {
    std::size_t n_classes = classes.value_or(0);
    std::size_t n = count.value_or(0);
    if (!from_dump.empty()) {
      require_file("from_dump", from_dump);
      const auto records = load_dump(from_dump);
      if (!records.empty() && !classes) n_classes = records.front().av.size();
      if (!count) n = synthetic_budget(records).generate_count;
    } else {
      if (!classes) throw UsageError("classes: required");
      if (!count) throw UsageError("count: required");
    }
    if (n_classes < 1) throw UsageError("classes: must be at least 1");
    if (!(sigma > 0.0)) throw UsageError("sigma: must be positive");
    const auto batch = sample_mixture_batch(n_classes, n, seed, sigma);
    auto f = open_output("out", out_path);
    write_mixture_batch(f, batch);
    out << "wrote " << batch.size() << " mixture vectors -> " << out_path
        << '\n';
  }
};

struct SelectCommand {
  std::string dump, out_path, rejections, cap_from_dump;
  std::optional<std::size_t> cap;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "select", "keep generated samples the closed-set net misclassifies");
    cmd->add_option("--dump", dump, "dump with split=generated records");
    cmd->add_option("--out", out_path, "selected ids, one per line");
    cmd->add_option("--rejections", rejections, "rejection report (JSON)");
    cmd->add_option("--cap", cap, "keep at most this many candidates");
    cmd->add_option("--cap-from-dump", cap_from_dump,
                    "closed-set dump; cap = mean per-class train count");
  }

  void run(std::ostream& out) const {
    require_file("dump", dump);
    std::optional<std::size_t> limit = cap;
    if (!cap_from_dump.empty()) {
      require_file("cap_from_dump", cap_from_dump);
      if (!cap) limit = synthetic_budget(load_dump(cap_from_dump)).retain_cap;
    }
    std::vector<ActivationRecord> generated;
    for (auto& rec : load_dump(dump)) {
      if (rec.split == Split::Generated) generated.push_back(std::move(rec));
    }
    const auto selection = select_unknown_candidates(generated, limit);
    auto f = open_output("out", out_path);
    for (const auto& id : selection.selected_ids) f << id << '\n';
    if (!rejections.empty()) {
      auto r = open_output("rejections", rejections);
      ordered_json j;
      j["total_generated"] = selection.total_generated;
      j["selected"] = selection.selected_ids.size();
      j["rejection_reasons"] = selection.rejection_reasons;
      r << j.dump(2) << '\n';
    }
    out << "selected " << selection.selected_ids.size() << " of "
        << selection.total_generated << " generated samples -> " << out_path
        << '\n';
  }
};

struct EvaluateCommand {
  ProtocolFlags protocol;
  GridFlags grid_flags;
  ReportOutputs outputs;
  std::string mode = "gopenmax";
  std::size_t alpha = 2;
  std::size_t tail_size = 20;
  std::optional<double> epsilon;
  bool optimize_epsilon = false;
  std::string epsilons;
  std::optional<std::size_t> unknown_count;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("evaluate", "score one configuration");
    protocol.add(cmd);
    grid_flags.add(cmd);
    outputs.add(cmd);
    cmd->add_option("--mode", mode, "softmax | gsoftmax | openmax | gopenmax");
    cmd->add_option("--alpha", alpha, "number of top activations to recalibrate");
    cmd->add_option("--tail-size", tail_size, "largest distances fitted per class");
    cmd->add_option("--epsilon", epsilon, "fixed probability threshold");
    cmd->add_flag("--optimize-epsilon", optimize_epsilon,
                    "choose epsilon per fold on validation data");
    cmd->add_option("--epsilons", epsilons,
                    "candidate thresholds for --optimize-epsilon");
    cmd->add_option("--unknown-count", unknown_count,
                    "number of unknown test classes (default: all)");
  }

  void run(std::ostream& out) const {
    auto [proto, folds] = protocol.load();
    SweepGrid grid;
    grid_flags.apply(grid);
    grid.methods = {with_field("mode", [&] { return parse_method(mode); })};
    grid.alphas = {alpha};
    grid.tail_sizes = {tail_size};
    grid.optimize_epsilon = optimize_epsilon;
    if (optimize_epsilon) {
      if (epsilons.empty()) throw UsageError("epsilons: required with --optimize-epsilon");
      grid.epsilons = parse_number_list<double>("epsilons", epsilons);
    } else {
      grid.epsilons = {epsilon.value_or(0.0)};
    }
    grid.unknown_class_counts = {
        unknown_count.value_or(proto.unknown_test_classes.size())};
    with_field("grid", [&] { grid.validate(proto); });
    const auto reports = sweep(folds, proto, grid, grid_flags.jobs);
    emit_reports(outputs, reports, out);
    if (reports.front().error) throw std::runtime_error(*reports.front().error);
  }
};

struct SweepCommand {
  ProtocolFlags protocol;
  GridFlags grid_flags;
  ReportOutputs outputs;
  std::string modes = "softmax,openmax,gopenmax";
  std::string alphas = "2";
  std::string tail_sizes = "20";
  std::string epsilons = "0";
  std::string openness_levels;
  bool optimize_epsilon = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("sweep", "evaluate a grid of configurations");
    protocol.add(cmd);
    grid_flags.add(cmd);
    outputs.add(cmd);
    cmd->add_option("--modes", modes, "comma-separated methods");
    cmd->add_option("--alphas", alphas, "comma-separated alpha values");
    cmd->add_option("--tail-sizes", tail_sizes, "comma-separated tail sizes");
    cmd->add_option("--epsilons", epsilons, "comma-separated thresholds");
    cmd->add_option("--openness-levels", openness_levels,
                    "comma-separated unknown-class counts (default: all)");
    cmd->add_flag("--optimize-epsilon", optimize_epsilon,
                    "choose epsilon per fold on validation data");
  }

  void run(std::ostream& out, std::ostream& err) const {
    auto [proto, folds] = protocol.load();
    SweepGrid grid;
    grid_flags.apply(grid);
    grid.methods.clear();
    for (const auto& m : split_list(modes)) {
      grid.methods.push_back(with_field("modes", [&] { return parse_method(m); }));
    }
    grid.alphas = parse_number_list<std::size_t>("alphas", alphas);
    grid.tail_sizes = parse_number_list<std::size_t>("tail_sizes", tail_sizes);
    grid.epsilons = parse_number_list<double>("epsilons", epsilons);
    if (!openness_levels.empty()) {
      grid.unknown_class_counts =
          parse_number_list<std::size_t>("openness_levels", openness_levels);
    }
    grid.optimize_epsilon = optimize_epsilon;
    with_field("grid", [&] { grid.validate(proto); });
    const auto reports = sweep(folds, proto, grid, grid_flags.jobs);
    emit_reports(outputs, reports, out);
    const auto failed = std::count_if(reports.begin(), reports.end(),
                                      [](const auto& r) { return r.error; });
    if (failed > 0) {
      err << failed << " of " << reports.size() << " cells failed\n";
    }
  }
};

struct PlotCommand {
  std::string report, out_dir;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("plot", "render SVG plots from a report");
    cmd->add_option("--report", report, "JSON report from sweep");
    cmd->add_option("--out-dir", out_dir, "output directory");
  }

  void run(std::ostream& out) const {
    const auto reports = reports_from_json(read_json_file("report", report));
    if (out_dir.empty()) throw UsageError("out_dir: required");
    write_plots(out_dir, reports);
    out << "wrote plots for " << reports.size() << " report cells -> "
        << out_dir << '\n';
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app("Open-set calibration with extreme value tail models",
               "gopenmax");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  FitCommand fit_cmd;
  CalibrateCommand calibrate_cmd;
  DecideCommand decide_cmd;
  MixCommand mix_cmd;
  SelectCommand select_cmd;
  EvaluateCommand evaluate_cmd;
  SweepCommand sweep_cmd;
  PlotCommand plot_cmd;
  fit_cmd.add(app);
  calibrate_cmd.add(app);
  decide_cmd.add(app);
  mix_cmd.add(app);
  select_cmd.add(app);
  evaluate_cmd.add(app);
  sweep_cmd.add(app);
  plot_cmd.add(app);

  try {
    auto expanded = expand_config(args, app);
    std::reverse(expanded.begin(), expanded.end());
    app.parse(expanded);

    const std::pair<const char*, std::function<void()>> commands[] = {
        {"fit", [&] { fit_cmd.run(out); }},
        {"calibrate", [&] { calibrate_cmd.run(out); }},
        {"decide", [&] { decide_cmd.run(out); }},
        {"mix", [&] { mix_cmd.run(out); }},
        {"select", [&] { select_cmd.run(out); }},
        {"evaluate", [&] { evaluate_cmd.run(out); }},
        {"sweep", [&] { sweep_cmd.run(out, err); }},
        {"plot", [&] { plot_cmd.run(out); }},
    };
    for (const auto& [name, command] : commands) {
      if (app.got_subcommand(name)) command();
    }
    return kExitOk;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_validation() ? kExitValidation : kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace gopenmax::cli
