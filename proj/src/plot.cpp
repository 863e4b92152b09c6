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

#include "gopenmax/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace gopenmax {
namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 150, kTop = 40, kBottom = 60;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#ff7f0e", "#9467bd", "#8c564b"};

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string tick(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

bool has_optimized(std::span<const EvaluationReport> reports) {
  return std::any_of(reports.begin(), reports.end(),
                     [](const auto& r) { return !r.epsilon.has_value(); });
}

}  // namespace

std::string render_svg(const LineChart& chart) {
  double x_min = 0.0, x_max = 1.0;
  bool first = true;
  for (const auto& s : chart.series) {
    for (const auto& [x, y] : s.points) {
      if (first) {
        x_min = x_max = x;
        first = false;
      }
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
    }
  }
  if (x_max == x_min) x_max = x_min + 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) {
    return kTop + plot_h - (y - chart.y_min) / (chart.y_max - chart.y_min) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" "
      << "font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-size=\"15\">" << escape(chart.title) << "</text>\n";

  // axes and ticks
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\""
      << kLeft + plot_w << "\" y2=\"" << kTop + plot_h
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = x_min + (x_max - x_min) * i / 5.0;
    const double yv = chart.y_min + (chart.y_max - chart.y_min) * i / 5.0;
    svg << "<text x=\"" << num(sx(xv)) << "\" y=\"" << num(kTop + plot_h + 18)
        << "\" text-anchor=\"middle\">" << tick(xv) << "</text>\n";
    svg << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(sy(yv) + 4)
        << "\" text-anchor=\"end\">" << tick(yv) << "</text>\n";
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << num(sy(yv)) << "\" x2=\""
        << kLeft + plot_w << "\" y2=\"" << num(sy(yv))
        << "\" stroke=\"#ddd\"/>\n";
  }
  svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\""
      << num(kHeight - 18) << "\" text-anchor=\"middle\">"
      << escape(chart.x_label) << "</text>\n";
  svg << "<text transform=\"translate(18," << num(kTop + plot_h / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(chart.y_label)
      << "</text>\n";

  for (std::size_t i = 0; i < chart.series.size(); ++i) {
    const auto& s = chart.series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    if (!s.points.empty()) {
      svg << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"2\" points=\"";
      for (const auto& [x, y] : s.points) {
        svg << num(sx(x)) << "," << num(sy(y)) << " ";
      }
      svg << "\"/>\n";
      for (const auto& [x, y] : s.points) {
        svg << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y))
            << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      }
    }
    const double ly = kTop + 10 + 20.0 * static_cast<double>(i);
    svg << "<line x1=\"" << kWidth - kRight + 15 << "\" y1=\"" << num(ly)
        << "\" x2=\"" << kWidth - kRight + 40 << "\" y2=\"" << num(ly)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << kWidth - kRight + 46 << "\" y=\"" << num(ly + 4)
        << "\">" << escape(s.name) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

LineChart fmeasure_vs_openness(std::span<const EvaluationReport> reports,
                               std::optional<std::size_t> alpha,
                               std::optional<std::size_t> tail_size) {
  LineChart chart;
  chart.title = "F-measure vs openness";
  chart.x_label = "openness";
  chart.y_label = "F-measure";

  const bool optimized = has_optimized(reports);
  std::optional<double> fixed_eps;
  std::map<Method, Series> by_method;
  std::vector<Method> order;
  for (const auto& r : reports) {
    if (r.error) continue;
    if (!alpha) alpha = r.alpha;
    if (!tail_size) tail_size = r.tail_size;
    if (r.alpha != *alpha || r.tail_size != *tail_size) continue;
    if (optimized != !r.epsilon.has_value()) continue;
    if (!optimized) {
      if (!fixed_eps) fixed_eps = r.epsilon;
      if (r.epsilon != fixed_eps) continue;
    }
    if (!by_method.contains(r.method)) {
      order.push_back(r.method);
      by_method[r.method].name = std::string(to_string(r.method));
    }
    by_method[r.method].points.emplace_back(r.openness, r.f_measure);
  }
  for (Method m : order) {
    auto& s = by_method[m];
    std::sort(s.points.begin(), s.points.end());
    chart.series.push_back(std::move(s));
  }
  return chart;
}

LineChart accuracy_vs_tail_size(std::span<const EvaluationReport> reports,
                                bool unknown_class) {
  LineChart chart;
  chart.title = unknown_class ? "Unknown-class accuracy vs tail size"
                              : "Known-class accuracy vs tail size";
  chart.x_label = "tail size";
  chart.y_label = unknown_class ? "unknown accuracy" : "known accuracy";

  std::size_t top_level = 0;
  for (const auto& r : reports) {
    top_level = std::max(top_level, r.n_unknown_classes);
  }
  const bool optimized = has_optimized(reports);
  std::optional<double> fixed_eps;
  std::optional<std::size_t> alpha;
  std::map<Method, Series> by_method;
  std::vector<Method> order;
  for (const auto& r : reports) {
    if (r.error || r.n_unknown_classes != top_level) continue;
    if (optimized != !r.epsilon.has_value()) continue;
    if (!alpha) alpha = r.alpha;
    if (r.alpha != *alpha) continue;
    if (!optimized) {
      if (!fixed_eps) fixed_eps = r.epsilon;
      if (r.epsilon != fixed_eps) continue;
    }
    const auto& metric = unknown_class ? r.unknown_accuracy : r.known_accuracy;
    if (!metric) continue;
    if (!by_method.contains(r.method)) {
      order.push_back(r.method);
      by_method[r.method].name = std::string(to_string(r.method));
    }
    by_method[r.method].points.emplace_back(
        static_cast<double>(r.tail_size), *metric);
  }
  for (Method m : order) {
    auto& s = by_method[m];
    std::sort(s.points.begin(), s.points.end());
    chart.series.push_back(std::move(s));
  }
  return chart;
}

}  // namespace gopenmax
