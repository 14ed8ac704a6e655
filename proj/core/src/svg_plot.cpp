// Copyright 2026 The armform Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "armform/svg_plot.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace armform {

namespace {

constexpr double kWidth = 900.0;
constexpr double kPanelHeight = 320.0;
constexpr double kTitleHeight = 40.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 50.0;
constexpr std::size_t kMaxPoints = 2000;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

const char* color(int i) { return kPalette[static_cast<std::size_t>(i) % std::size(kPalette)]; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      const double pad = std::max(1e-3, 0.05 * std::abs(hi));
      lo -= pad;
      hi += pad;
    } else {
      const double pad = 0.04 * (hi - lo);
      lo -= pad;
      hi += pad;
    }
  }
};

std::vector<double> ticks(const Range& r) {
  const double span = r.hi - r.lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> out;
  for (double v = std::ceil(r.lo / step) * step; v <= r.hi + 1e-9 * step; v += step) {
    out.push_back(v);
  }
  return out;
}

void render_panel(std::ostringstream& svg, const PlotPanel& panel, double top) {
  Range xr;
  Range yr;
  for (const PlotSeries& s : panel.series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  for (const PlotMarker& m : panel.markers) {
    xr.add(m.x);
    yr.add(m.y);
  }
  xr.finish();
  yr.finish();

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kPanelHeight - kTop - kBottom;
  if (panel.equal_aspect) {
    const double scale = std::max((xr.hi - xr.lo) / plot_w, (yr.hi - yr.lo) / plot_h);
    const double xc = 0.5 * (xr.lo + xr.hi);
    const double yc = 0.5 * (yr.lo + yr.hi);
    xr.lo = xc - 0.5 * scale * plot_w;
    xr.hi = xc + 0.5 * scale * plot_w;
    yr.lo = yc - 0.5 * scale * plot_h;
    yr.hi = yc + 0.5 * scale * plot_h;
  }
  const double x0 = kLeft;
  const double y0 = top + kTop;
  auto px = [&](double v) { return x0 + (v - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto py = [&](double v) { return y0 + plot_h - (v - yr.lo) / (yr.hi - yr.lo) * plot_h; };

  svg << "<g>\n";
  svg << "<text x=\"" << fmt(x0 + plot_w / 2) << "\" y=\"" << fmt(top + 20)
      << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(panel.title) << "</text>\n";
  svg << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y0) << "\" width=\"" << fmt(plot_w)
      << "\" height=\"" << fmt(plot_h) << "\" fill=\"none\" stroke=\"#000\"/>\n";
  for (double t : ticks(xr)) {
    svg << "<line x1=\"" << fmt(px(t)) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(px(t))
        << "\" y2=\"" << fmt(y0 + plot_h) << "\" stroke=\"#ddd\"/>\n";
    svg << "<text x=\"" << fmt(px(t)) << "\" y=\"" << fmt(y0 + plot_h + 16)
        << "\" text-anchor=\"middle\" font-size=\"11\">" << tick_label(t) << "</text>\n";
  }
  for (double t : ticks(yr)) {
    svg << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(py(t)) << "\" x2=\"" << fmt(x0 + plot_w)
        << "\" y2=\"" << fmt(py(t)) << "\" stroke=\"#ddd\"/>\n";
    svg << "<text x=\"" << fmt(x0 - 6) << "\" y=\"" << fmt(py(t) + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">" << tick_label(t) << "</text>\n";
  }
  svg << "<text x=\"" << fmt(x0 + plot_w / 2) << "\" y=\"" << fmt(y0 + plot_h + 36)
      << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(panel.x_label) << "</text>\n";
  svg << "<text x=\"" << fmt(20) << "\" y=\"" << fmt(y0 + plot_h / 2)
      << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 20 "
      << fmt(y0 + plot_h / 2) << ")\">" << escape(panel.y_label) << "</text>\n";

  for (std::size_t s = 0; s < panel.series.size(); ++s) {
    const PlotSeries& series = panel.series[s];
    const std::size_t n = std::min(series.x.size(), series.y.size());
    // At most kMaxPoints vertices, counting the appended last sample.
    const std::size_t stride = n > kMaxPoints ? (n - 1 + kMaxPoints - 2) / (kMaxPoints - 1) : 1;
    std::string points;
    auto flush = [&] {
      if (!points.empty()) {
        svg << "<polyline fill=\"none\" stroke=\"" << color(static_cast<int>(s))
            << "\" stroke-width=\"1.5\" points=\"" << points << "\"/>\n";
        points.clear();
      }
    };
    for (std::size_t i = 0; i < n; i += stride) {
      if (!std::isfinite(series.x[i]) || !std::isfinite(series.y[i])) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += fmt(px(series.x[i])) + "," + fmt(py(series.y[i]));
    }
    if (n > 0 && (n - 1) % stride != 0 && std::isfinite(series.x[n - 1]) &&
        std::isfinite(series.y[n - 1])) {
      points += ' ' + fmt(px(series.x[n - 1])) + "," + fmt(py(series.y[n - 1]));
    }
    flush();
    const double ly = y0 + 12 + 16 * static_cast<double>(s);
    svg << "<line x1=\"" << fmt(x0 + plot_w + 12) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
        << fmt(x0 + plot_w + 32) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\""
        << color(static_cast<int>(s)) << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << fmt(x0 + plot_w + 38) << "\" y=\"" << fmt(ly)
        << "\" font-size=\"11\">" << escape(series.label) << "</text>\n";
  }

  for (const PlotMarker& m : panel.markers) {
    const double cx = px(m.x);
    const double cy = py(m.y);
    if (m.shape == PlotMarker::Shape::circle) {
      svg << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"5\" fill=\"none\" stroke=\""
          << color(m.color) << "\" stroke-width=\"1.5\"/>\n";
    } else {
      svg << "<path d=\"M" << fmt(cx - 5) << ' ' << fmt(cy - 5) << " L" << fmt(cx + 5) << ' '
          << fmt(cy + 5) << " M" << fmt(cx - 5) << ' ' << fmt(cy + 5) << " L" << fmt(cx + 5) << ' '
          << fmt(cy - 5) << "\" stroke=\"" << color(m.color) << "\" stroke-width=\"1.5\"/>\n";
    }
  }
  svg << "</g>\n";
}

int agent_count(const CsvTable& log) {
  int n = 0;
  while (log.has_column("a" + std::to_string(n + 1) + "_q1")) ++n;
  return n;
}

std::vector<std::string> edge_columns(const CsvTable& log) {
  std::vector<std::string> out;
  for (const std::string& c : log.columns) {
    if (c.size() > 1 && c[0] == 'e' && std::isdigit(static_cast<unsigned char>(c[1]))) {
      out.push_back(c);
    }
  }
  return out;
}

std::string agent_column(int i, const char* field) {
  return "a" + std::to_string(i) + "_" + field;
}

// Central differences, one-sided at the ends.
std::vector<double> derivative(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t n = y.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  d[0] = (y[1] - y[0]) / (t[1] - t[0]);
  d[n - 1] = (y[n - 1] - y[n - 2]) / (t[n - 1] - t[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (t[i + 1] - t[i - 1]);
  return d;
}

}  // namespace

std::string render_svg(const std::string& title, const std::vector<PlotPanel>& panels) {
  const double height = kTitleHeight + kPanelHeight * static_cast<double>(panels.size());
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth) << "\" height=\""
      << fmt(height) << "\" viewBox=\"0 0 " << fmt(kWidth) << ' ' << fmt(height)
      << "\" font-family=\"sans-serif\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n"
      << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"26\" text-anchor=\"middle\" font-size=\"16\">"
      << escape(title) << "</text>\n";
  for (std::size_t p = 0; p < panels.size(); ++p) {
    render_panel(svg, panels[p], kTitleHeight + kPanelHeight * static_cast<double>(p));
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string trajectories_svg(const CsvTable& log) {
  PlotPanel panel;
  panel.title = "End-effector trajectories";
  panel.x_label = "X (m)";
  panel.y_label = "Y (m)";
  panel.equal_aspect = true;
  const int n = agent_count(log);
  for (int i = 1; i <= n; ++i) {
    PlotSeries s{"arm " + std::to_string(i), log.values(agent_column(i, "x")),
                 log.values(agent_column(i, "y"))};
    if (!s.x.empty()) {
      panel.markers.push_back({s.x.front(), s.y.front(), PlotMarker::Shape::cross, i - 1});
      panel.markers.push_back({s.x.back(), s.y.back(), PlotMarker::Shape::circle, i - 1});
    }
    panel.series.push_back(std::move(s));
  }
  return render_svg("End-effector formation", {panel});
}

std::string edge_errors_svg(const CsvTable& log) {
  PlotPanel panel;
  panel.title = "Edge errors";
  panel.x_label = "t (s)";
  const std::vector<std::string> edges = edge_columns(log);
  const bool displacement = !edges.empty() && edges.front().find('_') != std::string::npos;
  panel.y_label = displacement ? "e_k (m)" : "e_k (m^2)";
  const std::vector<double> t = log.values("t");
  for (const std::string& c : edges) panel.series.push_back({c, t, log.values(c)});
  return render_svg("Inter-agent errors", {panel});
}

std::string effector_states_svg(const CsvTable& log) {
  const std::vector<double> t = log.values("t");
  const int n = agent_count(log);
  PlotPanel pos{"End-effector positions", "t (s)", "position (m)", {}, {}, false};
  PlotPanel vel{"End-effector velocities", "t (s)", "velocity (m/s)", {}, {}, false};
  for (int i = 1; i <= n; ++i) {
    for (const char* axis : {"x", "y"}) {
      const std::vector<double> p = log.values(agent_column(i, axis));
      const std::string label = std::string(axis) + std::to_string(i);
      vel.series.push_back({"d" + label + "/dt", t, derivative(t, p)});
      pos.series.push_back({label, t, p});
    }
  }
  return render_svg("End-effector states", {pos, vel});
}

std::string joint_states_svg(const CsvTable& log) {
  const std::vector<double> t = log.values("t");
  const int n = agent_count(log);
  PlotPanel pos{"Joint positions", "t (s)", "q (rad)", {}, {}, false};
  PlotPanel vel{"Joint velocities", "t (s)", "xi (rad/s)", {}, {}, false};
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= 2; ++j) {
      const std::string suffix = std::to_string(i) + std::to_string(j);
      pos.series.push_back({"q" + suffix, t, log.values(agent_column(i, j == 1 ? "q1" : "q2"))});
      vel.series.push_back({"xi" + suffix, t, log.values(agent_column(i, j == 1 ? "xi1" : "xi2"))});
    }
  }
  return render_svg("Joint states", {pos, vel});
}

}  // namespace armform
