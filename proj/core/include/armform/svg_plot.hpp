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

// Self-contained SVG line plots. Every figure is a pure function of the
// CSV table it is drawn from.

#ifndef ARMFORM_SVG_PLOT_HPP_
#define ARMFORM_SVG_PLOT_HPP_

#include <string>
#include <vector>

#include "armform/csv.hpp"

namespace armform {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotMarker {
  enum class Shape { cross, circle };
  double x = 0.0;
  double y = 0.0;
  Shape shape = Shape::cross;
  int color = 0;  // palette index
};

struct PlotPanel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  std::vector<PlotMarker> markers;
  bool equal_aspect = false;
};

std::string render_svg(const std::string& title, const std::vector<PlotPanel>& panels);

// End-effector paths in the plane; x marks the start, o the end.
std::string trajectories_svg(const CsvTable& log);
// e_k(t) for every edge.
std::string edge_errors_svg(const CsvTable& log);
// End-effector coordinates and their finite-difference velocities.
std::string effector_states_svg(const CsvTable& log);
// Joint angles and joint velocities.
std::string joint_states_svg(const CsvTable& log);

}  // namespace armform

#endif  // ARMFORM_SVG_PLOT_HPP_
