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

#ifndef ARMFORM_METRICS_HPP_
#define ARMFORM_METRICS_HPP_

#include <string>

#include "armform/engine.hpp"

namespace armform {

// Summary of the last `tail` seconds of a run. Tail means are composite
// Simpson time averages over the (uniformly spaced) log rows, summed over
// arms.
struct ConvergenceMetrics {
  double max_edge_error_tail = 0.0;   // max |e_k| entry
  double max_joint_speed_tail = 0.0;  // max |xi_i|
  double compensation_residual_tail = 0.0;  // mean |u_d + d|
  double disturbance_tail = 0.0;            // mean |d|
  double residual_ratio = 0.0;  // residual / disturbance, 0 when |d| == 0
  double final_potential = 0.0;
  double min_margin = 0.0;  // over the whole run

  bool operator==(const ConvergenceMetrics&) const = default;
};

// Requires 0 < tail < the logged time span.
ConvergenceMetrics convergence_metrics(const SimLog& log, double tail);

// key=value lines, 17 significant digits.
std::string format_metrics(const ConvergenceMetrics& m);

}  // namespace armform

#endif  // ARMFORM_METRICS_HPP_
