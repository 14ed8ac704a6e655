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

#include "armform/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <vector>

namespace armform {

namespace {

// Mean over the sample span of equally spaced samples: composite Simpson,
// with the 3/8 rule on the last three intervals when the count is odd.
double simpson_mean(const std::vector<double>& f) {
  const std::size_t n = f.size() - 1;  // intervals
  if (n == 1) return 0.5 * (f[0] + f[1]);
  double sum = 0.0;
  const std::size_t simpson_end = n % 2 == 0 ? n : n - 3;
  for (std::size_t k = 0; k + 2 <= simpson_end; k += 2) {
    sum += (f[k] + 4.0 * f[k + 1] + f[k + 2]) / 3.0;
  }
  if (simpson_end != n) {
    const std::size_t k = simpson_end;
    sum += 3.0 / 8.0 * (f[k] + 3.0 * f[k + 1] + 3.0 * f[k + 2] + f[k + 3]);
  }
  return sum / static_cast<double>(n);
}

}  // namespace

ConvergenceMetrics convergence_metrics(const SimLog& log, double tail) {
  if (log.rows.empty()) throw InvariantViolation("log has at least one row");
  const double t_end = log.rows.back().t;
  if (!(tail > 0.0) || !(tail < t_end)) throw InvariantViolation("0 < tail < duration");

  // Rows are logged at multiples of dt, so compare against the nearest
  // multiple to avoid losing the first tail row to rounding.
  const double start = t_end - tail;
  const double eps = 1e-9 * std::max(1.0, t_end);
  auto first = std::find_if(log.rows.begin(), log.rows.end(),
                            [&](const LogRow& r) { return r.t >= start - eps; });

  ConvergenceMetrics m;
  auto residual = [](const LogRow& r) {
    double s = 0.0;
    for (const AgentSample& a : r.agents) s += (a.u_d + a.d).norm();
    return s;
  };
  auto disturbance = [](const LogRow& r) {
    double s = 0.0;
    for (const AgentSample& a : r.agents) s += a.d.norm();
    return s;
  };

  std::vector<double> res;
  std::vector<double> dist;
  for (auto it = first; it != log.rows.end(); ++it) {
    if (it->edge_errors.size() > 0) {
      m.max_edge_error_tail = std::max(m.max_edge_error_tail, it->edge_errors.cwiseAbs().maxCoeff());
    }
    for (const AgentSample& a : it->agents) {
      m.max_joint_speed_tail = std::max(m.max_joint_speed_tail, a.xi.norm());
    }
    res.push_back(residual(*it));
    dist.push_back(disturbance(*it));
  }
  if (res.size() > 1) {
    m.compensation_residual_tail = simpson_mean(res);
    m.disturbance_tail = simpson_mean(dist);
  } else {
    m.compensation_residual_tail = res.front();
    m.disturbance_tail = dist.front();
  }
  m.residual_ratio =
      m.disturbance_tail > 0.0 ? m.compensation_residual_tail / m.disturbance_tail : 0.0;
  m.final_potential = log.rows.back().potential;
  m.min_margin = log.min_margin;
  return m;
}

std::string format_metrics(const ConvergenceMetrics& m) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "max_edge_error_tail=" << m.max_edge_error_tail << '\n'
      << "max_joint_speed_tail=" << m.max_joint_speed_tail << '\n'
      << "compensation_residual_tail=" << m.compensation_residual_tail << '\n'
      << "disturbance_tail=" << m.disturbance_tail << '\n'
      << "residual_ratio=" << m.residual_ratio << '\n'
      << "final_potential=" << m.final_potential << '\n'
      << "min_margin=" << m.min_margin << '\n';
  return out.str();
}

}  // namespace armform
