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

#include "checks.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace armform::tools {

namespace {

CheckResult skew_check(const char* matrix, int agent, const Eigen::MatrixXd& A) {
  CheckResult r{std::string("skew ") + matrix, agent, false, skew_residual(A), 1e-12, ""};
  r.passed = r.value <= r.tolerance;
  if (!r.passed) r.detail = std::string(matrix) + " is not skew-symmetric";
  return r;
}

CheckResult observability_check(const char* pair, int agent, const InternalModelSpec& spec) {
  CheckResult r{std::string("observable ") + pair, agent, is_observable(spec.A, spec.Gamma),
                0.0, 0.0, ""};
  if (!r.passed) r.detail = std::string(pair) + " is not observable";
  return r;
}

CheckResult regulator_check(const char* which, int agent, const Exosystem& exo,
                            const InternalModelSpec& spec) {
  CheckResult r{std::string("regulator ") + which, agent, false, 0.0, 1e-10, ""};
  try {
    const Eigen::MatrixXd sigma = solve_regulator(exo, spec);
    const RegulatorResiduals res = regulator_residuals(exo, spec, sigma);
    r.value = std::max(res.intertwining, res.output);
    r.passed = r.value <= r.tolerance;
  } catch (const FrequencyNotModeled& err) {
    r.value = std::numeric_limits<double>::infinity();
    r.detail = err.what();
  } catch (const Error& err) {
    r.value = std::numeric_limits<double>::infinity();
    r.detail = err.what();
  }
  return r;
}

CheckResult skew_symmetry_check(int agent, const ManipulatorParams& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> rate(-2.0, 2.0);
  constexpr double h = 1e-6;
  double worst = 0.0;
  for (int s = 0; s < kRandomSamples; ++s) {
    const Vec2 q(angle(rng), angle(rng));
    const Vec2 qd(rate(rng), rate(rng));
    const Mat2 hdot = (inertia_matrix(p, q + h * qd) - inertia_matrix(p, q - h * qd)) / (2 * h);
    const Mat2 c = coriolis_matrix(p, q, qd);
    worst = std::max(worst, (hdot - c - c.transpose()).cwiseAbs().maxCoeff());
  }
  CheckResult r{"inertia/coriolis H' = C + C^T", agent, false, worst, 1e-6, ""};
  r.passed = worst <= r.tolerance;
  return r;
}

CheckResult jacobian_check(int agent, const ManipulatorParams& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  constexpr double h = 1e-6;
  double worst = 0.0;
  for (int s = 0; s < kRandomSamples; ++s) {
    const Vec2 q(angle(rng), angle(rng));
    Mat2 fd;
    for (int j = 0; j < 2; ++j) {
      Vec2 step = Vec2::Zero();
      step(j) = h;
      fd.col(j) = (forward_kinematics(p, q + step) - forward_kinematics(p, q - step)) / (2 * h);
    }
    worst = std::max(worst, (jacobian(p, q) - fd).cwiseAbs().maxCoeff());
  }
  CheckResult r{"jacobian vs finite differences", agent, false, worst, 1e-6, ""};
  r.passed = worst <= r.tolerance;
  return r;
}

}  // namespace

std::vector<CheckResult> run_checks(const Scenario& scenario, unsigned seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < scenario.agents.size(); ++i) {
    const AgentSpec& a = scenario.agents[i];
    const int agent = static_cast<int>(i) + 1;
    out.push_back(skew_check("A_M", agent, a.torque_model.A));
    out.push_back(skew_check("A_E", agent, a.force_model.A));
    out.push_back(observability_check("(A_M, Gamma_M)", agent, a.torque_model));
    out.push_back(observability_check("(A_E, Gamma_E)", agent, a.force_model));
    out.push_back(regulator_check("torque", agent, Exosystem::from_terms(a.torque_disturbance),
                                  a.torque_model));
    out.push_back(regulator_check("force", agent, Exosystem::from_terms(a.force_disturbance),
                                  a.force_model));
    out.push_back(skew_symmetry_check(agent, a.params, rng));
    out.push_back(jacobian_check(agent, a.params, rng));
  }
  return out;
}

}  // namespace armform::tools
