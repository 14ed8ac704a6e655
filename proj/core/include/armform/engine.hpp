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

// Closed-loop simulation of N arms under the formation controller.
//
// State layout (agent-major): for each arm i, [q_i (2), xi_i (2), eta_i,
// zeta_i]. The loop is integrated in these original coordinates with the
// disturbances evaluated in closed form; chi~ and the Lyapunov value U are
// computed from the regulator solutions only for diagnostics.

#ifndef ARMFORM_ENGINE_HPP_
#define ARMFORM_ENGINE_HPP_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "armform/controller.hpp"
#include "armform/disturbance.hpp"
#include "armform/errors.hpp"
#include "armform/formation.hpp"
#include "armform/manipulator.hpp"

namespace armform {

struct AgentSpec {
  ManipulatorParams params;
  JointState initial;
  std::vector<SinusoidTerm> torque_disturbance;
  std::vector<SinusoidTerm> force_disturbance;
  InternalModelSpec torque_model;
  InternalModelSpec force_model;

  bool operator==(const AgentSpec&) const = default;
};

struct Scenario {
  std::vector<AgentSpec> agents;
  FormationGraph graph;
  ControllerGains gains;
  double duration = 30.0;
  double dt = 1e-3;
  int log_stride = 10;

  // Re-checks every invariant; throws InvariantViolation / DimensionMismatch.
  void validate() const;
  // Number of integration steps, floor(duration / dt).
  long step_count() const;

  bool operator==(const Scenario&) const = default;
};

struct AgentSample {
  Vec2 q = Vec2::Zero();
  Vec2 xi = Vec2::Zero();
  Vec2 x = Vec2::Zero();    // end-effector position
  Vec2 u = Vec2::Zero();    // total joint torque
  Vec2 u_d = Vec2::Zero();  // compensator output
  Vec2 d = Vec2::Zero();    // joint-space disturbance
};

struct LogRow {
  double t = 0.0;
  std::vector<AgentSample> agents;
  Eigen::VectorXd edge_errors;
  double potential = 0.0;            // V(e)
  double lyapunov = 0.0;             // U, NaN without regulator solutions
  double margin = 0.0;               // min over arms of |det J|
};

struct SimLog {
  int agent_count = 0;
  int edge_count = 0;
  Strategy strategy = Strategy::distance;
  double dt = 0.0;
  int log_stride = 1;
  std::vector<LogRow> rows;
  // Minimum singularity margin over every integration step.
  double min_margin = 0.0;
  std::vector<std::string> warnings;
  Eigen::VectorXd final_state;
};

class ClosedLoop {
 public:
  // threads > 1 fans the per-arm work out on a private task arena. Results
  // do not depend on the thread count.
  explicit ClosedLoop(const Scenario& scenario, int threads = 1);
  ~ClosedLoop();
  ClosedLoop(const ClosedLoop&) = delete;
  ClosedLoop& operator=(const ClosedLoop&) = delete;

  const Scenario& scenario() const { return scenario_; }
  int state_dim() const { return state_dim_; }
  int offset(int agent) const { return offsets_[agent]; }

  Eigen::VectorXd initial_state() const;
  Eigen::VectorXd derivative(double t, const Eigen::VectorXd& state) const;

  // Stacked end-effector positions.
  Eigen::VectorXd positions(const Eigen::VectorXd& state) const;
  LogRow sample(double t, const Eigen::VectorXd& state) const;
  double min_margin(const Eigen::VectorXd& state) const;

  // True when every arm's regulator equations are solvable.
  bool has_regulator() const { return has_regulator_; }
  // chi~_i = chi_i - Sigma_i v_i(t); requires has_regulator().
  InternalModelState chi_tilde(int agent, double t, const Eigen::VectorXd& state) const;
  // U = 1/2 |chi~|^2 + 1/2 Kp |e|^2 + 1/2 xi^T H(q) xi, NaN without regulator.
  double lyapunov_value(double t, const Eigen::VectorXd& state) const;
  // max_i |Gamma_i(q_i) chi~_i|.
  double compensation_mismatch(double t, const Eigen::VectorXd& state) const;

  const Exosystem& torque_exosystem(int agent) const { return torque_exo_[agent]; }
  const Exosystem& force_exosystem(int agent) const { return force_exo_[agent]; }

 private:
  struct Arena;

  JointState joint_state(int agent, const Eigen::VectorXd& state) const;
  InternalModelState model_state(int agent, const Eigen::VectorXd& state) const;
  void for_each_agent(const std::function<void(int)>& body) const;

  Scenario scenario_;
  std::vector<int> offsets_;
  int state_dim_ = 0;
  std::vector<Exosystem> torque_exo_;
  std::vector<Exosystem> force_exo_;
  std::vector<Eigen::MatrixXd> torque_sigma_;
  std::vector<Eigen::MatrixXd> force_sigma_;
  bool has_regulator_ = false;
  std::unique_ptr<Arena> arena_;
};

namespace detail {
[[noreturn]] void throw_non_finite(double t);
}  // namespace detail

// One classical Runge-Kutta step of y' = f(t, y). Throws NonFiniteState
// (stamped with t + dt) when the result is not finite.
template <typename F>
Eigen::VectorXd rk4_step(F&& f, double t, const Eigen::VectorXd& y, double dt) {
  if (!(dt > 0.0)) throw InvariantViolation("dt > 0");
  const double half = 0.5 * dt;
  const Eigen::VectorXd k1 = f(t, y);
  const Eigen::VectorXd k2 = f(t + half, (y + half * k1).eval());
  const Eigen::VectorXd k3 = f(t + half, (y + half * k2).eval());
  const Eigen::VectorXd k4 = f(t + dt, (y + dt * k3).eval());
  Eigen::VectorXd next = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!next.allFinite()) detail::throw_non_finite(t + dt);
  return next;
}

struct SimOptions {
  int threads = 1;
  // Receives warnings (e.g. approaching a singular configuration) as they
  // happen; they are also collected in SimLog::warnings.
  std::function<void(const std::string&)> on_warning;
};

inline constexpr double kSingularWarnMargin = 1e-3;
inline constexpr double kSingularAbortMargin = 1e-6;

// Throws SingularConfiguration or NonFiniteState on abort.
SimLog simulate(const Scenario& scenario, const SimOptions& options = {});

double lyapunov_value(const Scenario& scenario, const Eigen::VectorXd& state, double t);

}  // namespace armform

#endif  // ARMFORM_ENGINE_HPP_
