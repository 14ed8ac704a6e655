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

#include "armform/engine.hpp"

#include <cmath>
#include <limits>
#include <set>

#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

namespace armform {

namespace detail {
void throw_non_finite(double t) { throw NonFiniteState(t); }
}  // namespace detail

void Scenario::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvariantViolation("dt > 0");
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw InvariantViolation("duration >= 0");
  if (log_stride < 1) throw InvariantViolation("log_stride >= 1");
  if (agents.empty()) throw InvariantViolation("at least one agent");
  if (static_cast<int>(agents.size()) != graph.vertex_count()) {
    throw InvariantViolation("agent count (" + std::to_string(agents.size()) +
                             ") = graph vertex count (" +
                             std::to_string(graph.vertex_count()) + ")");
  }
  gains.validate();
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const AgentSpec& a = agents[i];
    a.params.validate();
    if (!a.initial.q.allFinite() || !a.initial.qdot.allFinite()) {
      throw InvariantViolation("initial joint state of agent " + std::to_string(i + 1) +
                               " finite");
    }
    a.torque_model.check_dimensions("M");
    a.force_model.check_dimensions("E");
    // Compiles the terms; throws on bad channels or phases.
    Exosystem::from_terms(a.torque_disturbance);
    Exosystem::from_terms(a.force_disturbance);
  }
}

long Scenario::step_count() const {
  return static_cast<long>(std::floor(duration / dt + 1e-9));
}

struct ClosedLoop::Arena {
  explicit Arena(int threads) : arena(threads) {}
  tbb::task_arena arena;
};

ClosedLoop::ClosedLoop(const Scenario& scenario, int threads) : scenario_(scenario) {
  scenario_.validate();
  const int n = static_cast<int>(scenario_.agents.size());
  offsets_.resize(n);
  int at = 0;
  has_regulator_ = true;
  for (int i = 0; i < n; ++i) {
    const AgentSpec& a = scenario_.agents[i];
    offsets_[i] = at;
    at += 4 + a.torque_model.dim() + a.force_model.dim();
    torque_exo_.push_back(Exosystem::from_terms(a.torque_disturbance));
    force_exo_.push_back(Exosystem::from_terms(a.force_disturbance));
    try {
      torque_sigma_.push_back(solve_regulator(torque_exo_.back(), a.torque_model));
      force_sigma_.push_back(solve_regulator(force_exo_.back(), a.force_model));
    } catch (const FrequencyNotModeled&) {
      has_regulator_ = false;
    }
  }
  state_dim_ = at;
  if (threads > 1) arena_ = std::make_unique<Arena>(threads);
}

ClosedLoop::~ClosedLoop() = default;

void ClosedLoop::for_each_agent(const std::function<void(int)>& body) const {
  const int n = static_cast<int>(scenario_.agents.size());
  if (!arena_) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  arena_->arena.execute([&] { tbb::parallel_for(0, n, [&](int i) { body(i); }); });
}

JointState ClosedLoop::joint_state(int agent, const Eigen::VectorXd& state) const {
  const int o = offsets_[agent];
  return JointState{state.segment<2>(o), state.segment<2>(o + 2)};
}

InternalModelState ClosedLoop::model_state(int agent, const Eigen::VectorXd& state) const {
  const AgentSpec& a = scenario_.agents[agent];
  const int o = offsets_[agent] + 4;
  return InternalModelState{state.segment(o, a.torque_model.dim()),
                            state.segment(o + a.torque_model.dim(), a.force_model.dim())};
}

Eigen::VectorXd ClosedLoop::initial_state() const {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(state_dim_);
  for (std::size_t i = 0; i < scenario_.agents.size(); ++i) {
    s.segment<2>(offsets_[i]) = scenario_.agents[i].initial.q;
    s.segment<2>(offsets_[i] + 2) = scenario_.agents[i].initial.qdot;
  }
  return s;
}

Eigen::VectorXd ClosedLoop::positions(const Eigen::VectorXd& state) const {
  if (state.size() != state_dim_) throw DimensionMismatch("state has the wrong dimension");
  const int n = static_cast<int>(scenario_.agents.size());
  Eigen::VectorXd x(kTaskDim * n);
  for (int i = 0; i < n; ++i) {
    x.segment<2>(kTaskDim * i) =
        forward_kinematics(scenario_.agents[i].params, state.segment<2>(offsets_[i]));
  }
  return x;
}

Eigen::VectorXd ClosedLoop::derivative(double t, const Eigen::VectorXd& state) const {
  const FormationGraph& g = scenario_.graph;
  const Eigen::VectorXd z = edge_vectors(g, positions(state));
  const Eigen::VectorXd e_hat = agent_gradients(g, z, edge_errors(g, z));

  Eigen::VectorXd rate(state_dim_);
  for_each_agent([&](int i) {
    const AgentSpec& a = scenario_.agents[i];
    const JointState js = joint_state(i, state);
    const InternalModelState chi = model_state(i, state);
    const Mat2 J = jacobian(a.params, js.q);
    const Vec2 u_d = compensator_output(a.torque_model, a.force_model, chi, J);
    const Vec2 u = total_control(scenario_.gains, J, e_hat.segment<2>(kTaskDim * i),
                                 gravity_vector(a.params, js.q), js.qdot, u_d);
    const DisturbanceSample dist = disturbance_at(t, torque_exo_[i], force_exo_[i], J);
    const InternalModelState chi_rate =
        internal_model_derivative(a.torque_model, a.force_model, chi, J, js.qdot);

    const int o = offsets_[i];
    rate.segment<2>(o) = js.qdot;
    rate.segment<2>(o + 2) = joint_acceleration(a.params, js, u, dist.d);
    rate.segment(o + 4, chi_rate.eta.size()) = chi_rate.eta;
    rate.segment(o + 4 + chi_rate.eta.size(), chi_rate.zeta.size()) = chi_rate.zeta;
  });
  return rate;
}

LogRow ClosedLoop::sample(double t, const Eigen::VectorXd& state) const {
  const FormationGraph& g = scenario_.graph;
  const int n = static_cast<int>(scenario_.agents.size());
  LogRow row;
  row.t = t;
  row.agents.resize(n);
  const Eigen::VectorXd x = positions(state);
  const Eigen::VectorXd z = edge_vectors(g, x);
  row.edge_errors = edge_errors(g, z);
  row.potential = potential(row.edge_errors);
  const Eigen::VectorXd e_hat = agent_gradients(g, z, row.edge_errors);
  row.margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const AgentSpec& a = scenario_.agents[i];
    const JointState js = joint_state(i, state);
    const Mat2 J = jacobian(a.params, js.q);
    AgentSample& s = row.agents[i];
    s.q = js.q;
    s.xi = js.qdot;
    s.x = x.segment<2>(kTaskDim * i);
    s.u_d = compensator_output(a.torque_model, a.force_model, model_state(i, state), J);
    s.u = total_control(scenario_.gains, J, e_hat.segment<2>(kTaskDim * i),
                        gravity_vector(a.params, js.q), js.qdot, s.u_d);
    s.d = disturbance_at(t, torque_exo_[i], force_exo_[i], J).d;
    row.margin = std::min(row.margin, std::abs(J.determinant()));
  }
  row.lyapunov = lyapunov_value(t, state);
  return row;
}

double ClosedLoop::min_margin(const Eigen::VectorXd& state) const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scenario_.agents.size(); ++i) {
    m = std::min(m, singularity_margin(scenario_.agents[i].params,
                                       state.segment<2>(offsets_[i])));
  }
  return m;
}

InternalModelState ClosedLoop::chi_tilde(int agent, double t,
                                         const Eigen::VectorXd& state) const {
  if (!has_regulator_) throw FrequencyNotModeled("no regulator solution for this scenario");
  InternalModelState chi = model_state(agent, state);
  chi.eta -= torque_sigma_[agent] * torque_exo_[agent].state_at(t);
  chi.zeta -= force_sigma_[agent] * force_exo_[agent].state_at(t);
  return chi;
}

double ClosedLoop::lyapunov_value(double t, const Eigen::VectorXd& state) const {
  if (!has_regulator_) return std::numeric_limits<double>::quiet_NaN();
  const FormationGraph& g = scenario_.graph;
  const EdgeError e = edge_errors(g, edge_vectors(g, positions(state)));
  double u = 0.5 * scenario_.gains.kp * e.squaredNorm();
  for (std::size_t i = 0; i < scenario_.agents.size(); ++i) {
    const int agent = static_cast<int>(i);
    const InternalModelState ct = chi_tilde(agent, t, state);
    const JointState js = joint_state(agent, state);
    u += 0.5 * (ct.eta.squaredNorm() + ct.zeta.squaredNorm());
    u += 0.5 * js.qdot.dot(inertia_matrix(scenario_.agents[i].params, js.q) * js.qdot);
  }
  return u;
}

double ClosedLoop::compensation_mismatch(double t, const Eigen::VectorXd& state) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < scenario_.agents.size(); ++i) {
    const int agent = static_cast<int>(i);
    const AgentSpec& a = scenario_.agents[i];
    const Mat2 J = jacobian(a.params, joint_state(agent, state).q);
    const Vec2 r = compensator_output(a.torque_model, a.force_model,
                                      chi_tilde(agent, t, state), J);
    worst = std::max(worst, r.norm());
  }
  return worst;
}

SimLog simulate(const Scenario& scenario, const SimOptions& options) {
  const ClosedLoop loop(scenario, options.threads);
  const Scenario& sc = loop.scenario();

  SimLog log;
  log.agent_count = static_cast<int>(sc.agents.size());
  log.edge_count = sc.graph.edge_count();
  log.strategy = sc.graph.strategy();
  log.dt = sc.dt;
  log.log_stride = sc.log_stride;

  const long steps = sc.step_count();
  log.rows.reserve(static_cast<std::size_t>(steps / sc.log_stride + 1));

  std::set<int> warned;
  auto check_margins = [&](double t, const Eigen::VectorXd& state) {
    for (int i = 0; i < log.agent_count; ++i) {
      const double m =
          singularity_margin(sc.agents[i].params, state.segment<2>(loop.offset(i)));
      log.min_margin = std::min(log.min_margin, m);
      if (m < kSingularAbortMargin) throw SingularConfiguration(t);
      if (m < kSingularWarnMargin && warned.insert(i).second) {
        const std::string msg = "agent " + std::to_string(i + 1) +
                                " approaches a singular configuration (|det J| = " +
                                std::to_string(m) + ") at t = " + std::to_string(t);
        log.warnings.push_back(msg);
        if (options.on_warning) options.on_warning(msg);
      }
    }
  };

  auto f = [&loop](double t, const Eigen::VectorXd& y) { return loop.derivative(t, y); };

  Eigen::VectorXd state = loop.initial_state();
  log.min_margin = std::numeric_limits<double>::infinity();
  check_margins(0.0, state);
  log.rows.push_back(loop.sample(0.0, state));
  for (long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * sc.dt;
    state = rk4_step(f, t, state, sc.dt);
    const double t_next = static_cast<double>(k + 1) * sc.dt;
    check_margins(t_next, state);
    if ((k + 1) % sc.log_stride == 0) log.rows.push_back(loop.sample(t_next, state));
  }
  log.final_state = std::move(state);
  return log;
}

double lyapunov_value(const Scenario& scenario, const Eigen::VectorXd& state, double t) {
  return ClosedLoop(scenario).lyapunov_value(t, state);
}

}  // namespace armform
