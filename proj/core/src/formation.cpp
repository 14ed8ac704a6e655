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

#include "armform/formation.hpp"

#include <cmath>
#include <queue>
#include <string>

#include "armform/errors.hpp"

namespace armform {

std::string_view to_string(Strategy s) {
  return s == Strategy::distance ? "distance" : "displacement";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "distance") return Strategy::distance;
  if (name == "displacement") return Strategy::displacement;
  throw InvariantViolation("strategy is distance or displacement (got '" +
                           std::string(name) + "')");
}

FormationGraph::FormationGraph(int vertex_count, std::vector<Edge> edges, Strategy strategy)
    : vertex_count_(vertex_count), edges_(std::move(edges)), strategy_(strategy) {
  check_structure();
  incidence_ = Eigen::MatrixXd::Zero(vertex_count_, edge_count());
  for (int k = 0; k < edge_count(); ++k) {
    incidence_(edges_[k].tail, k) = 1.0;
    incidence_(edges_[k].head, k) = -1.0;
  }
}

void FormationGraph::check_structure() const {
  if (vertex_count_ < 2) throw InvariantViolation("graph has at least 2 vertices");
  if (edges_.empty()) throw InvariantViolation("graph has at least 1 edge");
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    const std::string name = "edge " + std::to_string(k + 1) + " (" +
                             std::to_string(e.tail + 1) + ", " + std::to_string(e.head + 1) + ")";
    if (e.tail < 0 || e.tail >= vertex_count_ || e.head < 0 || e.head >= vertex_count_) {
      throw InvariantViolation(name + " references a vertex outside 1.." +
                               std::to_string(vertex_count_));
    }
    if (e.tail == e.head) throw InvariantViolation(name + " is a self-loop");
  }

  std::vector<std::vector<int>> adj(vertex_count_);
  for (const Edge& e : edges_) {
    adj[e.tail].push_back(e.head);
    adj[e.head].push_back(e.tail);
  }
  std::vector<bool> seen(vertex_count_, false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  int reached = 1;
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        frontier.push(w);
      }
    }
  }
  if (reached != vertex_count_) throw InvariantViolation("graph is connected");

  if (strategy_ == Strategy::distance && edge_count() < 2 * vertex_count_ - 3) {
    throw InvariantViolation("distance graph has |E| >= 2N - 3 edges");
  }
}

FormationGraph FormationGraph::distance(int vertex_count, std::vector<Edge> edges,
                                        std::vector<double> lengths) {
  if (lengths.size() != edges.size()) {
    throw DimensionMismatch("one distance target per edge required");
  }
  FormationGraph g(vertex_count, std::move(edges), Strategy::distance);
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    if (!(lengths[k] > 0.0) || !std::isfinite(lengths[k])) {
      throw InvariantViolation("distance target of edge " + std::to_string(k + 1) + " > 0");
    }
  }
  g.lengths_ = std::move(lengths);
  return g;
}

FormationGraph FormationGraph::displacement(int vertex_count, std::vector<Edge> edges,
                                            std::vector<Vec2> offsets) {
  if (offsets.size() != edges.size()) {
    throw DimensionMismatch("one displacement target per edge required");
  }
  FormationGraph g(vertex_count, std::move(edges), Strategy::displacement);
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    if (!offsets[k].allFinite()) {
      throw InvariantViolation("displacement target of edge " + std::to_string(k + 1) +
                               " finite");
    }
  }
  g.offsets_ = std::move(offsets);
  return g;
}

bool FormationGraph::operator==(const FormationGraph& o) const {
  return vertex_count_ == o.vertex_count_ && edges_ == o.edges_ &&
         strategy_ == o.strategy_ && lengths_ == o.lengths_ && offsets_ == o.offsets_;
}

Eigen::VectorXd edge_vectors(const FormationGraph& g, const Eigen::VectorXd& x) {
  if (x.size() != kTaskDim * g.vertex_count()) {
    throw DimensionMismatch("positions have dimension " + std::to_string(x.size()) +
                            ", expected " + std::to_string(kTaskDim * g.vertex_count()));
  }
  Eigen::VectorXd z(kTaskDim * g.edge_count());
  for (int k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edges()[k];
    z.segment<kTaskDim>(kTaskDim * k) =
        x.segment<kTaskDim>(kTaskDim * e.tail) - x.segment<kTaskDim>(kTaskDim * e.head);
  }
  return z;
}

EdgeError edge_errors(const FormationGraph& g, const Eigen::VectorXd& z) {
  if (z.size() != kTaskDim * g.edge_count()) {
    throw DimensionMismatch("edge vectors have dimension " + std::to_string(z.size()));
  }
  EdgeError e(g.error_dim());
  for (int k = 0; k < g.edge_count(); ++k) {
    const Vec2 zk = z.segment<kTaskDim>(kTaskDim * k);
    if (g.strategy() == Strategy::distance) {
      const double target = g.lengths()[k];
      e(k) = zk.squaredNorm() - target * target;
    } else {
      e.segment<kTaskDim>(kTaskDim * k) = zk - g.offsets()[k];
    }
  }
  return e;
}

Eigen::MatrixXd edge_gain_matrix(const FormationGraph& g, const Eigen::VectorXd& z) {
  if (z.size() != kTaskDim * g.edge_count()) {
    throw DimensionMismatch("edge vectors have dimension " + std::to_string(z.size()));
  }
  const int w = g.error_width();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(kTaskDim * g.edge_count(), w * g.edge_count());
  for (int k = 0; k < g.edge_count(); ++k) {
    if (g.strategy() == Strategy::distance) {
      d.block<kTaskDim, 1>(kTaskDim * k, k) = 2.0 * z.segment<kTaskDim>(kTaskDim * k);
    } else {
      d.block<kTaskDim, kTaskDim>(kTaskDim * k, kTaskDim * k).setIdentity();
    }
  }
  return d;
}

namespace {

// D_k(z_k) e_k, the force the virtual spring of edge k puts on its tail.
Vec2 spring_action(const FormationGraph& g, int k, const Eigen::VectorXd& z,
                   const EdgeError& e) {
  if (g.strategy() == Strategy::distance) {
    return 2.0 * z.segment<kTaskDim>(kTaskDim * k) * e(k);
  }
  return e.segment<kTaskDim>(kTaskDim * k);
}

}  // namespace

Eigen::VectorXd agent_gradients(const FormationGraph& g, const Eigen::VectorXd& z,
                                const EdgeError& e) {
  if (z.size() != kTaskDim * g.edge_count() || e.size() != g.error_dim()) {
    throw DimensionMismatch("edge vectors / errors do not match the graph");
  }
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(kTaskDim * g.vertex_count());
  for (int k = 0; k < g.edge_count(); ++k) {
    const Vec2 action = spring_action(g, k, z, e);
    grad.segment<kTaskDim>(kTaskDim * g.edges()[k].tail) += action;
    grad.segment<kTaskDim>(kTaskDim * g.edges()[k].head) -= action;
  }
  return grad;
}

double potential(const EdgeError& e) { return 0.5 * e.squaredNorm(); }

bool action_antisymmetry_check(const FormationGraph& g, const Eigen::VectorXd& x,
                               double tol) {
  const Eigen::VectorXd z = edge_vectors(g, x);
  const EdgeError e = edge_errors(g, z);
  const Eigen::MatrixXd& b = g.incidence();
  for (int k = 0; k < g.edge_count(); ++k) {
    const Vec2 action = spring_action(g, k, z, e);
    const Edge& edge = g.edges()[k];
    const Vec2 on_tail = b(edge.tail, k) * action;
    const Vec2 on_head = b(edge.head, k) * action;
    if ((on_tail + on_head).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

}  // namespace armform
