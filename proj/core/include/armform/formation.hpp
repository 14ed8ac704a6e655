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

// Formation graph and virtual-spring gradient machinery.
//
// Edges are ordered pairs (tail, head). The incidence matrix carries +1 at
// the tail and -1 at the head, so the relative position of edge k is
// z_k = x_tail - x_head and z = (B kron I_2)^T x.
//
// Per edge the error is
//   distance:     e_k = |z_k|^2 - target_k^2   (one scalar per edge)
//   displacement: e_k = z_k - z*_k             (two entries per edge)
// and the potential V = 1/2 sum_k |e_k|^2 has agent gradients
//   e_hat_i = sum_k b_ik D_k(z_k) e_k
// with D_k = 2 z_k (distance) or I_2 (displacement).

#ifndef ARMFORM_FORMATION_HPP_
#define ARMFORM_FORMATION_HPP_

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "armform/manipulator.hpp"

namespace armform {

inline constexpr int kTaskDim = 2;

enum class Strategy { displacement, distance };

std::string_view to_string(Strategy s);
// Accepts "distance" or "displacement"; throws InvariantViolation otherwise.
Strategy parse_strategy(std::string_view name);

// Vertices are zero-based.
struct Edge {
  int tail = 0;
  int head = 0;

  bool operator==(const Edge&) const = default;
};

// Stacked per-edge error: |E| entries (distance) or 2|E| (displacement).
using EdgeError = Eigen::VectorXd;

class FormationGraph {
 public:
  // Empty graph; only useful as a placeholder before assignment.
  FormationGraph() = default;

  // Throws InvariantViolation when the edge list does not describe a
  // connected graph, when a target is not strictly positive, or when
  // |E| < 2N - 3.
  static FormationGraph distance(int vertex_count, std::vector<Edge> edges,
                                 std::vector<double> lengths);
  static FormationGraph displacement(int vertex_count, std::vector<Edge> edges,
                                     std::vector<Vec2> offsets);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  Strategy strategy() const { return strategy_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Eigen::MatrixXd& incidence() const { return incidence_; }

  // Entries of the error per edge: 1 (distance) or 2 (displacement).
  int error_width() const { return strategy_ == Strategy::distance ? 1 : kTaskDim; }
  int error_dim() const { return error_width() * edge_count(); }

  // Valid for the distance strategy only.
  const std::vector<double>& lengths() const { return lengths_; }
  // Valid for the displacement strategy only.
  const std::vector<Vec2>& offsets() const { return offsets_; }

  bool operator==(const FormationGraph& other) const;

 private:
  FormationGraph(int vertex_count, std::vector<Edge> edges, Strategy strategy);
  void check_structure() const;

  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  Strategy strategy_ = Strategy::distance;
  Eigen::MatrixXd incidence_;
  std::vector<double> lengths_;
  std::vector<Vec2> offsets_;
};

// z_k = x_tail(k) - x_head(k); x is the stacked 2N vector of positions.
Eigen::VectorXd edge_vectors(const FormationGraph& g, const Eigen::VectorXd& x);
EdgeError edge_errors(const FormationGraph& g, const Eigen::VectorXd& z);
// Block diagonal D(z): 2|E| x |E| (distance) or 2|E| x 2|E| (displacement).
Eigen::MatrixXd edge_gain_matrix(const FormationGraph& g, const Eigen::VectorXd& z);
// Stacked 2N vector of e_hat_i = grad_{x_i} V.
Eigen::VectorXd agent_gradients(const FormationGraph& g, const Eigen::VectorXd& z,
                                const EdgeError& e);
double potential(const EdgeError& e);

// True when grad_{x_tail} V_k = -grad_{x_head} V_k holds for every edge
// within tol.
bool action_antisymmetry_check(const FormationGraph& g, const Eigen::VectorXd& x,
                               double tol = 1e-12);

}  // namespace armform

#endif  // ARMFORM_FORMATION_HPP_
