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

// Persistent disturbances and the internal-model compensators that cancel
// them.
//
// Each disturbance channel is a sum of terms a sin(w t + phi) (w > 0) or
// steps of value a (w = 0). They are realized by a neutrally stable
// exosystem v' = S v, d = G v with one rotation block per term, and are
// evaluated in closed form.
//
// The compensator of one arm stacks a torque model eta and a force model
// zeta:
//
//   eta'  = A_M eta  - Gamma_M^T xi
//   zeta' = A_E zeta - Gamma_E^T J(q) xi
//   u_d   = Gamma_M eta + J(q)^T Gamma_E zeta
//
// With Sigma solving Sigma S = A Sigma and Gamma Sigma + G = 0, the error
// coordinate chi~ = chi - Sigma v satisfies Gamma(q) chi~ = u_d + d.

#ifndef ARMFORM_DISTURBANCE_HPP_
#define ARMFORM_DISTURBANCE_HPP_

#include <vector>

#include <Eigen/Dense>

#include "armform/manipulator.hpp"

namespace armform {

// a sin(w t + phi) on one channel (zero-based); w = 0 is a constant a.
struct SinusoidTerm {
  int channel = 0;
  double amplitude = 0.0;
  double frequency = 0.0;  // rad/s
  double phase = 0.0;      // rad

  bool operator==(const SinusoidTerm&) const = default;
};

class Exosystem {
 public:
  Exosystem() : Exosystem({}, Eigen::MatrixXd::Zero(kChannels, 0), Eigen::VectorXd()) {}
  // One block per entry of block_frequencies: 2x2 [[0, w], [-w, 0]] for
  // w > 0, 1x1 zero for w == 0.
  Exosystem(std::vector<double> block_frequencies, Eigen::MatrixXd G, Eigen::VectorXd v0);

  static Exosystem from_terms(const std::vector<SinusoidTerm>& terms);

  int dim() const { return static_cast<int>(v0_.size()); }
  const Eigen::MatrixXd& S() const { return S_; }
  const Eigen::MatrixXd& G() const { return G_; }
  const Eigen::VectorXd& v0() const { return v0_; }
  const std::vector<double>& block_frequencies() const { return freqs_; }

  // exp(S t) v0, evaluated block by block.
  Eigen::VectorXd state_at(double t) const;
  Eigen::Vector2d output_at(double t) const { return G_ * state_at(t); }

  static constexpr int kChannels = 2;

 private:
  std::vector<double> freqs_;
  Eigen::MatrixXd S_;
  Eigen::MatrixXd G_;
  Eigen::VectorXd v0_;
};

struct ModelMode {
  int channel = 0;
  double frequency = 0.0;
};

struct InternalModelSpec {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(0, 0);
  Eigen::MatrixXd Gamma = Eigen::MatrixXd::Zero(Exosystem::kChannels, 0);

  // Rotation block per mode, Gamma picking the first state of the block
  // into the mode's channel.
  static InternalModelSpec from_modes(const std::vector<ModelMode>& modes);

  int dim() const { return static_cast<int>(A.rows()); }
  // Throws DimensionMismatch when A is not square or Gamma is not 2 x dim.
  void check_dimensions(const char* name) const;

  bool operator==(const InternalModelSpec& o) const {
    // Eigen's == requires equal shapes.
    return A.rows() == o.A.rows() && A.cols() == o.A.cols() && Gamma.rows() == o.Gamma.rows() &&
           Gamma.cols() == o.Gamma.cols() && A == o.A && Gamma == o.Gamma;
  }
};

// max |A + A^T|.
double skew_residual(const Eigen::MatrixXd& A);
// Rank of [Gamma; Gamma A; ...; Gamma A^(l-1)] equals l.
bool is_observable(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Gamma);

struct InternalModelState {
  Eigen::VectorXd eta;
  Eigen::VectorXd zeta;
};

struct DisturbanceSample {
  Vec2 d_M = Vec2::Zero();  // input torque disturbance
  Vec2 d_E = Vec2::Zero();  // end-effector force disturbance
  Vec2 d = Vec2::Zero();    // d_M + J^T d_E
};

DisturbanceSample disturbance_at(double t, const Exosystem& exo_M, const Exosystem& exo_E,
                                 const Mat2& J);

InternalModelState internal_model_derivative(const InternalModelSpec& spec_M,
                                             const InternalModelSpec& spec_E,
                                             const InternalModelState& chi, const Mat2& J,
                                             const Vec2& xi);

Vec2 compensator_output(const InternalModelSpec& spec_M, const InternalModelSpec& spec_E,
                        const InternalModelState& chi, const Mat2& J);

// Solves Sigma S = A Sigma, Gamma Sigma + G = 0 as one linear system in the
// entries of Sigma. Throws FrequencyNotModeled when it is inconsistent.
Eigen::MatrixXd solve_regulator(const Exosystem& exo, const InternalModelSpec& spec);

struct RegulatorResiduals {
  double intertwining = 0.0;  // max |Sigma S - A Sigma|
  double output = 0.0;        // max |Gamma Sigma + G|
};
RegulatorResiduals regulator_residuals(const Exosystem& exo, const InternalModelSpec& spec,
                                       const Eigen::MatrixXd& sigma);

struct LosslessnessPower {
  double storage_rate = 0.0;    // d/dt (1/2 |chi~|^2)
  double supplied_power = 0.0;  // -xi^T u~_d
};
LosslessnessPower losslessness_power(const InternalModelState& chi_tilde, const Mat2& J,
                                     const Vec2& xi, const InternalModelSpec& spec_M,
                                     const InternalModelSpec& spec_E);

}  // namespace armform

#endif  // ARMFORM_DISTURBANCE_HPP_
