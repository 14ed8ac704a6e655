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

#include "armform/disturbance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "armform/errors.hpp"

namespace armform {

namespace {

int block_size(double w) { return w == 0.0 ? 1 : 2; }

Eigen::MatrixXd rotation_generator(const std::vector<double>& freqs) {
  int n = 0;
  for (double w : freqs) n += block_size(w);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  int at = 0;
  for (double w : freqs) {
    if (w != 0.0) {
      s(at, at + 1) = w;
      s(at + 1, at) = -w;
    }
    at += block_size(w);
  }
  return s;
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

Exosystem::Exosystem(std::vector<double> block_frequencies, Eigen::MatrixXd G,
                     Eigen::VectorXd v0)
    : freqs_(std::move(block_frequencies)),
      S_(rotation_generator(freqs_)),
      G_(std::move(G)),
      v0_(std::move(v0)) {
  for (double w : freqs_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvariantViolation("exosystem frequency >= 0");
    }
  }
  if (G_.rows() != kChannels || G_.cols() != S_.rows() || v0_.size() != S_.rows()) {
    throw DimensionMismatch("exosystem S, G, v0 dimensions are inconsistent");
  }
}

Exosystem Exosystem::from_terms(const std::vector<SinusoidTerm>& terms) {
  std::vector<double> freqs;
  int n = 0;
  for (const SinusoidTerm& t : terms) {
    if (t.channel < 0 || t.channel >= kChannels) {
      throw InvariantViolation("disturbance channel is 1 or 2");
    }
    if (t.frequency == 0.0 && t.phase != 0.0) {
      throw InvariantViolation("step disturbance has zero phase");
    }
    freqs.push_back(t.frequency);
    n += block_size(t.frequency);
  }
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(kChannels, n);
  Eigen::VectorXd v0 = Eigen::VectorXd::Zero(n);
  int at = 0;
  for (const SinusoidTerm& t : terms) {
    g(t.channel, at) = 1.0;
    if (t.frequency == 0.0) {
      v0(at) = t.amplitude;
    } else {
      v0(at) = t.amplitude * std::sin(t.phase);
      v0(at + 1) = t.amplitude * std::cos(t.phase);
    }
    at += block_size(t.frequency);
  }
  return Exosystem(std::move(freqs), std::move(g), std::move(v0));
}

Eigen::VectorXd Exosystem::state_at(double t) const {
  Eigen::VectorXd v(v0_.size());
  int at = 0;
  for (double w : freqs_) {
    if (w == 0.0) {
      v(at) = v0_(at);
    } else {
      const double c = std::cos(w * t);
      const double s = std::sin(w * t);
      v(at) = c * v0_(at) + s * v0_(at + 1);
      v(at + 1) = -s * v0_(at) + c * v0_(at + 1);
    }
    at += block_size(w);
  }
  return v;
}

InternalModelSpec InternalModelSpec::from_modes(const std::vector<ModelMode>& modes) {
  std::vector<double> freqs;
  for (const ModelMode& m : modes) {
    if (m.channel < 0 || m.channel >= Exosystem::kChannels) {
      throw InvariantViolation("internal model channel is 1 or 2");
    }
    if (!(m.frequency >= 0.0) || !std::isfinite(m.frequency)) {
      throw InvariantViolation("internal model frequency >= 0");
    }
    freqs.push_back(m.frequency);
  }
  InternalModelSpec spec;
  spec.A = rotation_generator(freqs);
  spec.Gamma = Eigen::MatrixXd::Zero(Exosystem::kChannels, spec.A.rows());
  int at = 0;
  for (const ModelMode& m : modes) {
    spec.Gamma(m.channel, at) = 1.0;
    at += block_size(m.frequency);
  }
  return spec;
}

void InternalModelSpec::check_dimensions(const char* name) const {
  if (A.rows() != A.cols()) {
    throw DimensionMismatch(std::string("A_") + name + " is not square");
  }
  if (Gamma.rows() != Exosystem::kChannels || Gamma.cols() != A.rows()) {
    throw DimensionMismatch(std::string("Gamma_") + name + " must be 2 x " +
                            std::to_string(A.rows()));
  }
}

double skew_residual(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(A + A.transpose());
}

bool is_observable(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Gamma) {
  const Eigen::Index l = A.rows();
  if (l == 0) return true;
  const Eigen::Index p = Gamma.rows();
  Eigen::MatrixXd obs(p * l, l);
  Eigen::MatrixXd block = Gamma;
  for (Eigen::Index k = 0; k < l; ++k) {
    obs.middleRows(k * p, p) = block;
    block = block * A;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(obs);
  lu.setThreshold(1e-10);
  return lu.rank() == l;
}

DisturbanceSample disturbance_at(double t, const Exosystem& exo_M, const Exosystem& exo_E,
                                 const Mat2& J) {
  DisturbanceSample s;
  s.d_M = exo_M.output_at(t);
  s.d_E = exo_E.output_at(t);
  s.d = s.d_M + J.transpose() * s.d_E;
  return s;
}

InternalModelState internal_model_derivative(const InternalModelSpec& spec_M,
                                             const InternalModelSpec& spec_E,
                                             const InternalModelState& chi, const Mat2& J,
                                             const Vec2& xi) {
  InternalModelState rate;
  rate.eta = spec_M.A * chi.eta - spec_M.Gamma.transpose() * xi;
  rate.zeta = spec_E.A * chi.zeta - spec_E.Gamma.transpose() * (J * xi);
  return rate;
}

Vec2 compensator_output(const InternalModelSpec& spec_M, const InternalModelSpec& spec_E,
                        const InternalModelState& chi, const Mat2& J) {
  return spec_M.Gamma * chi.eta + J.transpose() * (spec_E.Gamma * chi.zeta);
}

Eigen::MatrixXd solve_regulator(const Exosystem& exo, const InternalModelSpec& spec) {
  const Eigen::Index l = spec.A.rows();
  const Eigen::Index s = exo.dim();
  const Eigen::Index n = exo.G().rows();
  if (spec.Gamma.rows() != n || spec.Gamma.cols() != l) {
    throw DimensionMismatch("internal model output map does not match the exosystem");
  }
  if (s == 0) return Eigen::MatrixXd::Zero(l, 0);
  if (l == 0) {
    throw FrequencyNotModeled("internal model is empty but the exosystem has " +
                              std::to_string(s) + " states");
  }

  // Column-major vec: vec(Sigma S) = (S^T kron I_l) vec(Sigma),
  // vec(A Sigma) = (I_s kron A) vec(Sigma), vec(Gamma Sigma) = (I_s kron Gamma) vec(Sigma).
  const Eigen::Index unknowns = l * s;
  Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(unknowns + n * s, unknowns);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns + n * s);
  const Eigen::MatrixXd& S = exo.S();
  for (Eigen::Index j = 0; j < s; ++j) {
    for (Eigen::Index c = 0; c < s; ++c) {
      // Block (j, c) of S^T kron I_l is S(c, j) I_l.
      if (S(c, j) != 0.0) {
        lhs.block(j * l, c * l, l, l).diagonal().array() += S(c, j);
      }
    }
    lhs.block(j * l, j * l, l, l) -= spec.A;
    lhs.block(unknowns + j * n, j * l, n, l) = spec.Gamma;
    rhs.segment(unknowns + j * n, n) = -exo.G().col(j);
  }

  const Eigen::VectorXd x = lhs.completeOrthogonalDecomposition().solve(rhs);
  Eigen::MatrixXd sigma = Eigen::Map<const Eigen::MatrixXd>(x.data(), l, s);

  const RegulatorResiduals r = regulator_residuals(exo, spec, sigma);
  const double scale = std::max(1.0, max_abs(exo.G()));
  if (!(r.intertwining <= 1e-10 * scale) || !(r.output <= 1e-10 * scale)) {
    throw FrequencyNotModeled("regulator equations are inconsistent (residual " +
                              std::to_string(std::max(r.intertwining, r.output)) + ")");
  }
  return sigma;
}

RegulatorResiduals regulator_residuals(const Exosystem& exo, const InternalModelSpec& spec,
                                       const Eigen::MatrixXd& sigma) {
  RegulatorResiduals r;
  r.intertwining = max_abs(sigma * exo.S() - spec.A * sigma);
  r.output = max_abs(spec.Gamma * sigma + exo.G());
  return r;
}

LosslessnessPower losslessness_power(const InternalModelState& chi_tilde, const Mat2& J,
                                     const Vec2& xi, const InternalModelSpec& spec_M,
                                     const InternalModelSpec& spec_E) {
  const InternalModelState rate = internal_model_derivative(spec_M, spec_E, chi_tilde, J, xi);
  const Vec2 u_tilde = compensator_output(spec_M, spec_E, chi_tilde, J);
  LosslessnessPower p;
  p.storage_rate = chi_tilde.eta.dot(rate.eta) + chi_tilde.zeta.dot(rate.zeta);
  p.supplied_power = -xi.dot(u_tilde);
  return p;
}

}  // namespace armform
