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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "armform/engine.hpp"
#include "armform/errors.hpp"
#include "armform/manipulator.hpp"

namespace armform {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<SinusoidTerm> torque_terms() { return {{0, 1.0, 1.0, 0.0}, {1, 1.0, 1.0, 0.0}}; }
std::vector<SinusoidTerm> force_terms() {
  return {{0, 0.5, kPi / 2, 0.0}, {1, 0.5, kPi / 2, 0.0}};
}

InternalModelSpec block_model(double w) {
  InternalModelSpec spec;
  spec.A = Eigen::MatrixXd::Zero(4, 4);
  spec.A(0, 1) = w;
  spec.A(1, 0) = -w;
  spec.A(2, 3) = w;
  spec.A(3, 2) = -w;
  spec.Gamma = Eigen::MatrixXd::Zero(2, 4);
  spec.Gamma(0, 0) = 1.0;
  spec.Gamma(1, 2) = 1.0;
  return spec;
}

InternalModelSpec torque_model() { return block_model(1.0); }
InternalModelSpec force_model() { return block_model(kPi / 2); }

Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Eigen::VectorXd v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

TEST(ExosystemTest, TorqueDisturbanceAtQuarterPeriod) {
  const Exosystem exo = Exosystem::from_terms(torque_terms());
  const Eigen::Vector2d d = exo.output_at(kPi / 2);
  EXPECT_NEAR(d(0), 1.0, 1e-15);
  EXPECT_NEAR(d(1), 1.0, 1e-15);
}

TEST(ExosystemTest, ForceDisturbanceAtOneSecond) {
  const Exosystem exo = Exosystem::from_terms(force_terms());
  const Eigen::Vector2d d = exo.output_at(1.0);
  EXPECT_NEAR(d(0), 0.5, 1e-15);
  EXPECT_NEAR(d(1), 0.5, 1e-15);
}

TEST(ExosystemTest, ZeroAtStart) {
  const Mat2 j = jacobian(reference_arm(), Vec2(0.3, 1.0));
  const DisturbanceSample s = disturbance_at(0.0, Exosystem::from_terms(torque_terms()),
                                             Exosystem::from_terms(force_terms()), j);
  EXPECT_TRUE(s.d_M.isZero(0.0));
  EXPECT_TRUE(s.d_E.isZero(0.0));
  EXPECT_TRUE(s.d.isZero(0.0));
}

TEST(ExosystemTest, JointDisturbanceCombinesTorqueAndForce) {
  const Mat2 j = jacobian(reference_arm(), Vec2(0.3, 1.0));
  const Exosystem m = Exosystem::from_terms(torque_terms());
  const Exosystem e = Exosystem::from_terms(force_terms());
  for (double t : {0.1, 1.7, 12.3}) {
    const DisturbanceSample s = disturbance_at(t, m, e, j);
    EXPECT_NEAR(s.d_M(0), std::sin(t), 1e-14);
    EXPECT_NEAR(s.d_E(1), 0.5 * std::sin(kPi / 2 * t), 1e-14);
    EXPECT_TRUE(s.d.isApprox(s.d_M + j.transpose() * s.d_E, 1e-15));
  }
}

TEST(ExosystemTest, PhaseAndStepTerms) {
  const Exosystem exo = Exosystem::from_terms({{0, 2.0, 3.0, 0.4}, {1, -0.7, 0.0, 0.0}});
  EXPECT_EQ(exo.dim(), 3);
  EXPECT_EQ(skew_residual(exo.S()), 0.0);
  for (double t : {0.0, 0.5, 9.0}) {
    const Eigen::Vector2d d = exo.output_at(t);
    EXPECT_NEAR(d(0), 2.0 * std::sin(3.0 * t + 0.4), 1e-14);
    EXPECT_EQ(d(1), -0.7);
  }
}

TEST(ExosystemTest, ClosedFormMatchesIntegration) {
  const Exosystem exo = Exosystem::from_terms(
      {{0, 1.0, 1.0, 0.0}, {1, 1.0, 1.0, 0.0}, {0, 0.5, kPi / 2, 0.3}, {1, 0.2, 0.0, 0.0}});
  const auto f = [&](double, const Eigen::VectorXd& v) -> Eigen::VectorXd { return exo.S() * v; };
  Eigen::VectorXd v = exo.v0();
  constexpr double dt = 1e-3;
  for (int k = 0; k < 30000; ++k) v = rk4_step(f, k * dt, v, dt);
  EXPECT_LE((v - exo.state_at(30.0)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(ExosystemTest, RejectsBadChannel) {
  EXPECT_THROW(Exosystem::from_terms({{2, 1.0, 1.0, 0.0}}), InvariantViolation);
  EXPECT_THROW(Exosystem({1.0}, Eigen::MatrixXd::Zero(2, 3), Eigen::VectorXd::Zero(2)),
               DimensionMismatch);
}

TEST(InternalModelTest, BundledMatricesAreSkewAndObservable) {
  for (const InternalModelSpec& spec : {torque_model(), force_model()}) {
    EXPECT_EQ(skew_residual(spec.A), 0.0);
    EXPECT_TRUE(is_observable(spec.A, spec.Gamma));
  }
}

TEST(InternalModelTest, FromModesMatchesExplicitBlocks) {
  EXPECT_EQ(InternalModelSpec::from_modes({{0, 1.0}, {1, 1.0}}), torque_model());
}

TEST(InternalModelTest, UnobservablePairDetected) {
  InternalModelSpec spec = torque_model();
  spec.Gamma(1, 2) = 0.0;
  EXPECT_FALSE(is_observable(spec.A, spec.Gamma));
}

TEST(InternalModelTest, NonSkewResidual) {
  Eigen::MatrixXd a(2, 2);
  a << 0.0, 1.0, -0.5, 0.0;
  EXPECT_DOUBLE_EQ(skew_residual(a), 0.5);
}

TEST(InternalModelTest, DerivativeAtRestIsZero) {
  const InternalModelState chi{Eigen::VectorXd::Zero(4), Eigen::VectorXd::Zero(4)};
  const InternalModelState rate = internal_model_derivative(
      torque_model(), force_model(), chi, Mat2::Identity(), Vec2::Zero());
  EXPECT_TRUE(rate.eta.isZero(0.0));
  EXPECT_TRUE(rate.zeta.isZero(0.0));
}

TEST(InternalModelTest, DerivativeInjection) {
  const InternalModelState chi{Eigen::VectorXd::Zero(4), Eigen::VectorXd::Zero(4)};
  const InternalModelState rate = internal_model_derivative(
      torque_model(), force_model(), chi, Mat2::Identity(), Vec2(1.0, 0.0));
  Eigen::Vector4d expected(-1.0, 0.0, 0.0, 0.0);
  EXPECT_EQ(rate.eta, Eigen::VectorXd(expected));
  EXPECT_EQ(rate.zeta, Eigen::VectorXd(expected));
}

TEST(InternalModelTest, NormConservedWithoutInput) {
  const InternalModelSpec m = torque_model();
  const InternalModelSpec e = force_model();
  std::mt19937_64 rng(23);
  Eigen::VectorXd y = random_vector(rng, 8);
  const double n0 = y.norm();
  const auto f = [&](double, const Eigen::VectorXd& s) -> Eigen::VectorXd {
    const InternalModelState rate = internal_model_derivative(
        m, e, {s.head(4), s.tail(4)}, Mat2::Identity(), Vec2::Zero());
    Eigen::VectorXd out(8);
    out << rate.eta, rate.zeta;
    return out;
  };
  constexpr double dt = 1e-3;
  for (int k = 0; k < 30000; ++k) y = rk4_step(f, k * dt, y, dt);
  EXPECT_NEAR(y.norm(), n0, 1e-8);
}

TEST(CompensatorTest, ZeroStateGivesZeroOutput) {
  const InternalModelState chi{Eigen::VectorXd::Zero(4), Eigen::VectorXd::Zero(4)};
  EXPECT_TRUE(compensator_output(torque_model(), force_model(), chi, Mat2::Identity()).isZero(0.0));
}

TEST(CompensatorTest, TorqueBlockSelection) {
  InternalModelState chi{Eigen::VectorXd::Zero(4), Eigen::VectorXd::Zero(4)};
  chi.eta(0) = 1.0;
  const Vec2 u = compensator_output(torque_model(), force_model(), chi,
                                    jacobian(reference_arm(), Vec2(0.2, 0.9)));
  EXPECT_EQ(u, Vec2(1.0, 0.0));
}

TEST(CompensatorTest, RegulatorStateCancelsDisturbance) {
  const Exosystem m = Exosystem::from_terms(torque_terms());
  const Exosystem e = Exosystem::from_terms(force_terms());
  const Eigen::MatrixXd sigma_m = solve_regulator(m, torque_model());
  const Eigen::MatrixXd sigma_e = solve_regulator(e, force_model());
  std::mt19937_64 rng(29);
  for (int s = 0; s < 100; ++s) {
    const double t = std::uniform_real_distribution<double>(0.0, 30.0)(rng);
    const Mat2 j = jacobian(reference_arm(), random_vector(rng, 2));
    const InternalModelState chi{sigma_m * m.state_at(t), sigma_e * e.state_at(t)};
    const Vec2 u_d = compensator_output(torque_model(), force_model(), chi, j);
    EXPECT_LE((u_d + disturbance_at(t, m, e, j).d).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(RegulatorTest, IdentityIntertwining) {
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(2, 2);
  gamma(0, 0) = 1.0;
  const Exosystem exo({1.0}, -gamma, Eigen::Vector2d(0.0, 1.0));
  InternalModelSpec spec;
  spec.A = exo.S();
  spec.Gamma = gamma;
  EXPECT_LE((solve_regulator(exo, spec) - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff(),
            1e-12);
}

TEST(RegulatorTest, BundledPairsResiduals) {
  const std::pair<Exosystem, InternalModelSpec> pairs[] = {
      {Exosystem::from_terms(torque_terms()), torque_model()},
      {Exosystem::from_terms(force_terms()), force_model()}};
  for (const auto& [exo, spec] : pairs) {
    const RegulatorResiduals r = regulator_residuals(exo, spec, solve_regulator(exo, spec));
    EXPECT_LE(r.intertwining, 1e-10);
    EXPECT_LE(r.output, 1e-10);
  }
}

TEST(RegulatorTest, PhaseAndStepTermsAreSolvable) {
  const Exosystem exo =
      Exosystem::from_terms({{0, 1.5, 2.0, 0.7}, {1, 0.3, 0.0, 0.0}, {1, 0.2, 2.0, -1.0}});
  const InternalModelSpec spec = InternalModelSpec::from_modes({{0, 2.0}, {1, 0.0}, {1, 2.0}});
  const RegulatorResiduals r = regulator_residuals(exo, spec, solve_regulator(exo, spec));
  EXPECT_LE(r.intertwining, 1e-10);
  EXPECT_LE(r.output, 1e-10);
}

TEST(RegulatorTest, MissingFrequencyIsReported) {
  const Exosystem exo = Exosystem::from_terms(torque_terms());
  try {
    solve_regulator(exo, force_model());
    FAIL() << "expected FrequencyNotModeled";
  } catch (const FrequencyNotModeled& e) {
    EXPECT_NE(std::string(e.what()).find("frequency not modeled"), std::string::npos);
  }
  EXPECT_THROW(solve_regulator(exo, InternalModelSpec{}), FrequencyNotModeled);
}

TEST(RegulatorTest, EmptyExosystemNeedsNothing) {
  EXPECT_EQ(solve_regulator(Exosystem(), torque_model()).cols(), 0);
}

TEST(LosslessnessTest, ZeroInputOrZeroState) {
  std::mt19937_64 rng(31);
  const Mat2 j = jacobian(reference_arm(), Vec2(0.4, 1.2));
  const InternalModelState chi{random_vector(rng, 4), random_vector(rng, 4)};
  LosslessnessPower p = losslessness_power(chi, j, Vec2::Zero(), torque_model(), force_model());
  EXPECT_NEAR(p.storage_rate, 0.0, 1e-15);
  EXPECT_EQ(p.supplied_power, 0.0);
  const InternalModelState zero{Eigen::VectorXd::Zero(4), Eigen::VectorXd::Zero(4)};
  p = losslessness_power(zero, j, Vec2(0.3, -1.0), torque_model(), force_model());
  EXPECT_EQ(p.storage_rate, 0.0);
  EXPECT_EQ(p.supplied_power, 0.0);
}

TEST(LosslessnessTest, StorageRateEqualsSuppliedPower) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int s = 0; s < 1000; ++s) {
    const Mat2 j = jacobian(reference_arm(), Vec2(angle(rng), angle(rng)));
    const InternalModelState chi{random_vector(rng, 4), random_vector(rng, 4)};
    const Vec2 xi = random_vector(rng, 2);
    const LosslessnessPower p = losslessness_power(chi, j, xi, torque_model(), force_model());
    EXPECT_LE(std::abs(p.storage_rate - p.supplied_power), 1e-10);
  }
}

}  // namespace
}  // namespace armform
