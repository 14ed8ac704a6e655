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

// Two-link planar manipulator: Euler-Lagrange dynamics
//
//   H(q) q'' + C(q, q') q' + g(q) = u + d
//
// and end-effector kinematics x = h(q) + base. The inertia matrix uses the
// usual three-parameter form
//
//   a1 = Ic1 + Ic2 + m1 lc1^2 + m2 (l1^2 + lc2^2)
//   a2 = Ic2 + m2 lc2^2
//   a3 = m2 l1 lc2
//
// for which H' = C + C^T holds exactly.

#ifndef ARMFORM_MANIPULATOR_HPP_
#define ARMFORM_MANIPULATOR_HPP_

#include <Eigen/Dense>

namespace armform {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

struct ManipulatorParams {
  double m1 = 0.0;   // link masses (kg)
  double m2 = 0.0;
  double Ic1 = 0.0;  // link moments of inertia about the centre of mass (kg m^2)
  double Ic2 = 0.0;
  double l1 = 0.0;   // link lengths (m)
  double l2 = 0.0;
  double lc1 = 0.0;  // joint to centre-of-mass distances (m)
  double lc2 = 0.0;
  Vec2 base = Vec2::Zero();  // base position in the world frame (m)
  // Gravitational acceleration along world -y. Zero for arms moving in the
  // horizontal plane.
  double gravity = 0.0;

  // Throws InvariantViolation naming the first violated condition.
  void validate() const;

  double a1() const { return Ic1 + Ic2 + m1 * lc1 * lc1 + m2 * (l1 * l1 + lc2 * lc2); }
  double a2() const { return Ic2 + m2 * lc2 * lc2; }
  double a3() const { return m2 * l1 * lc2; }

  bool operator==(const ManipulatorParams& other) const;
};

// Link parameters of the square-formation experiment (both links 1.5 m).
ManipulatorParams reference_arm(const Vec2& base = Vec2::Zero());

struct JointState {
  Vec2 q = Vec2::Zero();
  Vec2 qdot = Vec2::Zero();

  bool operator==(const JointState& other) const = default;
};

Mat2 inertia_matrix(const ManipulatorParams& p, const Vec2& q);
Mat2 coriolis_matrix(const ManipulatorParams& p, const Vec2& q, const Vec2& qdot);
Vec2 gravity_vector(const ManipulatorParams& p, const Vec2& q);
Vec2 forward_kinematics(const ManipulatorParams& p, const Vec2& q);
Mat2 jacobian(const ManipulatorParams& p, const Vec2& q);

// |det J(q)| = l1 l2 |sin q2|.
double singularity_margin(const ManipulatorParams& p, const Vec2& q);

// Solves H(q) q'' = u + d - C(q, q') q' - g(q) with a direct 2x2 solve.
// Throws SingularInertia when H is not numerically positive definite.
Vec2 joint_acceleration(const ManipulatorParams& p, const JointState& s,
                        const Vec2& u, const Vec2& d);

}  // namespace armform

#endif  // ARMFORM_MANIPULATOR_HPP_
