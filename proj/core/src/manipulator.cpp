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

#include "armform/manipulator.hpp"

#include <cmath>

#include "armform/errors.hpp"

namespace armform {

namespace {

constexpr double kSingularInertiaThreshold = 1e-12;

}  // namespace

void ManipulatorParams::validate() const {
  auto require = [](bool ok, const char* which) {
    if (!ok) throw InvariantViolation(which);
  };
  require(m1 > 0.0, "m1 > 0");
  require(m2 > 0.0, "m2 > 0");
  require(Ic1 > 0.0, "Ic1 > 0");
  require(Ic2 > 0.0, "Ic2 > 0");
  require(l1 > 0.0, "l1 > 0");
  require(l2 > 0.0, "l2 > 0");
  require(lc1 > 0.0, "lc1 > 0");
  require(lc2 > 0.0, "lc2 > 0");
  require(lc1 <= l1, "lc1 <= l1");
  require(lc2 <= l2, "lc2 <= l2");
  require(base.allFinite(), "base finite");
  require(std::isfinite(gravity), "gravity finite");
}

bool ManipulatorParams::operator==(const ManipulatorParams& o) const {
  return m1 == o.m1 && m2 == o.m2 && Ic1 == o.Ic1 && Ic2 == o.Ic2 &&
         l1 == o.l1 && l2 == o.l2 && lc1 == o.lc1 && lc2 == o.lc2 &&
         base == o.base && gravity == o.gravity;
}

ManipulatorParams reference_arm(const Vec2& base) {
  ManipulatorParams p;
  p.m1 = 1.2;
  p.m2 = 1.0;
  p.Ic1 = 0.2250;
  p.Ic2 = 0.1875;
  p.l1 = 1.5;
  p.l2 = 1.5;
  p.lc1 = 0.75;
  p.lc2 = 0.75;
  p.base = base;
  return p;
}

Mat2 inertia_matrix(const ManipulatorParams& p, const Vec2& q) {
  const double a1 = p.a1();
  const double a2 = p.a2();
  const double a3c = p.a3() * std::cos(q(1));
  Mat2 h;
  h << a1 + 2.0 * a3c, a2 + a3c,
       a2 + a3c, a2;
  return h;
}

Mat2 coriolis_matrix(const ManipulatorParams& p, const Vec2& q, const Vec2& qdot) {
  const double hs = p.a3() * std::sin(q(1));
  Mat2 c;
  c << -hs * qdot(1), -hs * (qdot(0) + qdot(1)),
       hs * qdot(0), 0.0;
  return c;
}

Vec2 gravity_vector(const ManipulatorParams& p, const Vec2& q) {
  if (p.gravity == 0.0) return Vec2::Zero();
  const double c12 = std::cos(q(0) + q(1));
  const double second = p.m2 * p.lc2 * p.gravity * c12;
  return Vec2((p.m1 * p.lc1 + p.m2 * p.l1) * p.gravity * std::cos(q(0)) + second,
              second);
}

Vec2 forward_kinematics(const ManipulatorParams& p, const Vec2& q) {
  const double q12 = q(0) + q(1);
  return Vec2(p.l1 * std::cos(q(0)) + p.l2 * std::cos(q12),
              p.l1 * std::sin(q(0)) + p.l2 * std::sin(q12)) +
         p.base;
}

Mat2 jacobian(const ManipulatorParams& p, const Vec2& q) {
  const double q12 = q(0) + q(1);
  const double s12 = p.l2 * std::sin(q12);
  const double c12 = p.l2 * std::cos(q12);
  Mat2 j;
  j << -p.l1 * std::sin(q(0)) - s12, -s12,
       p.l1 * std::cos(q(0)) + c12, c12;
  return j;
}

double singularity_margin(const ManipulatorParams& p, const Vec2& q) {
  return std::abs(jacobian(p, q).determinant());
}

Vec2 joint_acceleration(const ManipulatorParams& p, const JointState& s,
                        const Vec2& u, const Vec2& d) {
  const Mat2 h = inertia_matrix(p, s.q);
  const Vec2 rhs = u + d - coriolis_matrix(p, s.q, s.qdot) * s.qdot - gravity_vector(p, s.q);
  const double det = h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0);
  if (!(h(0, 0) > 0.0) || !(det > kSingularInertiaThreshold)) {
    throw SingularInertia("inertia matrix is not positive definite (det = " +
                          std::to_string(det) + ")");
  }
  // Cramer's rule on the symmetric 2x2 system.
  return Vec2((h(1, 1) * rhs(0) - h(0, 1) * rhs(1)) / det,
              (h(0, 0) * rhs(1) - h(1, 0) * rhs(0)) / det);
}

}  // namespace armform
