// Copyright 2026 The Papernet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Geometry>

#include "papernet/types.hpp"

namespace papernet {

template <typename Scalar>
Scalar triangleArea(const Vector3<Scalar>& a, const Vector3<Scalar>& b, const Vector3<Scalar>& c) {
  return Scalar(0.5) * (b - a).cross(c - a).norm();
}

/// Signed area, positive for counter-clockwise triangles.
template <typename Scalar>
Scalar triangleArea(const Vector2<Scalar>& a, const Vector2<Scalar>& b, const Vector2<Scalar>& c) {
  const Vector2<Scalar> e1 = b - a;
  const Vector2<Scalar> e2 = c - a;
  return Scalar(0.5) * (e1.x() * e2.y() - e1.y() * e2.x());
}

template <typename Scalar>
Vector3<Scalar> triangleNormal(const Vector3<Scalar>& a, const Vector3<Scalar>& b,
                               const Vector3<Scalar>& c) {
  return (b - a).cross(c - a).normalized();
}

/// Interior angle at a in triangle (a, b, c).
template <typename Scalar>
Scalar cornerAngle(const Vector3<Scalar>& a, const Vector3<Scalar>& b, const Vector3<Scalar>& c) {
  const Vector3<Scalar> u = b - a;
  const Vector3<Scalar> v = c - a;
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

/// Closest point on triangle (a,b,c) to p with its barycentric weights.
template <typename Scalar>
Vector3<Scalar> closestPointOnTriangle(const Vector3<Scalar>& p, const Vector3<Scalar>& a,
                                       const Vector3<Scalar>& b, const Vector3<Scalar>& c,
                                       Vector3<Scalar>* bary = nullptr) {
  const Vector3<Scalar> ab = b - a;
  const Vector3<Scalar> ac = c - a;
  const Vector3<Scalar> ap = p - a;
  auto result = [&](Scalar u, Scalar v, Scalar w) {
    if (bary) *bary = Vector3<Scalar>(u, v, w);
    return Vector3<Scalar>(u * a + v * b + w * c);
  };
  const Scalar d1 = ab.dot(ap);
  const Scalar d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return result(1, 0, 0);
  const Vector3<Scalar> bp = p - b;
  const Scalar d3 = ab.dot(bp);
  const Scalar d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return result(0, 1, 0);
  const Scalar vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) {
    const Scalar v = d1 / (d1 - d3);
    return result(1 - v, v, 0);
  }
  const Vector3<Scalar> cp = p - c;
  const Scalar d5 = ab.dot(cp);
  const Scalar d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return result(0, 0, 1);
  const Scalar vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) {
    const Scalar w = d2 / (d2 - d6);
    return result(1 - w, 0, w);
  }
  const Scalar va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
    const Scalar w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return result(0, 1 - w, w);
  }
  const Scalar denom = Scalar(1) / (va + vb + vc);
  const Scalar v = vb * denom;
  const Scalar w = vc * denom;
  return result(1 - v - w, v, w);
}

/// Closest point to p on the closed segment [a, b].
template <typename Scalar, int Dim>
Eigen::Matrix<Scalar, Dim, 1> closestPointOnSegment(const Eigen::Matrix<Scalar, Dim, 1>& p,
                                                    const Eigen::Matrix<Scalar, Dim, 1>& a,
                                                    const Eigen::Matrix<Scalar, Dim, 1>& b) {
  const Eigen::Matrix<Scalar, Dim, 1> ab = b - a;
  const Scalar len2 = ab.squaredNorm();
  if (len2 <= Scalar(0)) return a;
  const Scalar t = std::clamp((p - a).dot(ab) / len2, Scalar(0), Scalar(1));
  return a + t * ab;
}

/// Edge-vector matrix [b - a, c - a] of a triangle.
template <typename Derived>
auto edgeMatrix(const Eigen::MatrixBase<Derived>& a, const Eigen::MatrixBase<Derived>& b,
                const Eigen::MatrixBase<Derived>& c) {
  using Scalar = typename Derived::Scalar;
  constexpr int Dim = Derived::RowsAtCompileTime;
  Eigen::Matrix<Scalar, Dim, 2> m;
  m.col(0) = b - a;
  m.col(1) = c - a;
  return m;
}

/// Axis-aligned box in Dim dimensions.
template <typename Scalar, int Dim>
using Box = Eigen::AlignedBox<Scalar, Dim>;
using Box2 = Box<double, 2>;
using Box3 = Box<double, 3>;

}  // namespace papernet
