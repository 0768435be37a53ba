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

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "papernet/types.hpp"

namespace papernet {

/// Edge matrix of a reference triangle expressed in a 2D frame: planar
/// triangles are used as given, spatial ones in an orthonormal frame of
/// their plane with the first axis along b - a.
template <typename Scalar>
Matrix2<Scalar> referenceFrame(const Vector2<Scalar>& a, const Vector2<Scalar>& b, const Vector2<Scalar>& c) {
  Matrix2<Scalar> m;
  m.col(0) = b - a;
  m.col(1) = c - a;
  return m;
}

template <typename Scalar>
Matrix2<Scalar> referenceFrame(const Vector3<Scalar>& a, const Vector3<Scalar>& b, const Vector3<Scalar>& c) {
  const Vector3<Scalar> e1 = b - a;
  const Vector3<Scalar> e2 = c - a;
  const Scalar l1 = e1.norm();
  const Vector3<Scalar> x = e1 / l1;
  const Scalar along = e2.dot(x);
  const Scalar perp = (e2 - along * x).norm();
  Matrix2<Scalar> m;
  m << l1, along, Scalar(0), perp;
  return m;
}

/// Deformation gradient F = Ds * Dm^-1 from a reference edge matrix to a
/// current triangle (2D or 3D).
template <typename Scalar, int Dim>
Eigen::Matrix<Scalar, Dim, 2> deformationGradient(const Matrix2<Scalar>& dmInverse,
                                                  const Eigen::Matrix<Scalar, Dim, 1>& a,
                                                  const Eigen::Matrix<Scalar, Dim, 1>& b,
                                                  const Eigen::Matrix<Scalar, Dim, 1>& c) {
  Eigen::Matrix<Scalar, Dim, 2> ds;
  ds.col(0) = b - a;
  ds.col(1) = c - a;
  return ds * dmInverse;
}

/// Green strain E = (F^T F - I) / 2.
template <typename Scalar, int Dim>
Matrix2<Scalar> greenStrain(const Eigen::Matrix<Scalar, Dim, 2>& f) {
  return Scalar(0.5) * (f.transpose() * f - Matrix2<Scalar>::Identity());
}

/// Constant Green strain between a reference triangle (2D or 3D) and a
/// current 3D triangle. Throws UnfoldError when the reference is degenerate.
template <typename Scalar, int RefDim>
Matrix2<Scalar> greenStrain(const std::array<Eigen::Matrix<Scalar, RefDim, 1>, 3>& reference,
                            const std::array<Vector3<Scalar>, 3>& current) {
  const Matrix2<Scalar> dm = referenceFrame<Scalar>(reference[0], reference[1], reference[2]);
  const Scalar det = dm.determinant();
  const Scalar scale = dm.col(0).squaredNorm() + dm.col(1).squaredNorm();
  if (!(std::abs(det) > Scalar(1e-14) * scale)) throw UnfoldError("degenerate reference triangle");
  return greenStrain<Scalar, 3>(
      deformationGradient<Scalar, 3>(dm.inverse(), current[0], current[1], current[2]));
}

/// Per-triangle strain energy W = A/2 * E:E and its gradient with respect
/// to the three current corner positions.
template <typename Scalar, int Dim>
struct StrainTerm {
  Scalar energy = Scalar(0);
  Eigen::Matrix<Scalar, Dim, 3> gradient = Eigen::Matrix<Scalar, Dim, 3>::Zero();
};

template <typename Scalar, int Dim>
StrainTerm<Scalar, Dim> strainEnergy(Scalar area, const Matrix2<Scalar>& dmInverse,
                                     const Eigen::Matrix<Scalar, Dim, 1>& a,
                                     const Eigen::Matrix<Scalar, Dim, 1>& b,
                                     const Eigen::Matrix<Scalar, Dim, 1>& c) {
  const Eigen::Matrix<Scalar, Dim, 2> f = deformationGradient<Scalar, Dim>(dmInverse, a, b, c);
  const Matrix2<Scalar> e = greenStrain<Scalar, Dim>(f);
  StrainTerm<Scalar, Dim> term;
  term.energy = Scalar(0.5) * area * (e.array() * e.array()).sum();
  // dW/dF = A F E; chain through Ds = F Dm.
  const Eigen::Matrix<Scalar, Dim, 2> h = area * f * e * dmInverse.transpose();
  term.gradient.col(1) = h.col(0);
  term.gradient.col(2) = h.col(1);
  term.gradient.col(0) = -h.col(0) - h.col(1);
  return term;
}

/// Strain energy W = A/2 * E:E between a free planar triangle (reference,
/// with A its area) and a free spatial triangle, with gradients for both.
template <typename Scalar>
struct CouplingTerm {
  Scalar energy = Scalar(0);
  Eigen::Matrix<Scalar, 2, 3> gradientPlanar = Eigen::Matrix<Scalar, 2, 3>::Zero();
  Eigen::Matrix<Scalar, 3, 3> gradientSpatial = Eigen::Matrix<Scalar, 3, 3>::Zero();
};

template <typename Scalar>
CouplingTerm<Scalar> couplingEnergy(const std::array<Vector2<Scalar>, 3>& u, const std::array<Vector3<Scalar>, 3>& v) {
  const Matrix2<Scalar> dm = referenceFrame<Scalar>(u[0], u[1], u[2]);
  const Scalar det = dm.determinant();
  if (!(std::abs(det) > Scalar(0))) throw UnfoldError("degenerate layout triangle");
  const Matrix2<Scalar> g = dm.inverse();
  const Scalar area = Scalar(0.5) * std::abs(det);
  const Eigen::Matrix<Scalar, 3, 2> f = deformationGradient<Scalar, 3>(g, v[0], v[1], v[2]);
  const Matrix2<Scalar> e = greenStrain<Scalar, 3>(f);
  const Scalar ee = (e.array() * e.array()).sum();
  CouplingTerm<Scalar> term;
  term.energy = Scalar(0.5) * area * ee;
  const Eigen::Matrix<Scalar, 3, 2> hs = area * f * e * g.transpose();
  term.gradientSpatial.col(1) = hs.col(0);
  term.gradientSpatial.col(2) = hs.col(1);
  term.gradientSpatial.col(0) = -hs.col(0) - hs.col(1);
  // Through Dm^-1 and through the area.
  const Matrix2<Scalar> hm =
      area * (Scalar(0.5) * ee * Matrix2<Scalar>::Identity() - f.transpose() * f * e) * g.transpose();
  term.gradientPlanar.col(1) = hm.col(0);
  term.gradientPlanar.col(2) = hm.col(1);
  term.gradientPlanar.col(0) = -hm.col(0) - hm.col(1);
  return term;
}

}  // namespace papernet
