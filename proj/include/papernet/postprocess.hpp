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

#include <array>
#include <utility>
#include <vector>

#include "papernet/distance.hpp"
#include "papernet/state.hpp"

namespace papernet {

struct PostConfig {
  bool enabled = true;
  int distanceSteps = 50;
  int rounds = 10;
  int overlapSteps = 20;
  int couplingSteps = 20;
  double step = 0.01;
  /// Largest relative edge-length error between a candidate mesh and its
  /// unfolding for the pair to count as a valid result.
  double isometryTolerance = 1e-4;
  int metricSamplesPerFace = 16;
};

/// Mesh vertices v and layout vertices u as independent variables, over a
/// fixed mesh topology and vertex-image structure.
struct DecoupledState {
  TriMesh mesh;                              ///< positions are v
  UnfoldTree tree;
  std::vector<int> faces;                    ///< placed faces
  std::vector<std::array<int, 3>> images;    ///< per placed face: image id of each corner
  std::vector<Vec2> u;                       ///< per vertex image
  std::vector<char> pinned;                  ///< per vertex slot

  std::array<Vec2, 3> layoutTriangle(std::size_t i) const {
    return {u[images[i][0]], u[images[i][1]], u[images[i][2]]};
  }
};

DecoupledState makeDecoupledState(const UnfoldState& state);

// --- distance ---------------------------------------------------------------

/// Frozen projections of the distance energy: p_i on the reference for
/// every mesh vertex, and for every reference vertex w_j the face and
/// barycentric weights of its projection on the current mesh.
struct DistanceLinearization {
  struct Sample {
    Vec3 point = Vec3::Zero();
    int face = -1;
    Vec3 bary = Vec3::Zero();
  };
  std::vector<Vec3> projections;  ///< per vertex slot
  std::vector<Sample> samples;
};

DistanceLinearization linearizeDistance(const TriMesh& mesh, const TriMesh& reference,
                                        const SurfaceLocator& referenceLocator);

/// 1/2 sum |v_i - p_i|^2 + sum |w_j - B_j v|^2 with gradient per vertex slot.
double energyDistance(const TriMesh& mesh, const std::vector<Vec3>& v, const DistanceLinearization& lin,
                      std::vector<Vec3>* gradient = nullptr);

// --- overlap ----------------------------------------------------------------

/// Collision targets of the planar variables: (image id, target point) for
/// every penetrating corner of every overlapping pair of layout triangles.
std::vector<std::pair<int, Vec2>> overlapTargets(const DecoupledState& state);

/// Per placed face: edge-matrix inverse and area of the reference layout.
struct PlanarReference {
  std::vector<Matrix2<double>> dmInverse;
  std::vector<double> area;
};
PlanarReference planarReference(const DecoupledState& state);

/// E_1 + E_2 over the planar variables u.
double energyOverlap(const DecoupledState& state, const std::vector<Vec2>& u,
                     const std::vector<std::pair<int, Vec2>>& targets, const PlanarReference& reference,
                     std::vector<Vec2>* gradient = nullptr);

// --- coupling ---------------------------------------------------------------

/// Strain between each layout triangle and its mesh triangle.
double energyCoupling(const DecoupledState& state, const std::vector<Vec3>& v, const std::vector<Vec2>& u,
                      std::vector<Vec3>* gradientV = nullptr, std::vector<Vec2>* gradientU = nullptr);

// --- driver -----------------------------------------------------------------

struct PostResult {
  TriMesh mesh;
  Layout layout;
  bool changed = false;        ///< false when the input was returned
  double chamferBefore = 0.0;
  double chamferAfter = 0.0;
  int checkpoints = 0;
  int validCheckpoints = 0;
};

/// Relative edge-length error between a mesh and its layout.
double isometryError(const TriMesh& mesh, const Layout& layout);

/// Gradient descent on the scheduled energies. Checkpoints (after every
/// distance step and after each overlap or coupling phase) are unfolded
/// rigidly with the
/// state's tree; the closest valid one to `reference` wins if it beats the
/// input, otherwise the input is returned unchanged.
PostResult postProcess(const TriMesh& reference, const UnfoldState& state, const PostConfig& config);

}  // namespace papernet
