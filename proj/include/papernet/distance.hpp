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

#include <vector>

#include "papernet/aabb_tree.hpp"
#include "papernet/mesh.hpp"

namespace papernet {

struct SurfacePoint {
  int face = -1;
  Vec3 point = Vec3::Zero();
  Vec3 bary = Vec3::Zero();  ///< weights of the face's corners 0, 1, 2
  double distance = 0.0;
};

/// Exact closest-point queries against a snapshot of a mesh surface.
class SurfaceLocator {
 public:
  explicit SurfaceLocator(const TriMesh& mesh);
  SurfacePoint closest(const Vec3& p) const;

 private:
  std::vector<std::array<Vec3, 3>> triangles_;
  std::vector<int> faceIds_;
  AabbTree<3> tree_;
};

/// All alive vertices followed by m*m stratified interior points per face
/// (centroids of the m x m subdivision, m = max(1, round(sqrt(samplesPerFace)))).
std::vector<Vec3> surfaceSamples(const TriMesh& mesh, int samplesPerFace);

/// Symmetric Hausdorff estimate over surfaceSamples of each side.
double hausdorffDistance(const TriMesh& a, const TriMesh& b, int samplesPerFace = 16);

/// 0.5 * (mean_{p in S(a)} d(p, b) + mean_{q in S(b)} d(q, a)).
double chamferDistance(const TriMesh& a, const TriMesh& b, int samplesPerFace = 16);

}  // namespace papernet
