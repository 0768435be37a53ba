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

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "papernet/mesh.hpp"

namespace papernet {

/// Relative tolerance for degenerate faces: area <= kAreaEpsilon * diag^2.
inline constexpr double kAreaEpsilon = 1e-12;
/// Angle deficits below this magnitude (radians) are treated as flat.
inline constexpr double kDeficitEpsilon = 1e-9;

struct ValidationReport {
  bool isManifold = false;
  bool isClosed = false;
  int componentCount = 0;
  bool selfIntersecting = false;
  std::vector<int> degenerateFaceIds;

  /// Entry condition of the unfolding pipeline.
  bool acceptable() const {
    return isManifold && isClosed && componentCount == 1 && !selfIntersecting &&
           degenerateFaceIds.empty();
  }
  std::string describe() const;
};

ValidationReport validate(const TriMesh& mesh);

/// Face pairs (i < j) whose closed triangles meet anywhere other than at
/// shared vertices and edges.
std::vector<std::pair<int, int>> selfIntersections(const TriMesh& mesh);

double areaEpsilon(const TriMesh& mesh);

// --- local vertex analysis -------------------------------------------------

enum class VertexClass { kFlat, kConvex, kConcave, kSaddle };

/// 2*pi minus the sum of interior angles incident to v.
double angleDeficit(const TriMesh& mesh, int v);
VertexClass classifyVertex(const TriMesh& mesh, int v);
const char* toString(VertexClass c);

/// Genus of a closed connected mesh from its Euler characteristic.
int genus(const TriMesh& mesh);

// --- local edits -------------------------------------------------------------

enum class EditIssue { kNone, kDegenerate, kFlipped, kNonManifold, kSelfIntersection };
const char* toString(EditIssue issue);

/// Checks the faces whose geometry or connectivity changed. `preEditNormals`
/// runs parallel to `affectedFaces`; a face is flipped when its new normal
/// points against the old one.
EditIssue checkLocalEdit(const TriMesh& mesh, std::span<const int> affectedFaces,
                         std::span<const Vec3> preEditNormals);

inline bool localEditIsSafe(const TriMesh& mesh, std::span<const int> affectedFaces,
                            std::span<const Vec3> preEditNormals) {
  return checkLocalEdit(mesh, affectedFaces, preEditNormals) == EditIssue::kNone;
}

}  // namespace papernet
