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

#include "papernet/state.hpp"

namespace papernet {

struct FlowConfig {
  double wc = 1.0;
  double ws = 10.0;
  double step = 0.01;
  int iterations = 100;
};

struct GeomConfig {
  bool enabled = true;
  bool vertexInTriangle = true;
  bool flattenVertices = true;
  bool surfaceFlow = true;
  FlowConfig flow;
};

// --- vertex image inside a face ---------------------------------------------

/// A vertex image (index into Layout::images) lying strictly inside the
/// layout triangle of a face that does not contain the vertex.
struct ImageInFace {
  int image = -1;
  int face = -1;
  auto operator<=>(const ImageInFace&) const = default;
};

std::vector<ImageInFace> findImagesInFaces(const TriMesh& mesh, const Layout& layout, const OverlapSet& overlaps);

/// Offset used to place a vertex image just outside a face.
double exitEpsilon(const TriMesh& mesh, int face);

/// Moves the image's vertex so that the image leaves the face. Kept only
/// when the overlap count drops, no new pair appears and the edit is safe;
/// otherwise the state is restored exactly.
bool resolveVertexInTriangle(UnfoldState& state, const ImageInFace& target);

// --- non-saddle vertex flattening -------------------------------------------

/// Vertices shared by the two faces with positive angle deficit, largest
/// deficit first.
std::vector<int> flattenCandidates(const TriMesh& mesh, int faceA, int faceB);

/// Unit direction that reduces the angle deficit at v: against the vertex
/// normal at a convex vertex, along it at a concave one.
Vec3 flattenDirection(const TriMesh& mesh, int v);
double maxFlatten(const TriMesh& mesh, int v);

/// Pushes v along flattenDirection by the smallest magnitude (doubling then
/// bisection) that separates the pair without creating new overlaps.
bool flattenNonSaddleVertex(UnfoldState& state, std::pair<int, int> pair, int v);

// --- surface flow -----------------------------------------------------------

/// Pairs whose faces overlap only each other.
std::vector<std::pair<int, int>> isolatedPairs(const OverlapSet& overlaps);

/// Gap left between separated triangles, relative to their mean edge length.
inline constexpr double kFlowMargin = 0.05;

/// Planar targets that separate two overlapping triangles across the axis of
/// least penetration; entry k of each side is the target of corner k.
std::array<std::array<Vec2, 3>, 2> separationTargets(const std::array<Vec2, 3>& a, const std::array<Vec2, 3>& b,
                                                     double margin);

/// Fixed data of one flow run: lifted collision targets and the layout
/// triangles used as the strain reference.
struct FlowProblem {
  struct Target {
    int vertex = -1;
    Vec3 point = Vec3::Zero();
  };
  std::vector<Target> targets;
  std::vector<int> faces;
  std::vector<Matrix2<double>> dmInverse;
  std::vector<double> referenceArea;
  double wc = 1.0;
  double ws = 10.0;
};

FlowProblem makeFlowProblem(const TriMesh& mesh, const Layout& layout, const std::vector<std::pair<int, int>>& pairs,
                            const FlowConfig& config);

/// Collision part, strain part and the total weighted energy.
struct FlowEnergy {
  double collision = 0.0;
  double strain = 0.0;
  double total = 0.0;
};

/// Evaluates the flow energy at `positions` (indexed by vertex slot). When
/// `gradient` is given it is resized and filled with dE/dv per slot.
FlowEnergy flowEnergy(const FlowProblem& problem, const TriMesh& mesh, const std::vector<Vec3>& positions,
                      std::vector<Vec3>* gradient = nullptr);

struct FlowResult {
  bool accepted = false;
  int steps = 0;        ///< steps taken
  int rolledBack = 0;   ///< steps undone as unsafe
  std::vector<double> energy;  ///< total energy before each step and after the last
};

/// Gradient descent on the flow energy; pinned vertices stay fixed. The
/// result is kept when no new overlapping pair appears and the count does
/// not grow, else the mesh is restored.
FlowResult surfaceFlow(UnfoldState& state, const std::vector<std::pair<int, int>>& pairs, const FlowConfig& config);

// --- stage ------------------------------------------------------------------

struct GeomStageResult {
  int before = 0;
  int after = 0;
  int vertexMoves = 0;
  int flattenings = 0;
  bool flowAccepted = false;
};

/// Vertex-in-face moves, then flattenings, then one flow run.
GeomStageResult geometricStage(UnfoldState& state, const GeomConfig& config);

}  // namespace papernet
