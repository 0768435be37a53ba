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
#include <cstdint>
#include <utility>
#include <vector>

#include "papernet/mesh.hpp"

namespace papernet {

// --- dual graph --------------------------------------------------------------

/// One node per alive face, one link per alive interior edge.
struct DualGraph {
  struct Link {
    int faceA = -1;
    int faceB = -1;
    int edge = -1;
  };
  std::vector<int> nodes;  ///< face ids, ascending
  std::vector<Link> links; ///< ordered by edge id
};

DualGraph buildDualGraph(const TriMesh& mesh);

/// Number of spanning trees of the dual graph (matrix-tree theorem).
/// Returned as a double because the count overflows integers quickly.
double spanningTreeCount(const TriMesh& mesh);

// --- unfold trees ------------------------------------------------------------

/// Spanning tree of the dual graph, stored as a per-edge hinge flag.
/// Edges that are not hinges are cuts.
struct UnfoldTree {
  int rootFace = -1;
  std::vector<std::uint8_t> hinge;  ///< indexed by edge slot

  bool isHinge(int e) const { return hinge[e] != 0; }
  std::vector<int> hingeEdges(const TriMesh& mesh) const;
  std::vector<int> cutEdges(const TriMesh& mesh) const;
  bool operator==(const UnfoldTree&) const = default;
};

/// Builds a tree from a hinge set; the root is the face of maximal area
/// (lowest id on ties).
UnfoldTree makeTree(const TriMesh& mesh, std::vector<std::uint8_t> hinge);
int largestFace(const TriMesh& mesh);

struct TreeCheck {
  bool spanning = false;
  bool acyclic = false;
  int hingeCount = 0;
  bool ok() const { return spanning && acyclic; }
};
/// Checks that the hinges touch only alive interior edges, form no cycle
/// and connect every alive face.
TreeCheck checkTree(const TriMesh& mesh, const UnfoldTree& tree);

/// Parent relation of a tree rooted at tree.rootFace: for each face the
/// halfedge of that face lying on the hinge to its parent (-1 for the root
/// and unreachable faces), plus the breadth-first visiting order.
struct TreeTopology {
  std::vector<int> parentHalfedge;
  std::vector<int> order;
  int parentFace(const TriMesh& mesh, int f) const;
};
TreeTopology treeTopology(const TriMesh& mesh, const UnfoldTree& tree);

// --- layouts -----------------------------------------------------------------

struct VertexImage {
  int vertex = -1;
  Vec2 point = Vec2::Zero();
  std::vector<int> corners;  ///< halfedges whose start corner maps here
};

/// Planar unfolding: one rigidly placed copy of every reachable face.
/// corners[f][i] is the image of corner i (start of halfedge 3f+i).
struct Layout {
  std::vector<std::array<Vec2, 3>> corners;
  std::vector<std::uint8_t> placed;
  TreeTopology topology;
  std::vector<int> cornerImage;  ///< per halfedge slot, -1 if unplaced
  std::vector<VertexImage> images;

  bool isPlaced(int f) const { return placed[f] != 0; }
  int placedCount() const;
  double area() const;
};

/// Rigid map R_k of a face: x -> rotation * (x - origin) + translation with
/// rotation a 2x3 matrix with orthonormal rows.
struct FaceTransform {
  Eigen::Matrix<double, 2, 3> rotation;
  Vec3 origin;
  Vec2 translation;
  Vec2 apply(const Vec3& x) const { return rotation * (x - origin) + translation; }
};
FaceTransform faceTransform(const TriMesh& mesh, const Layout& layout, int f);

/// Linear part of the map from the plane back onto face f: a planar
/// displacement d of a point in face f corresponds to lift * d in 3D.
Eigen::Matrix<double, 3, 2> liftMatrix(const TriMesh& mesh, const Layout& layout, int f);

/// Corners of the face of halfedge h unfolded across h, given the corners
/// of the face on the other side.
std::array<Vec2, 3> placeAcross(const TriMesh& mesh, const std::array<Vec2, 3>& parentCorners, int h);

/// Places the root face with its longest edge on +x starting at the origin
/// and unfolds children across their hinges. Faces not reachable through
/// hinges stay unplaced. Throws UnfoldError on a zero-length hinge.
Layout unfold(const TriMesh& mesh, const UnfoldTree& tree);
/// Unfolds only the component containing `root`, ignoring tree.rootFace.
Layout unfoldFrom(const TriMesh& mesh, const UnfoldTree& tree, int root);

// --- overlaps ----------------------------------------------------------------

struct OverlapSet {
  std::vector<std::pair<int, int>> pairs;  ///< (a, b) with a < b, sorted
  std::vector<int> perFaceCount;           ///< indexed by face slot
  std::vector<int> perEdgeCount;           ///< indexed by edge slot

  bool empty() const { return pairs.empty(); }
  int count() const { return static_cast<int>(pairs.size()); }
  /// Faces overlapping f, ascending.
  std::vector<int> partners(int f) const;
};

/// Face pairs whose planar images overlap (shared interior points), using a
/// uniform grid broad phase and exact narrow phase.
std::vector<std::pair<int, int>> overlappingPairs(const Layout& layout);

OverlapSet countOverlaps(const TriMesh& mesh, const Layout& layout);
OverlapSet makeOverlapSet(const TriMesh& mesh, std::vector<std::pair<int, int>> pairs);

/// Layout + overlap count in one call; the objective evaluated by every
/// search in the pipeline.
int overlapCount(const TriMesh& mesh, const UnfoldTree& tree);

// --- exhaustive search -------------------------------------------------------

struct EnumeratedUnfolding {
  UnfoldTree tree;
  int overlapCount = 0;
};

/// All spanning trees with their overlap counts. Throws std::length_error
/// when the matrix-tree count exceeds maxTrees.
std::vector<EnumeratedUnfolding> enumerateAllUnfoldings(const TriMesh& mesh, int maxTrees);

// --- tree maintenance under collapse ----------------------------------------

/// Repairs a spanning tree after `record` was applied to `mesh`: surviving
/// hinges are kept, then links around the new vertex are added greedily
/// when they do not close a cycle.
UnfoldTree applyCollapseToTree(const TriMesh& mesh, const UnfoldTree& tree, const CollapseRecord& record);

}  // namespace papernet
