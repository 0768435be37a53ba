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
#include <vector>

#include "papernet/geometry.hpp"
#include "papernet/types.hpp"

namespace papernet {

/// Everything an edge collapse touched, sufficient to restore the mesh.
/// Produced by TriMesh::collapse and consumed by TriMesh::revert.
struct CollapseRecord {
  enum class Field : std::uint8_t {
    kHalfStart,
    kHalfTwin,
    kHalfEdge,
    kEdgeHalf,
    kVertHalf,
    kFaceAlive,
    kVertAlive,
    kEdgeAlive,
  };
  struct Entry {
    Field field;
    int index;
    int oldValue;
  };

  int edge = -1;          ///< collapsed edge id
  int survivor = -1;      ///< vertex kept (v0)
  int removedVertex = -1; ///< vertex merged away (v1)
  std::array<int, 2> removedFaces{-1, -1};
  std::array<int, 2> wingVertices{-1, -1};  ///< opposite vertices a and b
  /// The two edges that survive next to the removed faces (v0-a, v0-b) and
  /// the edge each one absorbed (v1-a, v1-b).
  std::array<int, 2> mergedEdges{-1, -1};
  std::array<int, 2> absorbedEdges{-1, -1};
  /// Edges around the removed faces whose dual links existed before:
  /// the collapsed edge, both absorbed edges and both merged edges.
  std::array<int, 5> touchedLinks{-1, -1, -1, -1, -1};
  Vec3 oldSurvivorPosition = Vec3::Zero();
  Vec3 newPosition = Vec3::Zero();
  std::vector<Entry> undo;
};

/// Indexed triangle mesh with halfedge connectivity.
///
/// Face f owns halfedges 3f, 3f+1, 3f+2; halfedge 3f+i starts at corner i.
/// Edge and face ids are stable under collapse: removed elements are marked
/// dead instead of being erased, and compacted() produces a dense copy.
/// Inputs with boundary or non-manifold edges are representable (such
/// halfedges carry twin -1) so that validation can report them.
class TriMesh {
 public:
  TriMesh() = default;
  /// Throws MeshError on out-of-range indices or faces repeating a vertex.
  TriMesh(std::vector<Vec3> positions, const std::vector<Face>& faces);

  int vertexSlots() const { return static_cast<int>(positions_.size()); }
  int faceSlots() const { return static_cast<int>(faceAlive_.size()); }
  int edgeSlots() const { return static_cast<int>(edgeHalf_.size()); }
  int halfedgeSlots() const { return static_cast<int>(halfStart_.size()); }

  int numVertices() const { return numVertices_; }
  int numFaces() const { return numFaces_; }
  int numEdges() const { return numEdges_; }

  bool vertexAlive(int v) const { return vertAlive_[v] != 0; }
  bool faceAlive(int f) const { return faceAlive_[f] != 0; }
  bool edgeAlive(int e) const { return edgeAlive_[e] != 0; }

  const Vec3& position(int v) const { return positions_[v]; }
  void setPosition(int v, const Vec3& p) { positions_[v] = p; }
  const std::vector<Vec3>& positions() const { return positions_; }

  static int faceOf(int h) { return h / 3; }
  static int next(int h) { return h - h % 3 + (h % 3 + 1) % 3; }
  static int prev(int h) { return h - h % 3 + (h % 3 + 2) % 3; }
  int start(int h) const { return halfStart_[h]; }
  int end(int h) const { return halfStart_[next(h)]; }
  int twin(int h) const { return halfTwin_[h]; }
  int edgeOf(int h) const { return halfEdge_[h]; }
  int edgeHalfedge(int e) const { return edgeHalf_[e]; }
  /// Some outgoing halfedge of v, or -1 for isolated vertices.
  int vertexHalfedge(int v) const { return vertHalf_[v]; }

  Face face(int f) const { return {halfStart_[3 * f], halfStart_[3 * f + 1], halfStart_[3 * f + 2]}; }
  std::array<Vec3, 3> facePositions(int f) const;
  std::array<int, 2> edgeVertices(int e) const;
  /// Faces on both sides of e; the second is -1 on boundary edges.
  std::array<int, 2> edgeFaces(int e) const;
  double edgeLength(int e) const;
  double faceArea(int f) const;
  Vec3 faceNormal(int f) const;
  Vec3 vertexNormal(int v) const;

  /// Calls fn(h) for every outgoing halfedge around v. Requires a closed
  /// manifold neighbourhood.
  template <typename Fn>
  void forEachOutgoing(int v, Fn&& fn) const {
    const int first = vertHalf_[v];
    if (first < 0) return;
    int h = first;
    do {
      fn(h);
      const int t = halfTwin_[prev(h)];
      if (t < 0) return;
      h = t;
    } while (h != first);
  }
  std::vector<int> vertexFaces(int v) const;
  std::vector<int> vertexNeighbors(int v) const;
  int valence(int v) const;

  bool isClosedAndPaired() const { return unpairedHalfedges_ == 0; }
  int unpairedHalfedges() const { return unpairedHalfedges_; }
  int nonManifoldEdges() const { return nonManifoldEdges_; }

  std::vector<Face> aliveFaces() const;
  Box3 bounds() const;
  double boundingDiagonal() const;
  int eulerCharacteristic() const { return numVertices_ - numEdges_ + numFaces_; }
  double surfaceArea() const;

  /// Collapse preconditions: closed neighbourhood, link condition
  /// (common neighbours of the endpoints are exactly the two wing
  /// vertices) and more than four faces.
  bool collapseIsLinkValid(int h) const;
  /// Collapses halfedge h = (v0 -> v1) so that v0 survives at `position`.
  CollapseRecord collapse(int h, const Vec3& position);
  void revert(const CollapseRecord& record);

  /// Dense copy without dead elements. Optional maps give old -> new ids
  /// (-1 for removed elements).
  TriMesh compacted(std::vector<int>* vertexMap = nullptr, std::vector<int>* faceMap = nullptr) const;

 private:
  void set(CollapseRecord& rec, CollapseRecord::Field field, int index, int value);
  int& slot(CollapseRecord::Field field, int index);

  std::vector<Vec3> positions_;
  std::vector<int> halfStart_;
  std::vector<int> halfTwin_;
  std::vector<int> halfEdge_;
  std::vector<int> edgeHalf_;
  std::vector<int> vertHalf_;
  std::vector<int> faceAlive_;
  std::vector<int> vertAlive_;
  std::vector<int> edgeAlive_;
  int numVertices_ = 0;
  int numFaces_ = 0;
  int numEdges_ = 0;
  int unpairedHalfedges_ = 0;
  int nonManifoldEdges_ = 0;
};

}  // namespace papernet
