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

#include "papernet/mesh.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace papernet {

TriMesh::TriMesh(std::vector<Vec3> positions, const std::vector<Face>& faces)
    : positions_(std::move(positions)) {
  const int nv = static_cast<int>(positions_.size());
  const int nf = static_cast<int>(faces.size());
  halfStart_.resize(3 * nf);
  halfTwin_.assign(3 * nf, -1);
  halfEdge_.assign(3 * nf, -1);
  faceAlive_.assign(nf, 1);
  vertAlive_.assign(nv, 1);
  vertHalf_.assign(nv, -1);

  for (int f = 0; f < nf; ++f) {
    const Face& face = faces[f];
    for (int i = 0; i < 3; ++i) {
      if (face[i] < 0 || face[i] >= nv) {
        throw MeshError("face " + std::to_string(f) + " references vertex " +
                        std::to_string(face[i]) + " out of range");
      }
    }
    if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) {
      throw MeshError("face " + std::to_string(f) + " repeats a vertex");
    }
    for (int i = 0; i < 3; ++i) halfStart_[3 * f + i] = face[i];
  }

  auto key = [](int a, int b) {
    const auto lo = static_cast<std::uint64_t>(std::min(a, b));
    const auto hi = static_cast<std::uint64_t>(std::max(a, b));
    return (lo << 32) | hi;
  };
  std::unordered_map<std::uint64_t, std::vector<int>> byEdge;
  byEdge.reserve(3 * nf);
  for (int h = 0; h < 3 * nf; ++h) byEdge[key(start(h), end(h))].push_back(h);

  for (int h = 0; h < 3 * nf; ++h) {
    if (halfEdge_[h] >= 0) continue;
    const std::vector<int>& group = byEdge[key(start(h), end(h))];
    const int e = static_cast<int>(edgeHalf_.size());
    edgeHalf_.push_back(h);
    edgeAlive_.push_back(1);
    if (group.size() == 2 && start(group[0]) == end(group[1]) && start(group[1]) == end(group[0])) {
      halfTwin_[group[0]] = group[1];
      halfTwin_[group[1]] = group[0];
      halfEdge_[group[0]] = e;
      halfEdge_[group[1]] = e;
    } else {
      // Boundary or non-manifold: every halfedge is its own unpaired edge.
      halfEdge_[h] = e;
    }
  }
  for (const auto& [k, group] : byEdge) {
    const bool paired = group.size() == 2 && start(group[0]) == end(group[1]);
    if (!paired) {
      unpairedHalfedges_ += static_cast<int>(group.size());
      if (group.size() > 1) ++nonManifoldEdges_;
    }
  }
  // Prefer an unpaired outgoing halfedge so boundary fans start at the rim.
  for (int h = 0; h < 3 * nf; ++h) {
    const int v = start(h);
    if (vertHalf_[v] < 0 || halfTwin_[h] < 0) vertHalf_[v] = h;
  }
  numVertices_ = nv;
  numFaces_ = nf;
  numEdges_ = static_cast<int>(edgeHalf_.size());
}

std::array<Vec3, 3> TriMesh::facePositions(int f) const {
  return {positions_[halfStart_[3 * f]], positions_[halfStart_[3 * f + 1]],
          positions_[halfStart_[3 * f + 2]]};
}

std::array<int, 2> TriMesh::edgeVertices(int e) const {
  const int h = edgeHalf_[e];
  return {start(h), end(h)};
}

std::array<int, 2> TriMesh::edgeFaces(int e) const {
  const int h = edgeHalf_[e];
  const int t = halfTwin_[h];
  return {faceOf(h), t < 0 ? -1 : faceOf(t)};
}

double TriMesh::edgeLength(int e) const {
  const auto [a, b] = edgeVertices(e);
  return (positions_[a] - positions_[b]).norm();
}

double TriMesh::faceArea(int f) const {
  const auto p = facePositions(f);
  return triangleArea<double>(p[0], p[1], p[2]);
}

Vec3 TriMesh::faceNormal(int f) const {
  const auto p = facePositions(f);
  return (p[1] - p[0]).cross(p[2] - p[0]).normalized();
}

Vec3 TriMesh::vertexNormal(int v) const {
  Vec3 n = Vec3::Zero();
  forEachOutgoing(v, [&](int h) {
    const auto p = facePositions(faceOf(h));
    n += (p[1] - p[0]).cross(p[2] - p[0]);
  });
  const double len = n.norm();
  return len > 0.0 ? Vec3(n / len) : n;
}

std::vector<int> TriMesh::vertexFaces(int v) const {
  std::vector<int> out;
  forEachOutgoing(v, [&](int h) { out.push_back(faceOf(h)); });
  return out;
}

std::vector<int> TriMesh::vertexNeighbors(int v) const {
  std::vector<int> out;
  forEachOutgoing(v, [&](int h) { out.push_back(end(h)); });
  return out;
}

int TriMesh::valence(int v) const {
  int n = 0;
  forEachOutgoing(v, [&](int) { ++n; });
  return n;
}

std::vector<Face> TriMesh::aliveFaces() const {
  std::vector<Face> out;
  out.reserve(numFaces_);
  for (int f = 0; f < faceSlots(); ++f) {
    if (faceAlive(f)) out.push_back(face(f));
  }
  return out;
}

Box3 TriMesh::bounds() const {
  Box3 box;
  for (int v = 0; v < vertexSlots(); ++v) {
    if (vertexAlive(v)) box.extend(positions_[v]);
  }
  return box;
}

double TriMesh::boundingDiagonal() const {
  const Box3 box = bounds();
  return box.isEmpty() ? 0.0 : box.diagonal().norm();
}

double TriMesh::surfaceArea() const {
  double total = 0.0;
  for (int f = 0; f < faceSlots(); ++f) {
    if (faceAlive(f)) total += faceArea(f);
  }
  return total;
}

bool TriMesh::collapseIsLinkValid(int h) const {
  if (numFaces_ <= 4) return false;
  const int g = halfTwin_[h];
  if (g < 0) return false;
  const int v0 = start(h);
  const int v1 = end(h);
  const int a = start(prev(h));
  const int b = start(prev(g));
  if (a == b) return false;
  std::vector<int> n0;
  bool closed = true;
  auto collect = [&](int v, std::vector<int>& out) {
    const int first = vertHalf_[v];
    int cur = first;
    do {
      out.push_back(end(cur));
      const int t = halfTwin_[prev(cur)];
      if (t < 0) {
        closed = false;
        return;
      }
      cur = t;
    } while (cur != first);
  };
  collect(v0, n0);
  std::vector<int> n1;
  collect(v1, n1);
  if (!closed) return false;
  std::sort(n0.begin(), n0.end());
  std::sort(n1.begin(), n1.end());
  std::vector<int> common;
  std::set_intersection(n0.begin(), n0.end(), n1.begin(), n1.end(), std::back_inserter(common));
  if (common.size() != 2) return false;
  return (common[0] == a && common[1] == b) || (common[0] == b && common[1] == a);
}

int& TriMesh::slot(CollapseRecord::Field field, int index) {
  using F = CollapseRecord::Field;
  switch (field) {
    case F::kHalfStart: return halfStart_[index];
    case F::kHalfTwin: return halfTwin_[index];
    case F::kHalfEdge: return halfEdge_[index];
    case F::kEdgeHalf: return edgeHalf_[index];
    case F::kVertHalf: return vertHalf_[index];
    case F::kFaceAlive: return faceAlive_[index];
    case F::kVertAlive: return vertAlive_[index];
    case F::kEdgeAlive: return edgeAlive_[index];
  }
  return halfStart_[index];
}

void TriMesh::set(CollapseRecord& rec, CollapseRecord::Field field, int index, int value) {
  int& s = slot(field, index);
  rec.undo.push_back({field, index, s});
  s = value;
}

CollapseRecord TriMesh::collapse(int h0, const Vec3& position) {
  using F = CollapseRecord::Field;
  CollapseRecord rec;
  const int h1 = next(h0);
  const int h2 = prev(h0);
  const int g0 = halfTwin_[h0];
  const int g1 = next(g0);
  const int g2 = prev(g0);
  const int th1 = halfTwin_[h1];
  const int th2 = halfTwin_[h2];
  const int tg1 = halfTwin_[g1];
  const int tg2 = halfTwin_[g2];
  const int v0 = start(h0);
  const int v1 = end(h0);
  const int a = start(h2);
  const int b = start(g2);

  rec.edge = halfEdge_[h0];
  rec.survivor = v0;
  rec.removedVertex = v1;
  rec.removedFaces = {faceOf(h0), faceOf(g0)};
  rec.wingVertices = {a, b};
  rec.mergedEdges = {halfEdge_[h2], halfEdge_[g1]};
  rec.absorbedEdges = {halfEdge_[h1], halfEdge_[g2]};
  rec.touchedLinks = {halfEdge_[h0], halfEdge_[h1], halfEdge_[h2], halfEdge_[g1], halfEdge_[g2]};
  rec.oldSurvivorPosition = positions_[v0];
  rec.newPosition = position;

  std::vector<int> outgoingV1;
  forEachOutgoing(v1, [&](int h) { outgoingV1.push_back(h); });
  for (int h : outgoingV1) set(rec, F::kHalfStart, h, v0);

  set(rec, F::kHalfTwin, th1, th2);
  set(rec, F::kHalfTwin, th2, th1);
  set(rec, F::kHalfEdge, th1, rec.mergedEdges[0]);
  set(rec, F::kEdgeHalf, rec.mergedEdges[0], th2);

  set(rec, F::kHalfTwin, tg1, tg2);
  set(rec, F::kHalfTwin, tg2, tg1);
  set(rec, F::kHalfEdge, tg2, rec.mergedEdges[1]);
  set(rec, F::kEdgeHalf, rec.mergedEdges[1], tg1);

  set(rec, F::kEdgeAlive, rec.edge, 0);
  set(rec, F::kEdgeAlive, rec.absorbedEdges[0], 0);
  set(rec, F::kEdgeAlive, rec.absorbedEdges[1], 0);
  set(rec, F::kFaceAlive, rec.removedFaces[0], 0);
  set(rec, F::kFaceAlive, rec.removedFaces[1], 0);
  set(rec, F::kVertAlive, v1, 0);

  set(rec, F::kVertHalf, v0, th2);
  set(rec, F::kVertHalf, a, th1);
  set(rec, F::kVertHalf, b, tg1);
  positions_[v0] = position;

  numVertices_ -= 1;
  numFaces_ -= 2;
  numEdges_ -= 3;
  return rec;
}

void TriMesh::revert(const CollapseRecord& rec) {
  for (auto it = rec.undo.rbegin(); it != rec.undo.rend(); ++it) slot(it->field, it->index) = it->oldValue;
  positions_[rec.survivor] = rec.oldSurvivorPosition;
  numVertices_ += 1;
  numFaces_ += 2;
  numEdges_ += 3;
}

TriMesh TriMesh::compacted(std::vector<int>* vertexMap, std::vector<int>* faceMap) const {
  std::vector<int> vmap(vertexSlots(), -1);
  std::vector<Vec3> pos;
  pos.reserve(numVertices_);
  for (int v = 0; v < vertexSlots(); ++v) {
    if (!vertexAlive(v)) continue;
    vmap[v] = static_cast<int>(pos.size());
    pos.push_back(positions_[v]);
  }
  std::vector<int> fmap(faceSlots(), -1);
  std::vector<Face> faces;
  faces.reserve(numFaces_);
  for (int f = 0; f < faceSlots(); ++f) {
    if (!faceAlive(f)) continue;
    const Face old = face(f);
    fmap[f] = static_cast<int>(faces.size());
    faces.push_back({vmap[old[0]], vmap[old[1]], vmap[old[2]]});
  }
  if (vertexMap) *vertexMap = std::move(vmap);
  if (faceMap) *faceMap = std::move(fmap);
  return TriMesh(std::move(pos), faces);
}

}  // namespace papernet
