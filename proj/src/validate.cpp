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

#include "papernet/validate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "papernet/aabb_tree.hpp"
#include "papernet/predicates.hpp"
#include "papernet/union_find.hpp"

namespace papernet {

double areaEpsilon(const TriMesh& mesh) {
  const double d = mesh.boundingDiagonal();
  return kAreaEpsilon * d * d;
}

std::string ValidationReport::describe() const {
  std::ostringstream os;
  os << "manifold=" << (isManifold ? "yes" : "no") << " closed=" << (isClosed ? "yes" : "no")
     << " components=" << componentCount
     << " self-intersecting=" << (selfIntersecting ? "yes" : "no")
     << " degenerate-faces=" << degenerateFaceIds.size();
  return os.str();
}

std::vector<std::pair<int, int>> selfIntersections(const TriMesh& mesh) {
  std::vector<Box3> boxes;
  std::vector<int> ids;
  for (int f = 0; f < mesh.faceSlots(); ++f) {
    if (!mesh.faceAlive(f)) continue;
    const auto p = mesh.facePositions(f);
    Box3 box(p[0]);
    box.extend(p[1]);
    box.extend(p[2]);
    boxes.push_back(box);
    ids.push_back(f);
  }
  const AabbTree<3> tree(boxes);
  std::vector<std::pair<int, int>> hits;
  for (int i = 0; i < static_cast<int>(ids.size()); ++i) {
    const int fi = ids[i];
    const auto pi = mesh.facePositions(fi);
    const Face vi = mesh.face(fi);
    tree.query(boxes[i], [&](int j) {
      if (j <= i) return;
      const int fj = ids[j];
      if (predicates::facesIntersect3d(pi, vi, mesh.facePositions(fj), mesh.face(fj))) {
        hits.emplace_back(fi, fj);
      }
    });
  }
  std::sort(hits.begin(), hits.end());
  return hits;
}

ValidationReport validate(const TriMesh& mesh) {
  ValidationReport report;
  const double eps = areaEpsilon(mesh);
  for (int f = 0; f < mesh.faceSlots(); ++f) {
    if (mesh.faceAlive(f) && mesh.faceArea(f) <= eps) report.degenerateFaceIds.push_back(f);
  }
  report.isClosed = mesh.unpairedHalfedges() == 0;

  // Vertex manifoldness: the fan reached by rotation must cover every
  // incident face.
  std::vector<int> incident(mesh.vertexSlots(), 0);
  for (int h = 0; h < mesh.halfedgeSlots(); ++h) {
    if (mesh.faceAlive(TriMesh::faceOf(h))) ++incident[mesh.start(h)];
  }
  bool vertexManifold = true;
  for (int v = 0; v < mesh.vertexSlots() && vertexManifold; ++v) {
    if (!mesh.vertexAlive(v) || incident[v] == 0) continue;
    int fan = 0;
    const int first = mesh.vertexHalfedge(v);
    int h = first;
    do {
      ++fan;
      const int t = mesh.twin(TriMesh::prev(h));
      if (t < 0) break;
      h = t;
    } while (h != first && fan <= incident[v]);
    if (fan != incident[v]) vertexManifold = false;
  }
  report.isManifold = mesh.nonManifoldEdges() == 0 && vertexManifold;

  UnionFind uf(mesh.vertexSlots());
  for (int f = 0; f < mesh.faceSlots(); ++f) {
    if (!mesh.faceAlive(f)) continue;
    const Face face = mesh.face(f);
    uf.unite(face[0], face[1]);
    uf.unite(face[1], face[2]);
  }
  for (int v = 0; v < mesh.vertexSlots(); ++v) {
    if (mesh.vertexAlive(v) && uf.find(v) == v) ++report.componentCount;
  }

  report.selfIntersecting = !selfIntersections(mesh).empty();
  return report;
}

double angleDeficit(const TriMesh& mesh, int v) {
  double sum = 0.0;
  mesh.forEachOutgoing(v, [&](int h) {
    const Vec3& p = mesh.position(v);
    const Vec3& a = mesh.position(mesh.end(h));
    const Vec3& b = mesh.position(mesh.start(TriMesh::prev(h)));
    sum += cornerAngle<double>(p, a, b);
  });
  return 2.0 * std::numbers::pi - sum;
}

VertexClass classifyVertex(const TriMesh& mesh, int v) {
  const double deficit = angleDeficit(mesh, v);
  if (std::abs(deficit) < kDeficitEpsilon) return VertexClass::kFlat;
  if (deficit < 0.0) return VertexClass::kSaddle;
  // Mean signed dihedral over the spokes; positive bends away from the
  // outward normal (convex).
  double bend = 0.0;
  mesh.forEachOutgoing(v, [&](int h) {
    const int t = mesh.twin(h);
    const Vec3 n1 = mesh.faceNormal(TriMesh::faceOf(h));
    const Vec3 n2 = mesh.faceNormal(TriMesh::faceOf(t));
    const Vec3 dir = (mesh.position(mesh.end(h)) - mesh.position(v)).normalized();
    bend += std::atan2(n1.cross(n2).dot(dir), n1.dot(n2));
  });
  return bend >= 0.0 ? VertexClass::kConvex : VertexClass::kConcave;
}

const char* toString(VertexClass c) {
  switch (c) {
    case VertexClass::kFlat: return "flat";
    case VertexClass::kConvex: return "convex";
    case VertexClass::kConcave: return "concave";
    case VertexClass::kSaddle: return "saddle";
  }
  return "?";
}

int genus(const TriMesh& mesh) { return (2 - mesh.eulerCharacteristic()) / 2; }

const char* toString(EditIssue issue) {
  switch (issue) {
    case EditIssue::kNone: return "none";
    case EditIssue::kDegenerate: return "degenerate";
    case EditIssue::kFlipped: return "flipped";
    case EditIssue::kNonManifold: return "non-manifold";
    case EditIssue::kSelfIntersection: return "self-intersection";
  }
  return "?";
}

EditIssue checkLocalEdit(const TriMesh& mesh, std::span<const int> affectedFaces,
                         std::span<const Vec3> preEditNormals) {
  const double eps = areaEpsilon(mesh);
  for (std::size_t i = 0; i < affectedFaces.size(); ++i) {
    const int f = affectedFaces[i];
    const auto p = mesh.facePositions(f);
    const Vec3 n = (p[1] - p[0]).cross(p[2] - p[0]);
    if (0.5 * n.norm() <= eps) return EditIssue::kDegenerate;
    if (i < preEditNormals.size() && n.dot(preEditNormals[i]) <= 0.0) return EditIssue::kFlipped;
  }

  std::vector<int> verts;
  for (int f : affectedFaces) {
    const Face face = mesh.face(f);
    verts.insert(verts.end(), face.begin(), face.end());
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::vector<int> ring;
  for (int v : verts) {
    ring.clear();
    bool open = false;
    const int first = mesh.vertexHalfedge(v);
    int h = first;
    do {
      ring.push_back(mesh.end(h));
      const int t = mesh.twin(TriMesh::prev(h));
      if (t < 0) {
        open = true;
        break;
      }
      h = t;
    } while (h != first && static_cast<int>(ring.size()) <= mesh.halfedgeSlots());
    if (open || ring.size() < 3) return EditIssue::kNonManifold;
    std::sort(ring.begin(), ring.end());
    if (std::adjacent_find(ring.begin(), ring.end()) != ring.end()) return EditIssue::kNonManifold;
  }

  std::vector<char> isAffected(mesh.faceSlots(), 0);
  for (int f : affectedFaces) isAffected[f] = 1;
  for (int f : affectedFaces) {
    const auto p = mesh.facePositions(f);
    const Face fv = mesh.face(f);
    Box3 box(p[0]);
    box.extend(p[1]);
    box.extend(p[2]);
    for (int g = 0; g < mesh.faceSlots(); ++g) {
      if (!mesh.faceAlive(g) || g == f) continue;
      if (isAffected[g] && g < f) continue;  // pair already tested from g
      const auto q = mesh.facePositions(g);
      Box3 other(q[0]);
      other.extend(q[1]);
      other.extend(q[2]);
      if (!box.intersects(other)) continue;
      if (predicates::facesIntersect3d(p, fv, q, mesh.face(g))) return EditIssue::kSelfIntersection;
    }
  }
  return EditIssue::kNone;
}

}  // namespace papernet
