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

#include "papernet/decimate.hpp"

#include <queue>
#include <tuple>

#include <Eigen/Dense>

#include "papernet/validate.hpp"

namespace papernet {

namespace {

using Quadric = Eigen::Matrix4d;

double quadricError(const Quadric& q, const Vec3& p) {
  const Eigen::Vector4d h(p.x(), p.y(), p.z(), 1.0);
  return h.dot(q * h);
}

struct Candidate {
  double cost;
  int halfedge;  ///< start vertex survives
  Vec3 position;
};

Candidate bestCollapse(const TriMesh& mesh, const std::vector<Quadric>& quadrics, int e) {
  const int h = mesh.edgeHalfedge(e);
  const int a = mesh.start(h);
  const int b = mesh.end(h);
  const Quadric q = quadrics[a] + quadrics[b];
  const Vec3& pa = mesh.position(a);
  const Vec3& pb = mesh.position(b);
  std::vector<Vec3> options = {0.5 * (pa + pb), pa, pb};
  const Eigen::Matrix3d m = q.topLeftCorner<3, 3>();
  const double scale = m.norm();
  if (scale > 0.0 && std::abs(m.determinant()) > 1e-9 * scale * scale * scale) {
    const Vec3 opt = m.ldlt().solve(-q.topRightCorner<3, 1>());
    // Keep the optimum only near the edge; far solutions are unstable.
    if ((opt - 0.5 * (pa + pb)).norm() <= 2.0 * (pa - pb).norm()) options.insert(options.begin(), opt);
  }
  Candidate best{std::numeric_limits<double>::infinity(), h, pa};
  for (const Vec3& p : options) {
    const double c = quadricError(q, p);
    if (c < best.cost) best = {c, p == pb ? mesh.twin(h) : h, p};
  }
  return best;
}

}  // namespace

TriMesh qslimBaseline(const TriMesh& input, int targetFaces) {
  TriMesh mesh = input;
  std::vector<Quadric> quadrics(mesh.vertexSlots(), Quadric::Zero());
  for (int f = 0; f < mesh.faceSlots(); ++f) {
    if (!mesh.faceAlive(f)) continue;
    const auto p = mesh.facePositions(f);
    const Vec3 n = (p[1] - p[0]).cross(p[2] - p[0]).normalized();
    const Eigen::Vector4d plane(n.x(), n.y(), n.z(), -n.dot(p[0]));
    const Quadric k = plane * plane.transpose();
    for (int v : mesh.face(f)) quadrics[v] += k;
  }

  std::vector<int> stamp(mesh.edgeSlots(), 0);
  using Entry = std::tuple<double, int, int>;  // cost, edge, stamp
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  auto push = [&](int e) {
    ++stamp[e];
    heap.emplace(bestCollapse(mesh, quadrics, e).cost, e, stamp[e]);
  };
  for (int e = 0; e < mesh.edgeSlots(); ++e) {
    if (mesh.edgeAlive(e)) push(e);
  }

  const double eps = areaEpsilon(mesh);
  while (mesh.numFaces() > targetFaces && !heap.empty()) {
    const auto [cost, e, s] = heap.top();
    heap.pop();
    if (!mesh.edgeAlive(e) || s != stamp[e]) continue;
    const Candidate c = bestCollapse(mesh, quadrics, e);
    if (!mesh.collapseIsLinkValid(c.halfedge)) continue;
    const int v0 = mesh.start(c.halfedge);
    const int v1 = mesh.end(c.halfedge);
    const int skip0 = TriMesh::faceOf(c.halfedge);
    const int skip1 = TriMesh::faceOf(mesh.twin(c.halfedge));
    std::vector<std::pair<int, Vec3>> before;
    for (int v : {v0, v1}) {
      for (int f : mesh.vertexFaces(v)) {
        if (f != skip0 && f != skip1) before.emplace_back(f, mesh.faceNormal(f));
      }
    }
    const CollapseRecord rec = mesh.collapse(c.halfedge, c.position);
    bool ok = true;
    for (const auto& [f, n] : before) {
      const auto p = mesh.facePositions(f);
      const Vec3 m = (p[1] - p[0]).cross(p[2] - p[0]);
      if (0.5 * m.norm() <= eps || m.normalized().dot(n) < 0.2) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      mesh.revert(rec);
      continue;
    }
    quadrics[v0] += quadrics[v1];
    mesh.forEachOutgoing(v0, [&](int h) { push(mesh.edgeOf(h)); });
  }
  if (mesh.numFaces() > targetFaces) {
    throw MeshError("cannot reach " + std::to_string(targetFaces) + " faces without breaking the mesh");
  }
  return mesh.compacted();
}

}  // namespace papernet
