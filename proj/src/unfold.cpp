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

#include "papernet/unfold.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

#include "papernet/predicates.hpp"
#include "papernet/union_find.hpp"

namespace papernet {

DualGraph buildDualGraph(const TriMesh& mesh) {
  DualGraph graph;
  for (int f = 0; f < mesh.faceSlots(); ++f) {
    if (mesh.faceAlive(f)) graph.nodes.push_back(f);
  }
  for (int e = 0; e < mesh.edgeSlots(); ++e) {
    if (!mesh.edgeAlive(e)) continue;
    const auto faces = mesh.edgeFaces(e);
    if (faces[1] < 0) continue;
    graph.links.push_back({faces[0], faces[1], e});
  }
  return graph;
}

double spanningTreeCount(const TriMesh& mesh) {
  const DualGraph graph = buildDualGraph(mesh);
  const int n = static_cast<int>(graph.nodes.size());
  if (n <= 1) return n == 1 ? 1.0 : 0.0;
  std::vector<int> index(mesh.faceSlots(), -1);
  for (int i = 0; i < n; ++i) index[graph.nodes[i]] = i;
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(n, n);
  for (const auto& link : graph.links) {
    const int a = index[link.faceA];
    const int b = index[link.faceB];
    laplacian(a, a) += 1.0;
    laplacian(b, b) += 1.0;
    laplacian(a, b) -= 1.0;
    laplacian(b, a) -= 1.0;
  }
  const Eigen::MatrixXd minor = laplacian.bottomRightCorner(n - 1, n - 1);
  return std::round(minor.partialPivLu().determinant());
}

// --- trees -------------------------------------------------------------------

std::vector<int> UnfoldTree::hingeEdges(const TriMesh& mesh) const {
  std::vector<int> out;
  for (int e = 0; e < mesh.edgeSlots(); ++e) {
    if (mesh.edgeAlive(e) && isHinge(e)) out.push_back(e);
  }
  return out;
}

std::vector<int> UnfoldTree::cutEdges(const TriMesh& mesh) const {
  std::vector<int> out;
  for (int e = 0; e < mesh.edgeSlots(); ++e) {
    if (mesh.edgeAlive(e) && !isHinge(e)) out.push_back(e);
  }
  return out;
}

int largestFace(const TriMesh& mesh) {
  int best = -1;
  double bestArea = -1.0;
  for (int f = 0; f < mesh.faceSlots(); ++f) {
    if (!mesh.faceAlive(f)) continue;
    const double a = mesh.faceArea(f);
    if (a > bestArea) {
      bestArea = a;
      best = f;
    }
  }
  return best;
}

UnfoldTree makeTree(const TriMesh& mesh, std::vector<std::uint8_t> hinge) {
  UnfoldTree tree;
  tree.hinge = std::move(hinge);
  tree.hinge.resize(mesh.edgeSlots(), 0);
  tree.rootFace = largestFace(mesh);
  return tree;
}

TreeCheck checkTree(const TriMesh& mesh, const UnfoldTree& tree) {
  TreeCheck check;
  check.acyclic = true;
  if (static_cast<int>(tree.hinge.size()) < mesh.edgeSlots()) return check;
  UnionFind uf(mesh.faceSlots());
  int components = mesh.numFaces();
  for (int e = 0; e < mesh.edgeSlots(); ++e) {
    if (!tree.isHinge(e)) continue;
    if (!mesh.edgeAlive(e)) {
      check.acyclic = false;
      continue;
    }
    const auto faces = mesh.edgeFaces(e);
    if (faces[1] < 0) {
      check.acyclic = false;
      continue;
    }
    ++check.hingeCount;
    if (uf.unite(faces[0], faces[1])) {
      --components;
    } else {
      check.acyclic = false;
    }
  }
  check.spanning = components == 1 && tree.rootFace >= 0 && tree.rootFace < mesh.faceSlots() &&
                   mesh.faceAlive(tree.rootFace);
  return check;
}

int TreeTopology::parentFace(const TriMesh& mesh, int f) const {
  const int h = parentHalfedge[f];
  return h < 0 ? -1 : TriMesh::faceOf(mesh.twin(h));
}

namespace {

TreeTopology bfs(const TriMesh& mesh, const UnfoldTree& tree, int root) {
  TreeTopology topo;
  topo.parentHalfedge.assign(mesh.faceSlots(), -1);
  std::vector<char> seen(mesh.faceSlots(), 0);
  if (root < 0) return topo;
  seen[root] = 1;
  topo.order.push_back(root);
  for (std::size_t i = 0; i < topo.order.size(); ++i) {
    const int f = topo.order[i];
    for (int k = 0; k < 3; ++k) {
      const int h = 3 * f + k;
      if (!tree.isHinge(mesh.edgeOf(h))) continue;
      const int t = mesh.twin(h);
      if (t < 0) continue;
      const int g = TriMesh::faceOf(t);
      if (seen[g]) continue;
      seen[g] = 1;
      topo.parentHalfedge[g] = t;
      topo.order.push_back(g);
    }
  }
  return topo;
}

Vec2 leftNormal(const Vec2& d) { return {-d.y(), d.x()}; }

/// Third corner of a triangle whose first two corners p, q (images of 3D
/// points P, Q) are known.
Vec2 placeApex(const Vec2& p, const Vec2& q, const Vec3& P, const Vec3& Q, const Vec3& C) {
  const Vec3 edge = Q - P;
  const double len3 = edge.norm();
  const Vec2 d2 = q - p;
  const double len2 = d2.norm();
  if (len3 <= 0.0 || len2 <= 0.0) throw UnfoldError("zero-length hinge");
  const Vec3 dir = edge / len3;
  const Vec3 rel = C - P;
  const double along = rel.dot(dir);
  const double perp = (rel - along * dir).norm();
  const Vec2 d = d2 / len2;
  return p + along * d + perp * leftNormal(d);
}

void buildImages(const TriMesh& mesh, const UnfoldTree& tree, Layout& layout) {
  layout.cornerImage.assign(mesh.halfedgeSlots(), -1);
  std::vector<int> ring;
  for (int v = 0; v < mesh.vertexSlots(); ++v) {
    if (!mesh.vertexAlive(v)) continue;
    ring.clear();
    mesh.forEachOutgoing(v, [&](int h) { ring.push_back(h); });
    const int n = static_cast<int>(ring.size());
    // Consecutive ring halfedges h, twin(prev(h)) are glued iff the spoke
    // prev(h) is a hinge and both faces are placed.
    auto glued = [&](int i) {
      const int h = ring[i];
      const int h2 = ring[(i + 1) % n];
      return tree.isHinge(mesh.edgeOf(TriMesh::prev(h))) && layout.isPlaced(TriMesh::faceOf(h)) &&
             layout.isPlaced(TriMesh::faceOf(h2));
    };
    int startAt = 0;
    for (int i = 0; i < n; ++i) {
      if (!glued(i)) {
        startAt = (i + 1) % n;
        break;
      }
    }
    int current = -1;
    for (int k = 0; k < n; ++k) {
      const int i = (startAt + k) % n;
      const int h = ring[i];
      const int f = TriMesh::faceOf(h);
      if (!layout.isPlaced(f)) {
        current = -1;
        continue;
      }
      if (current < 0) {
        current = static_cast<int>(layout.images.size());
        VertexImage image;
        image.vertex = v;
        image.point = layout.corners[f][h % 3];
        layout.images.push_back(image);
      }
      layout.images[current].corners.push_back(h);
      layout.cornerImage[h] = current;
      if (!glued(i)) current = -1;
    }
  }
}

}  // namespace

TreeTopology treeTopology(const TriMesh& mesh, const UnfoldTree& tree) {
  return bfs(mesh, tree, tree.rootFace);
}

int Layout::placedCount() const { return static_cast<int>(std::count(placed.begin(), placed.end(), 1)); }

double Layout::area() const {
  double sum = 0.0;
  for (std::size_t f = 0; f < corners.size(); ++f) {
    if (placed[f]) sum += triangleArea<double>(corners[f][0], corners[f][1], corners[f][2]);
  }
  return sum;
}

std::array<Vec2, 3> placeAcross(const TriMesh& mesh, const std::array<Vec2, 3>& parentCorners, int h) {
  const int ht = mesh.twin(h);
  const int k0 = h % 3;
  const int k1 = (k0 + 1) % 3;
  const int k2 = (k0 + 2) % 3;
  std::array<Vec2, 3> c;
  c[k0] = parentCorners[TriMesh::next(ht) % 3];
  c[k1] = parentCorners[ht % 3];
  const auto p = mesh.facePositions(TriMesh::faceOf(h));
  c[k2] = placeApex(c[k0], c[k1], p[k0], p[k1], p[k2]);
  return c;
}

namespace {

/// Corners, placement flags and topology; no vertex images.
Layout placeFaces(const TriMesh& mesh, const UnfoldTree& tree, int root) {
  Layout layout;
  layout.corners.assign(mesh.faceSlots(), {Vec2::Zero(), Vec2::Zero(), Vec2::Zero()});
  layout.placed.assign(mesh.faceSlots(), 0);
  layout.topology = bfs(mesh, tree, root);
  if (root < 0) return layout;

  {
    int longest = 0;
    double best = -1.0;
    for (int k = 0; k < 3; ++k) {
      const double len = mesh.edgeLength(mesh.edgeOf(3 * root + k));
      if (len > best) {
        best = len;
        longest = k;
      }
    }
    const auto p = mesh.facePositions(root);
    const int i0 = longest;
    const int i1 = (longest + 1) % 3;
    const int i2 = (longest + 2) % 3;
    if (best <= 0.0) throw UnfoldError("degenerate root face");
    auto& c = layout.corners[root];
    c[i0] = Vec2::Zero();
    c[i1] = Vec2(best, 0.0);
    c[i2] = placeApex(c[i0], c[i1], p[i0], p[i1], p[i2]);
    layout.placed[root] = 1;
  }

  for (std::size_t i = 1; i < layout.topology.order.size(); ++i) {
    const int g = layout.topology.order[i];
    const int hg = layout.topology.parentHalfedge[g];
    layout.corners[g] = placeAcross(mesh, layout.corners[TriMesh::faceOf(mesh.twin(hg))], hg);
    layout.placed[g] = 1;
  }
  return layout;
}

}  // namespace

Layout unfoldFrom(const TriMesh& mesh, const UnfoldTree& tree, int root) {
  Layout layout = placeFaces(mesh, tree, root);
  if (root >= 0) buildImages(mesh, tree, layout);
  return layout;
}

Layout unfold(const TriMesh& mesh, const UnfoldTree& tree) { return unfoldFrom(mesh, tree, tree.rootFace); }

FaceTransform faceTransform(const TriMesh& mesh, const Layout& layout, int f) {
  const auto p = mesh.facePositions(f);
  const auto& c = layout.corners[f];
  const Vec3 e1 = (p[1] - p[0]).normalized();
  const Vec3 n = (p[1] - p[0]).cross(p[2] - p[0]).normalized();
  const Vec3 e2 = n.cross(e1);
  const Vec2 d1 = (c[1] - c[0]).normalized();
  const Vec2 d2 = leftNormal(d1);
  FaceTransform t;
  t.rotation = d1 * e1.transpose() + d2 * e2.transpose();
  t.origin = p[0];
  t.translation = c[0];
  return t;
}

Eigen::Matrix<double, 3, 2> liftMatrix(const TriMesh& mesh, const Layout& layout, int f) {
  const auto p = mesh.facePositions(f);
  const auto& c = layout.corners[f];
  const Eigen::Matrix<double, 3, 2> d3 = edgeMatrix(p[0], p[1], p[2]);
  const Eigen::Matrix2d d2 = edgeMatrix(c[0], c[1], c[2]);
  return d3 * d2.inverse();
}

// --- overlaps ----------------------------------------------------------------

std::vector<std::pair<int, int>> overlappingPairs(const Layout& layout) {
  std::vector<int> faces;
  std::vector<Box2> boxes;
  double extent = 0.0;
  Box2 all;
  for (int f = 0; f < static_cast<int>(layout.corners.size()); ++f) {
    if (!layout.isPlaced(f)) continue;
    const auto& c = layout.corners[f];
    Box2 box(c[0]);
    box.extend(c[1]);
    box.extend(c[2]);
    faces.push_back(f);
    boxes.push_back(box);
    all.extend(box);
    extent += 0.5 * (box.sizes().x() + box.sizes().y());
  }
  const int n = static_cast<int>(faces.size());
  std::vector<std::pair<int, int>> out;
  if (n < 2) return out;

  double cell = extent / n;
  const Vec2 size = all.sizes();
  if (!(cell > 0.0)) cell = std::max(size.maxCoeff(), 1.0);
  const double maxCells = 4.0 * n + 16.0;
  while ((std::floor(size.x() / cell) + 1.0) * (std::floor(size.y() / cell) + 1.0) > maxCells) cell *= 1.5;
  const int nx = static_cast<int>(size.x() / cell) + 1;
  const int ny = static_cast<int>(size.y() / cell) + 1;
  auto cellX = [&](double x) { return std::clamp(static_cast<int>((x - all.min().x()) / cell), 0, nx - 1); };
  auto cellY = [&](double y) { return std::clamp(static_cast<int>((y - all.min().y()) / cell), 0, ny - 1); };

  std::vector<std::array<int, 4>> range(n);
  std::vector<int> start(static_cast<std::size_t>(nx) * ny + 1, 0);
  for (int i = 0; i < n; ++i) {
    range[i] = {cellX(boxes[i].min().x()), cellY(boxes[i].min().y()), cellX(boxes[i].max().x()),
                cellY(boxes[i].max().y())};
    for (int y = range[i][1]; y <= range[i][3]; ++y) {
      for (int x = range[i][0]; x <= range[i][2]; ++x) ++start[static_cast<std::size_t>(y) * nx + x + 1];
    }
  }
  for (std::size_t c = 1; c < start.size(); ++c) start[c] += start[c - 1];
  std::vector<int> cells(start.back());
  std::vector<int> fill(start.begin(), start.end() - 1);
  for (int i = 0; i < n; ++i) {
    for (int y = range[i][1]; y <= range[i][3]; ++y) {
      for (int x = range[i][0]; x <= range[i][2]; ++x) cells[fill[static_cast<std::size_t>(y) * nx + x]++] = i;
    }
  }
  for (int y = 0; y < ny; ++y) {
    for (int x = 0; x < nx; ++x) {
      const std::size_t c = static_cast<std::size_t>(y) * nx + x;
      for (int a = start[c]; a < start[c + 1]; ++a) {
        const int i = cells[a];
        for (int b = a + 1; b < start[c + 1]; ++b) {
          const int j = cells[b];
          // Report each pair only from the first cell both boxes share.
          if (std::max(range[i][0], range[j][0]) != x || std::max(range[i][1], range[j][1]) != y) continue;
          if (!boxes[i].intersects(boxes[j])) continue;
          if (predicates::trianglesOverlap2d(layout.corners[faces[i]], layout.corners[faces[j]])) {
            out.emplace_back(std::min(faces[i], faces[j]), std::max(faces[i], faces[j]));
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

OverlapSet makeOverlapSet(const TriMesh& mesh, std::vector<std::pair<int, int>> pairs) {
  OverlapSet set;
  set.pairs = std::move(pairs);
  set.perFaceCount.assign(mesh.faceSlots(), 0);
  set.perEdgeCount.assign(mesh.edgeSlots(), 0);
  for (const auto& [a, b] : set.pairs) {
    ++set.perFaceCount[a];
    ++set.perFaceCount[b];
  }
  if (set.pairs.empty()) return set;
  std::vector<std::vector<int>> partners(mesh.faceSlots());
  for (const auto& [a, b] : set.pairs) {
    partners[a].push_back(b);
    partners[b].push_back(a);
  }
  std::vector<int> merged;
  for (int e = 0; e < mesh.edgeSlots(); ++e) {
    if (!mesh.edgeAlive(e)) continue;
    const auto faces = mesh.edgeFaces(e);
    if (faces[1] < 0) continue;
    const auto& pa = partners[faces[0]];
    const auto& pb = partners[faces[1]];
    if (pa.empty() && pb.empty()) continue;
    merged.assign(pa.begin(), pa.end());
    merged.insert(merged.end(), pb.begin(), pb.end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    int count = 0;
    for (int g : merged) count += (g != faces[0] && g != faces[1]) ? 1 : 0;
    set.perEdgeCount[e] = count;
  }
  return set;
}

std::vector<int> OverlapSet::partners(int f) const {
  std::vector<int> out;
  for (const auto& [a, b] : pairs) {
    if (a == f) out.push_back(b);
    if (b == f) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

OverlapSet countOverlaps(const TriMesh& mesh, const Layout& layout) {
  return makeOverlapSet(mesh, overlappingPairs(layout));
}

int overlapCount(const TriMesh& mesh, const UnfoldTree& tree) {
  return static_cast<int>(overlappingPairs(placeFaces(mesh, tree, tree.rootFace)).size());
}

// --- enumeration -------------------------------------------------------------

namespace {

struct Enumerator {
  const TriMesh& mesh;
  std::vector<DualGraph::Link> links;
  int nodeCount = 0;
  std::vector<std::uint8_t> hinge;
  std::vector<char> chosen;
  std::vector<EnumeratedUnfolding> out;

  bool connectable(std::size_t from) const {
    UnionFind uf(mesh.faceSlots());
    int components = nodeCount;
    for (std::size_t i = 0; i < links.size(); ++i) {
      if (i < from && !chosen[i]) continue;
      if (uf.unite(links[i].faceA, links[i].faceB)) --components;
    }
    return components == 1;
  }

  void recurse(std::size_t i, int count, UnionFind uf) {
    if (count == nodeCount - 1) {
      UnfoldTree tree = makeTree(mesh, hinge);
      out.push_back({tree, overlapCount(mesh, tree)});
      return;
    }
    if (i == links.size()) return;
    if (count + static_cast<int>(links.size() - i) < nodeCount - 1) return;
    const auto& link = links[i];
    if (!uf.connected(link.faceA, link.faceB)) {
      UnionFind next = uf;
      next.unite(link.faceA, link.faceB);
      hinge[link.edge] = 1;
      chosen[i] = 1;
      recurse(i + 1, count + 1, next);
      hinge[link.edge] = 0;
      chosen[i] = 0;
    }
    if (connectable(i + 1)) recurse(i + 1, count, std::move(uf));
  }
};

}  // namespace

std::vector<EnumeratedUnfolding> enumerateAllUnfoldings(const TriMesh& mesh, int maxTrees) {
  const double count = spanningTreeCount(mesh);
  if (!(count <= static_cast<double>(maxTrees))) {
    throw std::length_error("spanning tree count exceeds limit");
  }
  Enumerator e{mesh, buildDualGraph(mesh).links, mesh.numFaces(), {}, {}, {}};
  e.hinge.assign(mesh.edgeSlots(), 0);
  e.chosen.assign(e.links.size(), 0);
  e.recurse(0, 0, UnionFind(mesh.faceSlots()));
  return std::move(e.out);
}

// --- collapse repair ---------------------------------------------------------

UnfoldTree applyCollapseToTree(const TriMesh& mesh, const UnfoldTree& tree, const CollapseRecord& record) {
  UnfoldTree out;
  out.hinge = tree.hinge;
  out.hinge.resize(mesh.edgeSlots(), 0);
  // Old hinge flags on edges that died or whose link now joins different
  // faces are discarded.
  const bool wasHinge[5] = {
      tree.isHinge(record.touchedLinks[0]), tree.isHinge(record.touchedLinks[1]),
      tree.isHinge(record.touchedLinks[2]), tree.isHinge(record.touchedLinks[3]),
      tree.isHinge(record.touchedLinks[4])};
  for (int e : record.touchedLinks) out.hinge[e] = 0;

  UnionFind uf(mesh.faceSlots());
  for (int e = 0; e < mesh.edgeSlots(); ++e) {
    if (!out.hinge[e]) continue;
    const auto faces = mesh.edgeFaces(e);
    uf.unite(faces[0], faces[1]);
  }

  // touchedLinks = {collapsed, absorbed0, merged0, merged1, absorbed1}; the
  // merged link k replaces the path through removed face k.
  std::vector<int> candidates;
  if (wasHinge[1] && wasHinge[2]) candidates.push_back(record.mergedEdges[0]);
  if (wasHinge[3] && wasHinge[4]) candidates.push_back(record.mergedEdges[1]);
  std::vector<int> spokes;
  mesh.forEachOutgoing(record.survivor, [&](int h) { spokes.push_back(mesh.edgeOf(h)); });
  std::sort(spokes.begin(), spokes.end());
  for (int e : record.mergedEdges) {
    if (std::find(spokes.begin(), spokes.end(), e) == spokes.end()) spokes.push_back(e);
  }
  for (int e : spokes) {
    if (std::find(candidates.begin(), candidates.end(), e) == candidates.end()) candidates.push_back(e);
  }
  for (int e : candidates) {
    const auto faces = mesh.edgeFaces(e);
    if (uf.unite(faces[0], faces[1])) out.hinge[e] = 1;
  }

  out.rootFace = tree.rootFace;
  if (out.rootFace < 0 || !mesh.faceAlive(out.rootFace)) out.rootFace = largestFace(mesh);
  return out;
}

}  // namespace papernet
