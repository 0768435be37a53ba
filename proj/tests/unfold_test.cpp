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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "papernet/shapes.hpp"
#include "papernet/union_find.hpp"
#include "papernet/unfold.hpp"

namespace {

using namespace papernet;

void expectIsometric(const TriMesh& mesh, const Layout& layout, double tol = 1e-9) {
  for (int f = 0; f < mesh.faceSlots(); ++f) {
    if (!mesh.faceAlive(f)) continue;
    ASSERT_TRUE(layout.isPlaced(f));
    const auto p = mesh.facePositions(f);
    const auto& c = layout.corners[f];
    for (int k = 0; k < 3; ++k) {
      const double l3 = (p[(k + 1) % 3] - p[k]).norm();
      const double l2 = (c[(k + 1) % 3] - c[k]).norm();
      ASSERT_NEAR(l2, l3, tol * l3) << "face " << f;
    }
    ASSERT_GT(triangleArea<double>(c[0], c[1], c[2]), 0.0);
  }
}

void expectHingesGlued(const TriMesh& mesh, const UnfoldTree& tree, const Layout& layout) {
  for (int e : tree.hingeEdges(mesh)) {
    const int h = mesh.edgeHalfedge(e);
    const int t = mesh.twin(h);
    const auto& a = layout.corners[TriMesh::faceOf(h)];
    const auto& b = layout.corners[TriMesh::faceOf(t)];
    // Bitwise: the child copies the parent's points.
    ASSERT_EQ(a[h % 3], b[TriMesh::next(t) % 3]);
    ASSERT_EQ(a[TriMesh::next(h) % 3], b[t % 3]);
  }
}

TEST(DualGraph, Counts) {
  const DualGraph tet = buildDualGraph(makeTetrahedron());
  EXPECT_EQ(tet.nodes.size(), 4u);
  EXPECT_EQ(tet.links.size(), 6u);
  std::set<std::pair<int, int>> pairs;
  for (const auto& l : tet.links) pairs.insert(std::minmax(l.faceA, l.faceB));
  EXPECT_EQ(pairs.size(), 6u);

  const TriMesh ico = makeIcosahedron();
  const DualGraph g = buildDualGraph(ico);
  EXPECT_EQ(g.nodes.size(), 20u);
  EXPECT_EQ(g.links.size(), 30u);
  std::vector<int> degree(20, 0);
  for (const auto& l : g.links) ++degree[l.faceA], ++degree[l.faceB];
  EXPECT_TRUE(std::all_of(degree.begin(), degree.end(), [](int d) { return d == 3; }));

  const DualGraph cube = buildDualGraph(makeBox());
  EXPECT_EQ(cube.nodes.size(), 12u);
  EXPECT_EQ(cube.links.size(), 18u);
  for (std::size_t i = 1; i < cube.links.size(); ++i) EXPECT_LT(cube.links[i - 1].edge, cube.links[i].edge);
}

TEST(Enumerate, TetrahedronHasSixteenSimpleNets) {
  const TriMesh tet = makeTetrahedron();
  EXPECT_EQ(spanningTreeCount(tet), 16.0);
  const auto all = enumerateAllUnfoldings(tet, 100);
  ASSERT_EQ(all.size(), 16u);
  std::set<std::vector<std::uint8_t>> distinct;
  for (const auto& u : all) {
    EXPECT_TRUE(oracle::isSpanningTree(tet, u.tree));
    EXPECT_EQ(u.overlapCount, 0);
    const Layout layout = unfold(tet, u.tree);
    expectIsometric(tet, layout);
    EXPECT_TRUE(oracle::allPairsOverlaps(layout).empty());
    distinct.insert(u.tree.hinge);
  }
  EXPECT_EQ(distinct.size(), 16u);
}

TEST(Enumerate, CubeCountMatchesDeterminant) {
  const TriMesh cube = makeBox();
  const double count = spanningTreeCount(cube);
  const auto all = enumerateAllUnfoldings(cube, 1000000);
  EXPECT_EQ(static_cast<double>(all.size()), count);
  for (const auto& u : all) {
    ASSERT_TRUE(oracle::isSpanningTree(cube, u.tree));
    ASSERT_EQ(u.overlapCount, static_cast<int>(oracle::allPairsOverlaps(unfold(cube, u.tree)).size()));
  }
  EXPECT_THROW(enumerateAllUnfoldings(cube, 10), std::length_error);
}

TEST(Unfold, RootPlacement) {
  const TriMesh mesh = makeUvSphere(6, 7);
  std::mt19937_64 rng(1);
  const UnfoldTree tree = oracle::randomWalkTree(mesh, rng);
  const Layout layout = unfold(mesh, tree);
  const int root = tree.rootFace;
  EXPECT_EQ(root, largestFace(mesh));
  int longest = 0;
  for (int k = 1; k < 3; ++k) {
    if (mesh.edgeLength(mesh.edgeOf(3 * root + k)) > mesh.edgeLength(mesh.edgeOf(3 * root + longest))) longest = k;
  }
  const auto& c = layout.corners[root];
  EXPECT_EQ(c[longest], Vec2::Zero());
  EXPECT_EQ(c[(longest + 1) % 3].y(), 0.0);
  EXPECT_GT(c[(longest + 1) % 3].x(), 0.0);
  EXPECT_EQ(layout.topology.order.front(), root);
}

TEST(Unfold, IsometryAreaAndGluingOnRandomTrees) {
  std::mt19937_64 rng(2);
  const std::vector<TriMesh> meshes = {makeIcosphere(2), makeTorus(1.0, 0.4, 14, 9), makeUvSphere(10, 11)};
  for (const TriMesh& mesh : meshes) {
    for (int trial = 0; trial < 20; ++trial) {
      const UnfoldTree tree = oracle::randomWalkTree(mesh, rng);
      ASSERT_TRUE(checkTree(mesh, tree).ok());
      const Layout layout = unfold(mesh, tree);
      expectIsometric(mesh, layout);
      expectHingesGlued(mesh, tree, layout);
      EXPECT_NEAR(layout.area(), mesh.surfaceArea(), 1e-9 * mesh.surfaceArea());
    }
  }
}

TEST(Unfold, VertexImagesFollowCutSectors) {
  const TriMesh mesh = makeIcosphere(2);
  std::mt19937_64 rng(4);
  const UnfoldTree tree = oracle::randomWalkTree(mesh, rng);
  const Layout layout = unfold(mesh, tree);
  std::vector<int> images(mesh.vertexSlots(), 0);
  for (const auto& img : layout.images) {
    ++images[img.vertex];
    for (int h : img.corners) {
      ASSERT_EQ(mesh.start(h), img.vertex);
      ASSERT_EQ(layout.corners[TriMesh::faceOf(h)][h % 3], img.point);
    }
  }
  for (int v = 0; v < mesh.vertexSlots(); ++v) {
    int cuts = 0;
    mesh.forEachOutgoing(v, [&](int h) { cuts += !tree.isHinge(mesh.edgeOf(h)); });
    EXPECT_GE(cuts, 1);
    EXPECT_EQ(images[v], cuts) << v;
  }
  for (int h = 0; h < mesh.halfedgeSlots(); ++h) EXPECT_GE(layout.cornerImage[h], 0);
}

// Depth-first search for a Hamiltonian path in the icosahedron's dual.
bool hamiltonian(const TriMesh& mesh, std::vector<int>& path, std::vector<char>& used) {
  if (static_cast<int>(path.size()) == mesh.numFaces()) return true;
  const int f = path.back();
  for (int k = 0; k < 3; ++k) {
    const int g = TriMesh::faceOf(mesh.twin(3 * f + k));
    if (used[g]) continue;
    used[g] = 1;
    path.push_back(g);
    if (hamiltonian(mesh, path, used)) return true;
    path.pop_back();
    used[g] = 0;
  }
  return false;
}

TEST(Unfold, PathTreeIsStrip) {
  const TriMesh ico = makeIcosahedron();
  std::vector<int> path = {0};
  std::vector<char> used(20, 0);
  used[0] = 1;
  ASSERT_TRUE(hamiltonian(ico, path, used));
  std::vector<std::uint8_t> hinge(ico.edgeSlots(), 0);
  for (std::size_t i = 1; i < path.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      const int h = 3 * path[i - 1] + k;
      if (TriMesh::faceOf(ico.twin(h)) == path[i]) hinge[ico.edgeOf(h)] = 1;
    }
  }
  const UnfoldTree tree = makeTree(ico, hinge);
  ASSERT_TRUE(oracle::isSpanningTree(ico, tree));
  const Layout layout = unfold(ico, tree);
  expectIsometric(ico, layout);
  std::vector<int> position(20);
  for (int i = 0; i < 20; ++i) position[path[i]] = i;
  for (int e : tree.hingeEdges(ico)) {
    const auto f = ico.edgeFaces(e);
    EXPECT_EQ(std::abs(position[f[0]] - position[f[1]]), 1);
  }
  EXPECT_EQ(countOverlaps(ico, layout).pairs, oracle::allPairsOverlaps(layout));
}

TEST(Overlaps, StackedTriangles) {
  Layout layout;
  layout.corners = {{Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)}, {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)},
                    {Vec2(5, 5), Vec2(6, 5), Vec2(5, 6)}};
  layout.placed = {1, 1, 1};
  const auto pairs = overlappingPairs(layout);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0], std::make_pair(0, 1));
}

TEST(Overlaps, GridMatchesAllPairs) {
  std::mt19937_64 rng(6);
  const std::vector<TriMesh> meshes = {makeIcosphere(2), makeTorus(1.0, 0.6, 12, 8), makeUvSphere(8, 12),
                                       makeBox(1, 3, 0.2)};
  int overlapping = 0;
  for (const TriMesh& mesh : meshes) {
    for (int trial = 0; trial < 30; ++trial) {
      const UnfoldTree tree = oracle::randomWalkTree(mesh, rng);
      const Layout layout = unfold(mesh, tree);
      const OverlapSet set = countOverlaps(mesh, layout);
      ASSERT_EQ(set.pairs, oracle::allPairsOverlaps(layout));
      overlapping += !set.empty();
      int sum = 0;
      for (int f = 0; f < mesh.faceSlots(); ++f) sum += set.perFaceCount[f];
      EXPECT_EQ(sum, 2 * set.count());
    }
  }
  EXPECT_GT(overlapping, 30);
}

TEST(Overlaps, PerEdgeCountIsDistinctPartners) {
  Layout layout;
  const TriMesh mesh = makeIcosphere(1);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const UnfoldTree tree = oracle::randomWalkTree(mesh, rng);
    const OverlapSet set = countOverlaps(mesh, unfold(mesh, tree));
    for (int e = 0; e < mesh.edgeSlots(); ++e) {
      const auto f = mesh.edgeFaces(e);
      std::set<int> others;
      for (const auto& [a, b] : set.pairs) {
        if (a == f[0] || a == f[1]) others.insert(b);
        if (b == f[0] || b == f[1]) others.insert(a);
      }
      others.erase(f[0]);
      others.erase(f[1]);
      ASSERT_EQ(set.perEdgeCount[e], static_cast<int>(others.size()));
    }
  }
}

TEST(Overlaps, FaceTransformAndLift) {
  const TriMesh mesh = makeTorus(1.0, 0.4, 10, 6);
  std::mt19937_64 rng(10);
  const UnfoldTree tree = oracle::randomWalkTree(mesh, rng);
  const Layout layout = unfold(mesh, tree);
  for (int f = 0; f < mesh.numFaces(); ++f) {
    const FaceTransform t = faceTransform(mesh, layout, f);
    const auto p = mesh.facePositions(f);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR((t.apply(p[k]) - layout.corners[f][k]).norm(), 0.0, 1e-9);
    EXPECT_NEAR((t.rotation * t.rotation.transpose() - Eigen::Matrix2d::Identity()).norm(), 0.0, 1e-12);
    const auto lift = liftMatrix(mesh, layout, f);
    const Vec2 d = layout.corners[f][2] - layout.corners[f][0];
    EXPECT_NEAR((lift * d - (p[2] - p[0])).norm(), 0.0, 1e-9);
  }
}

// --- tree repair under collapse ---------------------------------------------

int findCollapsible(const TriMesh& mesh, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, mesh.halfedgeSlots() - 1);
  for (;;) {
    const int h = pick(rng);
    if (mesh.faceAlive(TriMesh::faceOf(h)) && mesh.collapseIsLinkValid(h)) return h;
  }
}

TEST(CollapseTree, LeafFacesAreDropped) {
  TriMesh mesh = makeIcosahedron();
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const UnfoldTree tree = oracle::randomWalkTree(mesh, rng);
    const int h = findCollapsible(mesh, rng);
    const int f0 = TriMesh::faceOf(h), f1 = TriMesh::faceOf(mesh.twin(h));
    auto degree = [&](int f) {
      int d = 0;
      for (int k = 0; k < 3; ++k) d += tree.isHinge(mesh.edgeOf(3 * f + k));
      return d;
    };
    if (tree.isHinge(mesh.edgeOf(h)) || degree(f0) != 1 || degree(f1) != 1) continue;
    std::vector<std::uint8_t> expected = tree.hinge;
    for (int k = 0; k < 3; ++k) {
      expected[mesh.edgeOf(3 * f0 + k)] = 0;
      expected[mesh.edgeOf(3 * f1 + k)] = 0;
    }
    const CollapseRecord rec = mesh.collapse(h, mesh.position(mesh.start(h)));
    const UnfoldTree out = applyCollapseToTree(mesh, tree, rec);
    EXPECT_EQ(out.hinge, expected);
    EXPECT_TRUE(oracle::isSpanningTree(mesh, out));
    mesh.revert(rec);
    return;
  }
  FAIL() << "no leaf pair found";
}

// Three hand-built situations around one collapse on the icosahedron:
// the removed faces are leaves, they lie on a path, or they join subtrees.
TEST(CollapseTree, ThreeNeighbourhoodCases) {
  TriMesh mesh = makeIcosahedron();
  const int h = 0;
  ASSERT_TRUE(mesh.collapseIsLinkValid(h));
  const int g = mesh.twin(h);
  const int e0 = mesh.edgeOf(h);
  const int eh1 = mesh.edgeOf(TriMesh::next(h)), eh2 = mesh.edgeOf(TriMesh::prev(h));
  const int eg1 = mesh.edgeOf(TriMesh::next(g)), eg2 = mesh.edgeOf(TriMesh::prev(g));
  std::mt19937_64 rng(13);

  // Complete a partial hinge set to a spanning tree without touching the
  // one-ring links beyond those given.
  auto complete = [&](std::vector<std::uint8_t> hinge, const std::vector<int>& forbidden) {
    UnionFind uf(mesh.faceSlots());
    for (int e = 0; e < mesh.edgeSlots(); ++e) {
      if (hinge[e]) {
        const auto f = mesh.edgeFaces(e);
        uf.unite(f[0], f[1]);
      }
    }
    for (int e = 0; e < mesh.edgeSlots(); ++e) {
      if (hinge[e] || std::find(forbidden.begin(), forbidden.end(), e) != forbidden.end()) continue;
      const auto f = mesh.edgeFaces(e);
      if (uf.unite(f[0], f[1])) hinge[e] = 1;
    }
    return makeTree(mesh, hinge);
  };
  const std::vector<int> ring = {e0, eh1, eh2, eg1, eg2};

  {  // leaves: only h1 and g1 are hinges
    std::vector<std::uint8_t> hinge(mesh.edgeSlots(), 0);
    hinge[eh1] = hinge[eg1] = 1;
    const UnfoldTree tree = complete(hinge, ring);
    ASSERT_TRUE(oracle::isSpanningTree(mesh, tree));
    const CollapseRecord rec = mesh.collapse(h, mesh.position(mesh.start(h)));
    const UnfoldTree out = applyCollapseToTree(mesh, tree, rec);
    EXPECT_TRUE(oracle::isSpanningTree(mesh, out));
    for (int e = 0; e < mesh.edgeSlots(); ++e) {
      if (std::find(ring.begin(), ring.end(), e) == ring.end()) EXPECT_EQ(out.hinge[e], tree.hinge[e]);
    }
    EXPECT_FALSE(out.isHinge(rec.mergedEdges[0]));
    EXPECT_FALSE(out.isHinge(rec.mergedEdges[1]));
    mesh.revert(rec);
  }
  {  // path: N1 - F0 - N2 and N3 - F1 - N4 chains become direct links
    std::vector<std::uint8_t> hinge(mesh.edgeSlots(), 0);
    hinge[eh1] = hinge[eh2] = hinge[eg1] = hinge[eg2] = hinge[e0] = 1;
    const UnfoldTree tree = complete(hinge, ring);
    ASSERT_TRUE(oracle::isSpanningTree(mesh, tree));
    const CollapseRecord rec = mesh.collapse(h, mesh.position(mesh.start(h)));
    const UnfoldTree out = applyCollapseToTree(mesh, tree, rec);
    EXPECT_TRUE(oracle::isSpanningTree(mesh, out));
    EXPECT_TRUE(out.isHinge(rec.mergedEdges[0]));
    EXPECT_TRUE(out.isHinge(rec.mergedEdges[1]));
    mesh.revert(rec);
  }
  {  // junction: the collapsed edge joins two subtrees hanging off F0 and F1
    std::vector<std::uint8_t> hinge(mesh.edgeSlots(), 0);
    hinge[e0] = hinge[eh1] = hinge[eg2] = 1;
    const UnfoldTree tree = complete(hinge, ring);
    ASSERT_TRUE(oracle::isSpanningTree(mesh, tree));
    const CollapseRecord rec = mesh.collapse(h, mesh.position(mesh.start(h)));
    const UnfoldTree out = applyCollapseToTree(mesh, tree, rec);
    EXPECT_TRUE(oracle::isSpanningTree(mesh, out));
    std::vector<int> spokes;
    mesh.forEachOutgoing(rec.survivor, [&](int s) { spokes.push_back(mesh.edgeOf(s)); });
    int added = 0;
    for (int e = 0; e < mesh.edgeSlots(); ++e) {
      if (!mesh.edgeAlive(e) || out.hinge[e] == tree.hinge[e]) continue;
      if (out.hinge[e]) {
        EXPECT_NE(std::find(spokes.begin(), spokes.end(), e), spokes.end());
        ++added;
      }
    }
    EXPECT_EQ(added, 1);
    mesh.revert(rec);
  }
  (void)rng;
}

TEST(CollapseTree, FuzzStaysSpanning) {
  std::mt19937_64 rng(14);
  std::vector<TriMesh> meshes = {makeUvSphere(6, 5), makeIcosphere(2), makeTorus(1.0, 0.4, 12, 6)};
  for (TriMesh& mesh : meshes) {
    for (int trial = 0; trial < 200; ++trial) {
      UnfoldTree tree = oracle::randomWalkTree(mesh, rng);
      std::vector<CollapseRecord> records;
      for (int step = 0; step < 5 && mesh.numFaces() > 8; ++step) {
        const int h = findCollapsible(mesh, rng);
        records.push_back(mesh.collapse(h, 0.5 * (mesh.position(mesh.start(h)) + mesh.position(mesh.end(h)))));
        tree = applyCollapseToTree(mesh, tree, records.back());
        ASSERT_TRUE(oracle::isSpanningTree(mesh, tree));
        ASSERT_TRUE(checkTree(mesh, tree).ok());
      }
      for (auto it = records.rbegin(); it != records.rend(); ++it) mesh.revert(*it);
    }
  }
}

}  // namespace
