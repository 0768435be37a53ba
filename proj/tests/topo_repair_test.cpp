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
#include <optional>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "snapshot.hpp"
#include "papernet/init.hpp"
#include "papernet/shapes.hpp"
#include "papernet/topo_repair.hpp"
#include "papernet/validate.hpp"

namespace {

using namespace papernet;
using testutil::snapshot;

TriMesh jittered(TriMesh mesh, double amount, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-amount, amount);
  for (int v = 0; v < mesh.vertexSlots(); ++v) {
    mesh.setPosition(v, mesh.position(v) + Vec3(u(rng), u(rng), u(rng)));
  }
  return mesh;
}

std::vector<TriMesh> fixtureMeshes() {
  std::vector<TriMesh> out;
  out.push_back(jittered(makeIcosphere(1), 0.12, 1));
  out.push_back(jittered(makeUvSphere(8, 12), 0.06, 2));
  out.push_back(makeTorus(1.0, 0.45, 12, 8));
  out.push_back(jittered(makeIcosphere(2), 0.03, 3));
  return out;
}

/// States with overlaps from random trees on the fixture meshes.
std::vector<UnfoldState> overlappingStates(int perMesh, std::uint64_t seed) {
  std::vector<UnfoldState> out;
  std::mt19937_64 rng(seed);
  for (const TriMesh& mesh : fixtureMeshes()) {
    for (int k = 0; k < perMesh; ++k) {
      UnfoldState s(mesh, oracle::randomWalkTree(mesh, rng), {});
      if (s.overlapCount() > 0) out.push_back(std::move(s));
    }
  }
  return out;
}

int oracleCount(const UnfoldState& s) { return static_cast<int>(oracle::allPairsOverlaps(s.layout).size()); }

std::vector<int> overlappingEdges(const UnfoldState& s) {
  std::vector<int> out;
  for (int e = 0; e < s.mesh.edgeSlots(); ++e) {
    if (s.mesh.edgeAlive(e) && s.overlaps.perEdgeCount[e] > 0) out.push_back(e);
  }
  return out;
}

/// Independent flip test: collapse on a copy and compare every face around
/// the survivor against its normal before.
enum class OracleVerdict { kLinkInvalid, kFlips, kOk };

OracleVerdict oracleCollapse(const TriMesh& mesh, int h, const Vec3& target) {
  if (!mesh.collapseIsLinkValid(h)) return OracleVerdict::kLinkInvalid;
  std::vector<int> faces = mesh.vertexFaces(mesh.start(h));
  for (int f : mesh.vertexFaces(mesh.end(h))) faces.push_back(f);
  std::vector<Vec3> before(mesh.faceSlots(), Vec3::Zero());
  for (int f : faces) {
    const auto p = mesh.facePositions(f);
    before[f] = (p[1] - p[0]).cross(p[2] - p[0]);
  }
  TriMesh copy = mesh;
  copy.collapse(h, target);
  bool flips = false;
  for (int f : faces) {
    if (!copy.faceAlive(f)) continue;
    const auto p = copy.facePositions(f);
    const Vec3 n = (p[1] - p[0]).cross(p[2] - p[0]);
    if (n.norm() < 1e-9) return OracleVerdict::kOk;  // degenerate; not a clean flip
    flips |= n.dot(before[f]) < 0.0;
  }
  return flips ? OracleVerdict::kFlips : OracleVerdict::kOk;
}

bool everyPlacementFlips(const TriMesh& mesh, int e) {
  const int h = mesh.edgeHalfedge(e);
  const Vec3 a = mesh.position(mesh.start(h));
  const Vec3 b = mesh.position(mesh.end(h));
  const std::array<std::pair<int, Vec3>, 3> moves = {
      std::pair{h, Vec3(0.5 * (a + b))}, std::pair{h, a}, std::pair{mesh.twin(h), b}};
  for (const auto& [half, target] : moves) {
    if (oracleCollapse(mesh, half, target) != OracleVerdict::kFlips) return false;
  }
  return true;
}

// --- tryCollapse -------------------------------------------------------------

TEST(TryCollapse, AcceptedCollapsesMatchOracle) {
  int accepted = 0, rejected = 0;
  for (const UnfoldState& s : overlappingStates(3, 7)) {
    const auto edges = overlappingEdges(s);
    const auto shot = snapshot(s.mesh);
    for (std::size_t i = 0; i < edges.size() && i < 12; ++i) {
      UnfoldState t = s;
      const CollapseOutcome o = tryCollapse(t, edges[i], {});
      EXPECT_EQ(o.overlapsBefore, s.overlapCount());
      if (!o.accepted) {
        ++rejected;
        EXPECT_EQ(snapshot(t.mesh), shot);
        EXPECT_EQ(t.tree, s.tree);
        EXPECT_FALSE(o.reason.empty());
        continue;
      }
      ++accepted;
      EXPECT_EQ(o.bestOverlaps, t.overlapCount());
      EXPECT_EQ(oracleCount(t), t.overlapCount());
      EXPECT_LT(t.overlapCount(), s.overlapCount());
      EXPECT_TRUE(oracle::isSpanningTree(t.mesh, t.tree));
      EXPECT_EQ(static_cast<int>(t.tree.hingeEdges(t.mesh).size()), t.mesh.numFaces() - 1);
      EXPECT_TRUE(validate(t.mesh.compacted()).acceptable());
    }
  }
  EXPECT_GT(accepted, 5);
  EXPECT_GT(rejected, 5);
}

TEST(TryCollapse, SingleCollapseClearsRemainingOverlap) {
  // Drive states down with passes until one collapse finishes the job.
  bool found = false;
  for (UnfoldState& s : overlappingStates(2, 11)) {
    for (int it = 1; it <= 40 && !found && s.overlapCount() > 0; ++it) {
      if (s.overlapCount() <= 2) {
        for (int e : overlappingEdges(s)) {
          UnfoldState trial = s;
          const CollapseOutcome o = tryCollapse(trial, e, {});
          if (o.accepted && trial.overlapCount() == 0) {
            EXPECT_EQ(oracleCount(trial), 0);
            EXPECT_TRUE(oracle::isSpanningTree(trial.mesh, trial.tree));
            EXPECT_EQ(trial.mesh.numFaces(), s.mesh.numFaces() - 2);
            found = true;
            break;
          }
        }
      }
      decimationPass(s, it, {});
    }
    if (found) break;
  }
  EXPECT_TRUE(found);
}

TEST(TryCollapse, RejectsWhenEveryPlacementFlips) {
  int checked = 0;
  std::mt19937_64 rng(21);
  for (std::uint64_t seed = 1; seed <= 12 && checked < 5; ++seed) {
    const TriMesh mesh = jittered(makeIcosphere(2), 0.12, seed);
    for (int e = 0; e < mesh.edgeSlots() && checked < 5; ++e) {
      if (!everyPlacementFlips(mesh, e)) continue;
      UnfoldState s(mesh, oracle::randomWalkTree(mesh, rng), {});
      const auto shot = snapshot(s.mesh);
      const CollapseOutcome o = tryCollapse(s, e, {}, true);
      EXPECT_FALSE(o.accepted);
      EXPECT_EQ(o.bestOverlaps, -1);
      EXPECT_EQ(o.reason, "flipped");
      EXPECT_EQ(snapshot(s.mesh), shot);
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(TryCollapse, UndoRestoresMeshAndTreeBitwise) {
  int undone = 0;
  for (UnfoldState& s : overlappingStates(2, 13)) {
    const auto shot = snapshot(s.mesh);
    const UnfoldTree tree = s.tree;
    const auto pairs = s.overlaps.pairs;
    for (int e : overlappingEdges(s)) {
      const CollapseOutcome o = tryCollapse(s, e, {}, true);
      if (!o.accepted) continue;
      undoCollapse(s, o);
      EXPECT_EQ(snapshot(s.mesh), shot);
      EXPECT_EQ(s.tree, tree);
      EXPECT_EQ(s.overlaps.pairs, pairs);
      ++undone;
      break;
    }
  }
  EXPECT_GT(undone, 5);
}

TEST(TryCollapse, PinnedEndpoints) {
  const TriMesh mesh = jittered(makeIcosphere(2), 0.03, 3);
  std::mt19937_64 rng(5);
  int oneSide = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const UnfoldTree tree = oracle::randomWalkTree(mesh, rng);
    const int e = std::uniform_int_distribution<int>(0, mesh.edgeSlots() - 1)(rng);
    const auto ends = mesh.edgeVertices(e);

    std::vector<char> both(mesh.vertexSlots(), 0);
    both[ends[0]] = both[ends[1]] = 1;
    UnfoldState pinnedBoth(mesh, tree, both);
    const CollapseOutcome o = tryCollapse(pinnedBoth, e, {}, true);
    EXPECT_FALSE(o.accepted);
    EXPECT_EQ(o.reason, "both endpoints pinned");

    std::vector<char> one(mesh.vertexSlots(), 0);
    const int keep = ends[trial % 2];
    one[keep] = 1;
    UnfoldState pinnedOne(mesh, tree, one);
    const CollapseOutcome p = tryCollapse(pinnedOne, e, {}, true);
    if (!p.accepted) continue;
    ++oneSide;
    EXPECT_TRUE(pinnedOne.mesh.vertexAlive(keep));
    EXPECT_EQ(pinnedOne.mesh.position(keep), mesh.position(keep));
  }
  EXPECT_GT(oneSide, 5);
}

TEST(TryCollapse, SimpleCollapseUsesMidpoint) {
  TopoConfig simple;
  simple.smartPlacement = false;
  int accepted = 0;
  for (UnfoldState& s : overlappingStates(2, 17)) {
    for (int e : overlappingEdges(s)) {
      const auto h = s.mesh.edgeHalfedge(e);
      const Vec3 mid = 0.5 * (s.mesh.position(s.mesh.start(h)) + s.mesh.position(s.mesh.end(h)));
      const CollapseOutcome o = tryCollapse(s, e, simple, true);
      if (!o.accepted) continue;
      EXPECT_EQ(o.placement, Placement::kMidpoint);
      EXPECT_EQ(s.mesh.position(o.record.survivor), mid);
      ++accepted;
      break;
    }
  }
  EXPECT_GT(accepted, 5);
}

TEST(TryCollapse, BestPlacementIsMinimumOverPlacements) {
  // Each placement is replayed by hand; the chosen one must have the
  // minimum overlap count.
  int checked = 0;
  for (UnfoldState& s : overlappingStates(3, 19)) {
    for (int e : overlappingEdges(s)) {
      const int h = s.mesh.edgeHalfedge(e);
      const Vec3 a = s.mesh.position(s.mesh.start(h));
      const Vec3 b = s.mesh.position(s.mesh.end(h));
      int best = -1;
      for (const auto& [half, target] :
           {std::pair{h, Vec3(0.5 * (a + b))}, std::pair{h, a}, std::pair{s.mesh.twin(h), b}}) {
        if (oracleCollapse(s.mesh, half, target) != OracleVerdict::kOk) continue;
        TriMesh copy = s.mesh;
        const CollapseRecord rec = copy.collapse(half, target);
        if (!validate(copy.compacted()).acceptable()) continue;
        const UnfoldTree tree = applyCollapseToTree(copy, s.tree, rec);
        const int n = static_cast<int>(oracle::allPairsOverlaps(unfold(copy, tree)).size());
        if (best < 0 || n < best) best = n;
      }
      UnfoldState trial = s;
      const CollapseOutcome o = tryCollapse(trial, e, {});
      if (best < 0 || o.bestOverlaps < 0) continue;
      EXPECT_EQ(o.bestOverlaps, best) << e;
      if (++checked >= 6) break;
    }
  }
  EXPECT_GT(checked, 10);
}

// --- decimationPass ----------------------------------------------------------

TEST(DecimationPass, ZeroOverlapIsNoop) {
  const TriMesh mesh = makeIcosphere(1);
  UnfoldState s(mesh, minPerimeterTree(mesh), {});
  ASSERT_EQ(s.overlapCount(), 0);
  const auto shot = snapshot(s.mesh);
  const PassResult r = decimationPass(s, 3, {});
  EXPECT_EQ(r.accepted, 0);
  EXPECT_TRUE(r.tried.empty());
  EXPECT_FALSE(r.lowered);
  EXPECT_EQ(snapshot(s.mesh), shot);
}

TEST(DecimationPass, FuzzedPassesKeepInvariants) {
  std::mt19937_64 rng(29);
  int lowered = 0, passes = 0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const TriMesh mesh = jittered(makeUvSphere(16, 16), 0.03, seed);
    ASSERT_GE(mesh.numFaces(), 400);
    UnfoldState s(mesh, randomSpanningTree(mesh, rng()), {});
    for (int it = 1; it <= 6 && s.overlapCount() > 0; ++it) {
      const PassResult r = decimationPass(s, it, {});
      ++passes;
      EXPECT_EQ(r.before >= 0, true);
      EXPECT_EQ(r.after, s.overlapCount());
      EXPECT_EQ(oracleCount(s), s.overlapCount());
      EXPECT_TRUE(oracle::isSpanningTree(s.mesh, s.tree));
      EXPECT_TRUE(validate(s.mesh.compacted()).acceptable());
      if (r.lowered) {
        ++lowered;
        EXPECT_EQ(r.accepted, 0);
      } else {
        EXPECT_LE(r.after, r.before);
      }
      if (r.accepted > 0) EXPECT_LT(r.after, r.before);
    }
  }
  EXPECT_GT(passes, 4);
  (void)lowered;
}

/// Applies accepted collapses until a pass would find none.
std::optional<UnfoldState> stuckState() {
  for (UnfoldState& s : overlappingStates(3, 31)) {
    TopoConfig noExit;
    noExit.broaden = false;
    noExit.lowerExpectations = false;
    for (int it = 1; it <= 30; ++it) {
      const PassResult r = decimationPass(s, 1, noExit);
      if (s.overlapCount() == 0) break;
      if (r.accepted == 0) return s;
    }
  }
  return std::nullopt;
}

TEST(DecimationPass, LoweringExpectationsPicksArgmin) {
  const std::optional<UnfoldState> stuck = stuckState();
  ASSERT_TRUE(stuck.has_value());

  // Scan every queued candidate independently.
  int bestEdge = -1, bestCount = 0;
  for (int e : overlappingEdges(*stuck)) {
    UnfoldState trial = *stuck;
    const CollapseOutcome o = tryCollapse(trial, e, {}, true);
    if (!o.accepted) continue;
    EXPECT_GE(o.bestOverlaps, stuck->overlapCount());
    if (bestEdge < 0 || o.bestOverlaps < bestCount) {
      bestEdge = e;
      bestCount = o.bestOverlaps;
    }
  }
  ASSERT_GE(bestEdge, 0);

  UnfoldState s = *stuck;
  TopoConfig config;
  config.broaden = false;
  const int facesBefore = s.mesh.numFaces();
  const PassResult r = decimationPass(s, 1, config);
  EXPECT_TRUE(r.lowered);
  EXPECT_EQ(r.accepted, 0);
  EXPECT_EQ(r.loweredEdge, bestEdge);
  EXPECT_EQ(r.after, bestCount);
  EXPECT_EQ(s.mesh.numFaces(), facesBefore - 2);
}

TEST(DecimationPass, BroadeningOnlyAfterFirstIteration) {
  const std::optional<UnfoldState> stuck = stuckState();
  ASSERT_TRUE(stuck.has_value());
  TopoConfig config;
  config.lowerExpectations = false;
  UnfoldState first = *stuck;
  EXPECT_FALSE(decimationPass(first, 1, config).broadened);
  UnfoldState later = *stuck;
  const PassResult r = decimationPass(later, 2, config);
  EXPECT_TRUE(r.broadened);
  EXPECT_GT(r.tried.size(), overlappingEdges(*stuck).size());
}

}  // namespace
