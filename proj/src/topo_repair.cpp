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

#include "papernet/topo_repair.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <tuple>

#include "papernet/validate.hpp"

namespace papernet {

const char* toString(Placement p) {
  switch (p) {
    case Placement::kMidpoint: return "midpoint";
    case Placement::kEndA: return "endpoint-a";
    case Placement::kEndB: return "endpoint-b";
  }
  return "?";
}

namespace {

struct Move {
  int halfedge;
  Vec3 position;
};

Move moveFor(const TriMesh& mesh, int edge, Placement p) {
  const int h = mesh.edgeHalfedge(edge);
  const Vec3& a = mesh.position(mesh.start(h));
  const Vec3& b = mesh.position(mesh.end(h));
  switch (p) {
    case Placement::kMidpoint: return {h, 0.5 * (a + b)};
    case Placement::kEndA: return {h, a};
    case Placement::kEndB: return {mesh.twin(h), b};
  }
  return {h, a};
}

/// Faces around the survivor after the collapse, with their normals before.
struct Neighborhood {
  std::vector<int> faces;
  std::vector<Vec3> normals;
};

Neighborhood neighborhoodBefore(const TriMesh& mesh, int v0, int v1, int skip0, int skip1) {
  std::map<int, Vec3> normals;
  for (int v : {v0, v1}) {
    for (int f : mesh.vertexFaces(v)) {
      if (f != skip0 && f != skip1) normals.emplace(f, mesh.faceNormal(f));
    }
  }
  Neighborhood n;
  for (const auto& [f, normal] : normals) {
    n.faces.push_back(f);
    n.normals.push_back(normal);
  }
  return n;
}

/// Sum of squared distances from p to the planes of the faces around the
/// edge's endpoints.
double planeError(const TriMesh& mesh, int edge, const Vec3& p) {
  const auto ends = mesh.edgeVertices(edge);
  std::vector<int> faces = mesh.vertexFaces(ends[0]);
  const auto more = mesh.vertexFaces(ends[1]);
  faces.insert(faces.end(), more.begin(), more.end());
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  double sum = 0.0;
  for (int f : faces) {
    const Vec3 n = mesh.faceNormal(f);
    const double d = n.dot(p - mesh.position(mesh.face(f)[0]));
    sum += d * d;
  }
  return sum;
}

}  // namespace

CollapseOutcome tryCollapse(UnfoldState& state, int edge, const TopoConfig& config, bool force) {
  CollapseOutcome out;
  out.edge = edge;
  out.overlapsBefore = state.overlapCount();
  TriMesh& mesh = state.mesh;
  if (edge < 0 || edge >= mesh.edgeSlots() || !mesh.edgeAlive(edge)) {
    out.reason = "dead edge";
    return out;
  }
  const int h = mesh.edgeHalfedge(edge);
  const bool pinA = state.isPinned(mesh.start(h));
  const bool pinB = state.isPinned(mesh.end(h));
  std::vector<Placement> placements;
  if (pinA && pinB) {
    out.reason = "both endpoints pinned";
    return out;
  } else if (pinA) {
    placements = {Placement::kEndA};
  } else if (pinB) {
    placements = {Placement::kEndB};
  } else if (config.smartPlacement) {
    placements = {Placement::kMidpoint, Placement::kEndA, Placement::kEndB};
  } else {
    placements = {Placement::kMidpoint};
  }

  int bestCount = -1;
  double bestError = 0.0;
  Placement best = Placement::kMidpoint;
  for (Placement p : placements) {
    const Move m = moveFor(mesh, edge, p);
    const double error = planeError(mesh, edge, m.position);
    if (!mesh.collapseIsLinkValid(m.halfedge)) {
      out.reason = "link condition";
      continue;
    }
    const int g = mesh.twin(m.halfedge);
    const Neighborhood nb = neighborhoodBefore(mesh, mesh.start(m.halfedge), mesh.end(m.halfedge),
                                               TriMesh::faceOf(m.halfedge), TriMesh::faceOf(g));
    const CollapseRecord rec = mesh.collapse(m.halfedge, m.position);
    const EditIssue issue = checkLocalEdit(mesh, nb.faces, nb.normals);
    if (issue != EditIssue::kNone) {
      mesh.revert(rec);
      out.reason = toString(issue);
      continue;
    }
    const UnfoldTree tree = applyCollapseToTree(mesh, state.tree, rec);
    const int count = overlapCount(mesh, tree);
    mesh.revert(rec);
    if (bestCount < 0 || count < bestCount || (count == bestCount && error < bestError)) {
      bestCount = count;
      bestError = error;
      best = p;
    }
  }
  out.bestOverlaps = bestCount;
  if (bestCount < 0) return out;
  if (!force && bestCount >= out.overlapsBefore) {
    out.reason = "no improvement";
    return out;
  }
  const Move m = moveFor(mesh, edge, best);
  out.previousTree = state.tree;
  out.record = mesh.collapse(m.halfedge, m.position);
  state.tree = applyCollapseToTree(mesh, state.tree, out.record);
  state.refresh();
  out.accepted = true;
  out.placement = best;
  out.reason.clear();
  return out;
}

void undoCollapse(UnfoldState& state, const CollapseOutcome& outcome) {
  if (!outcome.accepted) return;
  state.mesh.revert(outcome.record);
  state.tree = outcome.previousTree;
  state.refresh();
}

namespace {

/// Max-queue of (overlap involvement, length, -edge id) with lazy updates.
class CollapseQueue {
 public:
  void push(const TriMesh& mesh, const OverlapSet& overlaps, int e) {
    if (e < 0 || !mesh.edgeAlive(e)) return;
    heap_.emplace(overlaps.perEdgeCount[e], mesh.edgeLength(e), -e);
  }
  /// Pops the next edge whose stored priority is still current.
  int pop(const TriMesh& mesh, const OverlapSet& overlaps) {
    while (!heap_.empty()) {
      const auto [count, length, negId] = heap_.top();
      heap_.pop();
      const int e = -negId;
      if (!mesh.edgeAlive(e)) continue;
      if (count != overlaps.perEdgeCount[e] || length != mesh.edgeLength(e)) {
        push(mesh, overlaps, e);
        continue;
      }
      return e;
    }
    return -1;
  }

 private:
  std::priority_queue<std::tuple<int, double, int>> heap_;
};

/// Runs the queue once; returns the number of accepted collapses.
int drain(UnfoldState& state, CollapseQueue& queue, const TopoConfig& config, PassResult& r,
          std::set<int>& tried, std::map<int, int>& bestCounts) {
  int accepted = 0;
  for (;;) {
    if (state.overlapCount() == 0) break;
    const int e = queue.pop(state.mesh, state.overlaps);
    if (e < 0) break;
    if (tried.count(e)) continue;
    tried.insert(e);
    r.tried.push_back(e);
    const CollapseOutcome o = tryCollapse(state, e, config);
    if (!o.accepted) {
      if (o.bestOverlaps >= 0) bestCounts[e] = o.bestOverlaps;
      continue;
    }
    ++accepted;
    // Involvement changed everywhere the layout moved; retry everything.
    tried.clear();
    bestCounts.clear();
    for (int x = 0; x < state.mesh.edgeSlots(); ++x) {
      if (state.mesh.edgeAlive(x) && state.overlaps.perEdgeCount[x] > 0) queue.push(state.mesh, state.overlaps, x);
    }
  }
  return accepted;
}

}  // namespace

PassResult decimationPass(UnfoldState& state, int iteration, const TopoConfig& config) {
  PassResult r;
  r.before = state.overlapCount();
  if (r.before == 0) return r;
  const TriMesh& mesh = state.mesh;

  CollapseQueue queue;
  for (int e = 0; e < mesh.edgeSlots(); ++e) {
    if (mesh.edgeAlive(e) && state.overlaps.perEdgeCount[e] > 0) queue.push(mesh, state.overlaps, e);
  }
  std::set<int> tried;
  std::map<int, int> bestCounts;
  r.accepted = drain(state, queue, config, r, tried, bestCounts);

  if (r.accepted == 0 && config.broaden && iteration > 1) {
    r.broadened = true;
    std::set<int> ring;
    for (int e = 0; e < mesh.edgeSlots(); ++e) {
      if (!mesh.edgeAlive(e) || state.overlaps.perEdgeCount[e] == 0) continue;
      for (int v : mesh.edgeVertices(e)) {
        mesh.forEachOutgoing(v, [&](int h) { ring.insert(mesh.edgeOf(h)); });
      }
    }
    for (int e : ring) {
      if (!tried.count(e)) queue.push(mesh, state.overlaps, e);
    }
    r.accepted = drain(state, queue, config, r, tried, bestCounts);
  }

  if (r.accepted == 0 && config.lowerExpectations && !bestCounts.empty()) {
    int edge = -1, count = 0;
    for (const auto& [e, c] : bestCounts) {
      if (edge < 0 || c < count) {
        edge = e;
        count = c;
      }
    }
    const CollapseOutcome o = tryCollapse(state, edge, config, true);
    if (o.accepted) {
      r.lowered = true;
      r.loweredEdge = edge;
    }
  }
  r.after = state.overlapCount();
  return r;
}

}  // namespace papernet
