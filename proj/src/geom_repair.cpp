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

#include "papernet/geom_repair.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "papernet/geometry.hpp"
#include "papernet/predicates.hpp"
#include "papernet/strain.hpp"
#include "papernet/validate.hpp"

namespace papernet {

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool hasVertex(const Face& f, int v) { return f[0] == v || f[1] == v || f[2] == v; }

bool noNewPairs(const OverlapSet& before, const OverlapSet& after) {
  return std::includes(before.pairs.begin(), before.pairs.end(), after.pairs.begin(), after.pairs.end());
}

bool hasPair(const OverlapSet& overlaps, std::pair<int, int> p) {
  if (p.first > p.second) std::swap(p.first, p.second);
  return std::binary_search(overlaps.pairs.begin(), overlaps.pairs.end(), p);
}

std::vector<Vec3> normalsOf(const TriMesh& mesh, const std::vector<int>& faces) {
  std::vector<Vec3> n;
  n.reserve(faces.size());
  for (int f : faces) n.push_back(mesh.faceNormal(f));
  return n;
}

/// Snapshot of everything a vertex move can change.
struct Backup {
  std::vector<std::pair<int, Vec3>> positions;
  Layout layout;
  OverlapSet overlaps;

  Backup(const UnfoldState& s, const std::vector<int>& vertices) : layout(s.layout), overlaps(s.overlaps) {
    for (int v : vertices) positions.emplace_back(v, s.mesh.position(v));
  }
  void restore(UnfoldState& s) const {
    for (const auto& [v, p] : positions) s.mesh.setPosition(v, p);
    s.layout = layout;
    s.overlaps = overlaps;
  }
};

}  // namespace

// --- vertex image inside a face ---------------------------------------------

std::vector<ImageInFace> findImagesInFaces(const TriMesh& mesh, const Layout& layout, const OverlapSet& overlaps) {
  std::vector<ImageInFace> out;
  for (const auto& [a, b] : overlaps.pairs) {
    for (const auto& [from, into] : {std::pair{a, b}, std::pair{b, a}}) {
      const auto& t = layout.corners[into];
      const Face target = mesh.face(into);
      for (int k = 0; k < 3; ++k) {
        const int h = 3 * from + k;
        const int image = layout.cornerImage[h];
        if (image < 0 || hasVertex(target, mesh.start(h))) continue;
        if (predicates::pointInTriangleStrict2d(layout.corners[from][k], t[0], t[1], t[2])) {
          out.push_back({image, into});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double exitEpsilon(const TriMesh& mesh, int face) {
  double sum = 0.0;
  for (int k = 0; k < 3; ++k) sum += mesh.edgeLength(mesh.edgeOf(3 * face + k));
  return 1e-4 * sum / 3.0;
}

bool resolveVertexInTriangle(UnfoldState& state, const ImageInFace& target) {
  const TriMesh& mesh = state.mesh;
  const Layout& layout = state.layout;
  if (target.image < 0 || target.image >= static_cast<int>(layout.images.size())) return false;
  if (target.face < 0 || target.face >= mesh.faceSlots() || !mesh.faceAlive(target.face)) return false;
  if (!layout.isPlaced(target.face)) return false;
  const VertexImage& image = layout.images[target.image];
  const int v = image.vertex;
  if (state.isPinned(v) || hasVertex(mesh.face(target.face), v)) return false;
  const Vec2 u = image.point;
  const auto& t = layout.corners[target.face];
  if (!predicates::pointInTriangleStrict2d(u, t[0], t[1], t[2])) return false;

  // Nearest boundary point, pushed just outside.
  double best = std::numeric_limits<double>::infinity();
  Vec2 exit = u;
  for (int i = 0; i < 3; ++i) {
    const Vec2& a = t[i];
    const Vec2& b = t[(i + 1) % 3];
    const Vec2 q = closestPointOnSegment<double, 2>(u, a, b);
    const double d = (q - u).norm();
    if (d >= best) continue;
    best = d;
    Vec2 n(b.y() - a.y(), a.x() - b.x());
    n.normalize();
    if (n.dot(t[(i + 2) % 3] - a) > 0.0) n = -n;
    exit = q + exitEpsilon(mesh, target.face) * n;
  }
  const Vec2 du = exit - u;

  // Lift through the incident face whose corner wedge contains du.
  int liftFace = -1;
  for (int h : image.corners) {
    const int f = TriMesh::faceOf(h);
    const int k = h % 3;
    const Vec2 e1 = layout.corners[f][(k + 1) % 3] - u;
    const Vec2 e2 = layout.corners[f][(k + 2) % 3] - u;
    const double s = cross2(e1, e2);
    if (cross2(e1, du) * s >= 0.0 && cross2(du, e2) * s >= 0.0) {
      liftFace = f;
      break;
    }
  }
  if (liftFace < 0) liftFace = TriMesh::faceOf(image.corners.front());
  const Vec3 dv = liftMatrix(mesh, layout, liftFace) * du;

  const std::vector<int> faces = mesh.vertexFaces(v);
  const std::vector<Vec3> normals = normalsOf(mesh, faces);
  const Backup backup(state, {v});
  state.mesh.setPosition(v, mesh.position(v) + dv);
  if (!localEditIsSafe(state.mesh, faces, normals)) {
    backup.restore(state);
    return false;
  }
  state.refresh();
  const auto& moved = state.layout.images[target.image].point;
  const auto& tm = state.layout.corners[target.face];
  const bool resolved = !predicates::pointInTriangleStrict2d(moved, tm[0], tm[1], tm[2]);
  if (!resolved || !noNewPairs(backup.overlaps, state.overlaps) || state.overlapCount() >= backup.overlaps.count()) {
    backup.restore(state);
    return false;
  }
  return true;
}

// --- non-saddle vertex flattening -------------------------------------------

std::vector<int> flattenCandidates(const TriMesh& mesh, int faceA, int faceB) {
  const Face a = mesh.face(faceA);
  const Face b = mesh.face(faceB);
  std::vector<std::pair<double, int>> found;
  for (int v : a) {
    if (!hasVertex(b, v)) continue;
    const double deficit = angleDeficit(mesh, v);
    if (deficit > kDeficitEpsilon) found.emplace_back(-deficit, v);
  }
  std::sort(found.begin(), found.end());
  std::vector<int> out;
  for (const auto& [d, v] : found) out.push_back(v);
  return out;
}

Vec3 flattenDirection(const TriMesh& mesh, int v) {
  const Vec3 n = mesh.vertexNormal(v);
  Vec3 centroid = Vec3::Zero();
  const auto ring = mesh.vertexNeighbors(v);
  for (int w : ring) centroid += mesh.position(w);
  centroid /= static_cast<double>(ring.size());
  return (centroid - mesh.position(v)).dot(n) > 0.0 ? n : Vec3(-n);
}

double maxFlatten(const TriMesh& mesh, int v) {
  double sum = 0.0;
  int count = 0;
  mesh.forEachOutgoing(v, [&](int h) {
    sum += mesh.edgeLength(mesh.edgeOf(h));
    ++count;
  });
  return count ? 0.5 * sum / count : 0.0;
}

bool flattenNonSaddleVertex(UnfoldState& state, std::pair<int, int> pair, int v) {
  const TriMesh& mesh = state.mesh;
  if (state.isPinned(v) || !hasPair(state.overlaps, pair)) return false;
  if (!hasVertex(mesh.face(pair.first), v) || !hasVertex(mesh.face(pair.second), v)) return false;
  if (angleDeficit(mesh, v) <= kDeficitEpsilon) return false;

  const Vec3 dir = flattenDirection(mesh, v);
  const double limit = maxFlatten(mesh, v);
  const Vec3 origin = mesh.position(v);
  const std::vector<int> faces = mesh.vertexFaces(v);
  const std::vector<Vec3> normals = normalsOf(mesh, faces);
  const Backup backup(state, {v});

  auto resolvesAt = [&](double t) {
    state.mesh.setPosition(v, origin + t * dir);
    if (!localEditIsSafe(state.mesh, faces, normals)) return false;
    state.refresh();
    return !hasPair(state.overlaps, pair) && noNewPairs(backup.overlaps, state.overlaps);
  };

  double lo = 0.0;
  double hi = limit / 64.0;
  bool found = false;
  while (hi <= limit * (1.0 + 1e-12)) {
    if (resolvesAt(hi)) {
      found = true;
      break;
    }
    lo = hi;
    hi *= 2.0;
  }
  if (!found) {
    backup.restore(state);
    return false;
  }
  while (hi - lo > 1e-3 * hi) {
    const double mid = 0.5 * (lo + hi);
    (resolvesAt(mid) ? hi : lo) = mid;
  }
  if (!resolvesAt(hi)) {
    backup.restore(state);
    return false;
  }
  return true;
}

// --- surface flow -----------------------------------------------------------

std::vector<std::pair<int, int>> isolatedPairs(const OverlapSet& overlaps) {
  std::vector<std::pair<int, int>> out;
  for (const auto& p : overlaps.pairs) {
    if (overlaps.perFaceCount[p.first] == 1 && overlaps.perFaceCount[p.second] == 1) out.push_back(p);
  }
  return out;
}

std::array<std::array<Vec2, 3>, 2> separationTargets(const std::array<Vec2, 3>& a, const std::array<Vec2, 3>& b,
                                                     double margin) {
  double bestDepth = std::numeric_limits<double>::infinity();
  Vec2 axis = Vec2::UnitX();
  double split = 0.0;
  for (const auto* t : {&a, &b}) {
    for (int i = 0; i < 3; ++i) {
      const Vec2 e = (*t)[(i + 1) % 3] - (*t)[i];
      const double len = e.norm();
      if (len <= 0.0) continue;
      const Vec2 n(e.y() / len, -e.x() / len);
      double minA = std::numeric_limits<double>::infinity(), maxA = -minA, minB = minA, maxB = -minA;
      for (int k = 0; k < 3; ++k) {
        minA = std::min(minA, a[k].dot(n));
        maxA = std::max(maxA, a[k].dot(n));
        minB = std::min(minB, b[k].dot(n));
        maxB = std::max(maxB, b[k].dot(n));
      }
      // a below b along n, or a above b (axis flipped).
      if (maxA - minB < bestDepth) {
        bestDepth = maxA - minB;
        axis = n;
        split = 0.5 * (maxA + minB);
      }
      if (maxB - minA < bestDepth) {
        bestDepth = maxB - minA;
        axis = -n;
        split = -0.5 * (maxB + minA);
      }
    }
  }
  std::array<std::array<Vec2, 3>, 2> out = {a, b};
  const double lowA = split - 0.5 * margin;
  const double highB = split + 0.5 * margin;
  for (int k = 0; k < 3; ++k) {
    const double pa = a[k].dot(axis);
    if (pa > lowA) out[0][k] = a[k] - (pa - lowA) * axis;
    const double pb = b[k].dot(axis);
    if (pb < highB) out[1][k] = b[k] + (highB - pb) * axis;
  }
  return out;
}

FlowProblem makeFlowProblem(const TriMesh& mesh, const Layout& layout, const std::vector<std::pair<int, int>>& pairs,
                            const FlowConfig& config) {
  FlowProblem problem;
  problem.wc = config.wc;
  problem.ws = config.ws;
  for (const auto& [fa, fb] : pairs) {
    double mean = 0.0;
    for (int f : {fa, fb}) {
      for (int k = 0; k < 3; ++k) mean += mesh.edgeLength(mesh.edgeOf(3 * f + k));
    }
    mean /= 6.0;
    const auto targets = separationTargets(layout.corners[fa], layout.corners[fb], kFlowMargin * mean);
    for (int side = 0; side < 2; ++side) {
      const int f = side == 0 ? fa : fb;
      const Eigen::Matrix<double, 3, 2> lift = liftMatrix(mesh, layout, f);
      for (int k = 0; k < 3; ++k) {
        const Vec2 d = targets[side][k] - layout.corners[f][k];
        if (d.isZero(0.0)) continue;
        const int v = mesh.start(3 * f + k);
        problem.targets.push_back({v, mesh.position(v) + lift * d});
      }
    }
  }
  for (int f = 0; f < mesh.faceSlots(); ++f) {
    if (!mesh.faceAlive(f) || !layout.isPlaced(f)) continue;
    const auto& c = layout.corners[f];
    const Matrix2<double> dm = referenceFrame<double>(c[0], c[1], c[2]);
    problem.faces.push_back(f);
    problem.dmInverse.push_back(dm.inverse());
    problem.referenceArea.push_back(0.5 * std::abs(dm.determinant()));
  }
  return problem;
}

FlowEnergy flowEnergy(const FlowProblem& problem, const TriMesh& mesh, const std::vector<Vec3>& positions,
                      std::vector<Vec3>* gradient) {
  FlowEnergy e;
  if (gradient) gradient->assign(positions.size(), Vec3::Zero());
  for (const auto& t : problem.targets) {
    const Vec3 d = positions[t.vertex] - t.point;
    e.collision += 0.5 * d.squaredNorm();
    if (gradient) (*gradient)[t.vertex] += problem.wc * d;
  }
  for (std::size_t i = 0; i < problem.faces.size(); ++i) {
    const Face f = mesh.face(problem.faces[i]);
    const auto term = strainEnergy<double, 3>(problem.referenceArea[i], problem.dmInverse[i], positions[f[0]],
                                              positions[f[1]], positions[f[2]]);
    e.strain += term.energy;
    if (gradient) {
      for (int k = 0; k < 3; ++k) (*gradient)[f[k]] += problem.ws * term.gradient.col(k);
    }
  }
  e.total = problem.wc * e.collision + problem.ws * e.strain;
  return e;
}

FlowResult surfaceFlow(UnfoldState& state, const std::vector<std::pair<int, int>>& pairs, const FlowConfig& config) {
  FlowResult result;
  if (pairs.empty() || config.iterations <= 0) return result;
  const FlowProblem problem = makeFlowProblem(state.mesh, state.layout, pairs, config);
  if (problem.targets.empty()) return result;

  std::vector<int> all;
  for (int v = 0; v < state.mesh.vertexSlots(); ++v) {
    if (state.mesh.vertexAlive(v)) all.push_back(v);
  }
  const Backup backup(state, all);
  // Motions below this are rounding noise in the reference strain.
  const double negligible = 1e-12 * state.mesh.boundingDiagonal();

  std::vector<Vec3> x = state.mesh.positions();
  std::vector<Vec3> grad;
  double step = config.step;
  for (int it = 0; it < config.iterations; ++it) {
    result.energy.push_back(flowEnergy(problem, state.mesh, x, &grad).total);
    std::vector<int> moved;
    for (int v : all) {
      if (state.isPinned(v)) continue;
      if (step * grad[v].norm() > negligible) moved.push_back(v);
    }
    if (moved.empty()) break;
    std::vector<int> faces;
    for (int v : moved) {
      const auto vf = state.mesh.vertexFaces(v);
      faces.insert(faces.end(), vf.begin(), vf.end());
    }
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    const std::vector<Vec3> normals = normalsOf(state.mesh, faces);
    for (int v : moved) state.mesh.setPosition(v, x[v] - step * grad[v]);
    if (!localEditIsSafe(state.mesh, faces, normals)) {
      for (int v : moved) state.mesh.setPosition(v, x[v]);
      ++result.rolledBack;
      step *= 0.5;
      continue;
    }
    for (int v : moved) x[v] = state.mesh.position(v);
    ++result.steps;
  }
  result.energy.push_back(flowEnergy(problem, state.mesh, x).total);

  state.refresh();
  if (result.steps == 0 || !noNewPairs(backup.overlaps, state.overlaps)) {
    backup.restore(state);
    return result;
  }
  result.accepted = true;
  return result;
}

// --- stage ------------------------------------------------------------------

GeomStageResult geometricStage(UnfoldState& state, const GeomConfig& config) {
  GeomStageResult r;
  r.before = state.overlapCount();
  if (config.enabled && r.before > 0) {
    if (config.vertexInTriangle) {
      for (const auto& c : findImagesInFaces(state.mesh, state.layout, state.overlaps)) {
        if (resolveVertexInTriangle(state, c)) ++r.vertexMoves;
      }
    }
    if (config.flattenVertices) {
      const auto pairs = state.overlaps.pairs;
      for (const auto& p : pairs) {
        if (!hasPair(state.overlaps, p)) continue;
        for (int v : flattenCandidates(state.mesh, p.first, p.second)) {
          if (flattenNonSaddleVertex(state, p, v)) {
            ++r.flattenings;
            break;
          }
        }
      }
    }
    if (config.surfaceFlow) {
      const auto pairs = isolatedPairs(state.overlaps);
      if (!pairs.empty()) r.flowAccepted = surfaceFlow(state, pairs, config.flow).accepted;
    }
  }
  r.after = state.overlapCount();
  return r;
}

}  // namespace papernet
