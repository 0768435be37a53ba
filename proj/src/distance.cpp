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

#include "papernet/distance.hpp"

#include <cmath>

#include "papernet/geometry.hpp"

namespace papernet {

SurfaceLocator::SurfaceLocator(const TriMesh& mesh) {
  std::vector<Box3> boxes;
  for (int f = 0; f < mesh.faceSlots(); ++f) {
    if (!mesh.faceAlive(f)) continue;
    const auto p = mesh.facePositions(f);
    triangles_.push_back(p);
    faceIds_.push_back(f);
    Box3 box(p[0]);
    box.extend(p[1]);
    box.extend(p[2]);
    boxes.push_back(box);
  }
  tree_ = AabbTree<3>(std::move(boxes));
}

SurfacePoint SurfaceLocator::closest(const Vec3& p) const {
  SurfacePoint best;
  Vec3 bary;
  int id = -1;
  const double d2 = tree_.nearest(
      p,
      [&](int i) {
        const auto& t = triangles_[i];
        return (closestPointOnTriangle<double>(p, t[0], t[1], t[2]) - p).squaredNorm();
      },
      &id);
  if (id < 0) return best;
  const auto& t = triangles_[id];
  best.point = closestPointOnTriangle<double>(p, t[0], t[1], t[2], &bary);
  best.bary = bary;
  best.face = faceIds_[id];
  best.distance = std::sqrt(d2);
  return best;
}

std::vector<Vec3> surfaceSamples(const TriMesh& mesh, int samplesPerFace) {
  std::vector<Vec3> out;
  for (int v = 0; v < mesh.vertexSlots(); ++v) {
    if (mesh.vertexAlive(v) && mesh.vertexHalfedge(v) >= 0) out.push_back(mesh.position(v));
  }
  const int m = std::max(1, static_cast<int>(std::lround(std::sqrt(std::max(1, samplesPerFace)))));
  const double inv = 1.0 / m;
  for (int f = 0; f < mesh.faceSlots(); ++f) {
    if (!mesh.faceAlive(f)) continue;
    const auto p = mesh.facePositions(f);
    const Vec3 e1 = (p[1] - p[0]) * inv;
    const Vec3 e2 = (p[2] - p[0]) * inv;
    // Upright and inverted cells of the m x m subdivision.
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j + i < m; ++j) {
        out.push_back(p[0] + (i + 1.0 / 3.0) * e1 + (j + 1.0 / 3.0) * e2);
        if (i + j + 1 < m) out.push_back(p[0] + (i + 2.0 / 3.0) * e1 + (j + 2.0 / 3.0) * e2);
      }
    }
  }
  return out;
}

namespace {

struct OneSided {
  double max = 0.0;
  double mean = 0.0;
};

OneSided oneSided(const TriMesh& from, const TriMesh& to, int samplesPerFace) {
  const SurfaceLocator locator(to);
  const std::vector<Vec3> samples = surfaceSamples(from, samplesPerFace);
  OneSided r;
  if (samples.empty()) return r;
  double sum = 0.0;
  for (const Vec3& s : samples) {
    const double d = locator.closest(s).distance;
    r.max = std::max(r.max, d);
    sum += d;
  }
  r.mean = sum / static_cast<double>(samples.size());
  return r;
}

}  // namespace

namespace {

/// Same triangles at the same coordinates; both distances are then zero.
bool sameSurface(const TriMesh& a, const TriMesh& b) {
  if (a.numFaces() != b.numFaces()) return false;
  const auto fa = a.aliveFaces();
  const auto fb = b.aliveFaces();
  if (fa != fb) return false;
  for (const Face& f : fa) {
    for (int v : f) {
      if (a.position(v) != b.position(v)) return false;
    }
  }
  return true;
}

}  // namespace

double hausdorffDistance(const TriMesh& a, const TriMesh& b, int samplesPerFace) {
  if (sameSurface(a, b)) return 0.0;
  return std::max(oneSided(a, b, samplesPerFace).max, oneSided(b, a, samplesPerFace).max);
}

double chamferDistance(const TriMesh& a, const TriMesh& b, int samplesPerFace) {
  if (sameSurface(a, b)) return 0.0;
  return 0.5 * (oneSided(a, b, samplesPerFace).mean + oneSided(b, a, samplesPerFace).mean);
}

}  // namespace papernet
