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

#include "papernet/shapes.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <utility>

namespace papernet {

namespace {

TriMesh outward(std::vector<Vec3> positions, std::vector<Face> faces) {
  TriMesh mesh(positions, faces);
  if (signedVolume(mesh) < 0.0) {
    for (auto& f : faces) std::swap(f[1], f[2]);
    return TriMesh(std::move(positions), faces);
  }
  return mesh;
}

}  // namespace

double signedVolume(const TriMesh& mesh) {
  double volume = 0.0;
  for (int f = 0; f < mesh.faceSlots(); ++f) {
    if (!mesh.faceAlive(f)) continue;
    const auto p = mesh.facePositions(f);
    volume += p[0].dot(p[1].cross(p[2]));
  }
  return volume / 6.0;
}

TriMesh makeTetrahedron() {
  return outward({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}},
                 {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}});
}

TriMesh makeBox(double sx, double sy, double sz) {
  std::vector<Vec3> p;
  for (int i = 0; i < 8; ++i) p.emplace_back((i & 1) * sx, ((i >> 1) & 1) * sy, ((i >> 2) & 1) * sz);
  const std::vector<Face> faces = {{0, 2, 1}, {1, 2, 3}, {4, 5, 6}, {5, 7, 6}, {0, 1, 4}, {1, 5, 4},
                                   {2, 6, 3}, {3, 6, 7}, {0, 4, 2}, {2, 4, 6}, {1, 3, 5}, {3, 7, 5}};
  return outward(std::move(p), faces);
}

TriMesh makeIcosahedron() {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> p = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                         {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& v : p) v.normalize();
  const std::vector<Face> faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                   {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                   {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                   {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  return outward(std::move(p), faces);
}

TriMesh makeIcosphere(int levels) {
  const TriMesh base = makeIcosahedron();
  std::vector<Vec3> p = base.positions();
  std::vector<Face> faces = base.aliveFaces();
  for (int l = 0; l < levels; ++l) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      const auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      p.push_back((p[a] + p[b]).normalized());
      const int id = static_cast<int>(p.size()) - 1;
      mid.emplace(key, id);
      return id;
    };
    std::vector<Face> next;
    for (const Face& f : faces) {
      const int ab = midpoint(f[0], f[1]);
      const int bc = midpoint(f[1], f[2]);
      const int ca = midpoint(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
  return outward(std::move(p), faces);
}

TriMesh makeUvSphere(int rings, int segments) {
  std::vector<Vec3> p;
  p.emplace_back(0, 0, 1);
  for (int r = 1; r < rings; ++r) {
    const double theta = std::numbers::pi * r / rings;
    for (int s = 0; s < segments; ++s) {
      const double phi = 2.0 * std::numbers::pi * s / segments;
      p.emplace_back(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
    }
  }
  p.emplace_back(0, 0, -1);
  const int south = static_cast<int>(p.size()) - 1;
  auto at = [&](int r, int s) { return 1 + (r - 1) * segments + (s % segments); };
  std::vector<Face> faces;
  for (int s = 0; s < segments; ++s) {
    faces.push_back({0, at(1, s), at(1, s + 1)});
    for (int r = 1; r + 1 < rings; ++r) {
      faces.push_back({at(r, s), at(r + 1, s), at(r + 1, s + 1)});
      faces.push_back({at(r, s), at(r + 1, s + 1), at(r, s + 1)});
    }
    faces.push_back({south, at(rings - 1, s + 1), at(rings - 1, s)});
  }
  return outward(std::move(p), faces);
}

TriMesh makeTorus(double majorRadius, double minorRadius, int major, int minor) {
  std::vector<Vec3> p;
  for (int i = 0; i < major; ++i) {
    const double u = 2.0 * std::numbers::pi * i / major;
    for (int j = 0; j < minor; ++j) {
      const double v = 2.0 * std::numbers::pi * j / minor;
      const double rho = majorRadius + minorRadius * std::cos(v);
      p.emplace_back(rho * std::cos(u), rho * std::sin(u), minorRadius * std::sin(v));
    }
  }
  auto at = [&](int i, int j) { return (i % major) * minor + (j % minor); };
  std::vector<Face> faces;
  for (int i = 0; i < major; ++i) {
    for (int j = 0; j < minor; ++j) {
      faces.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
      faces.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
    }
  }
  return outward(std::move(p), faces);
}

}  // namespace papernet
