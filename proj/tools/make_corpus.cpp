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

// Generates the evaluation corpus: implicit shapes polygonized by marching
// tetrahedra and decimated with the quadric baseline.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "papernet/decimate.hpp"
#include "papernet/mesh_io.hpp"
#include "papernet/validate.hpp"

namespace {

using papernet::Face;
using papernet::TriMesh;
using papernet::Vec3;
using Field = std::function<double(const Vec3&)>;

double smin(double a, double b, double k) {
  const double h = std::clamp(0.5 + 0.5 * (b - a) / k, 0.0, 1.0);
  return b + (a - b) * h - k * h * (1.0 - h);
}

double sphere(const Vec3& p, const Vec3& c, double r) { return (p - c).norm() - r; }

double roundBox(const Vec3& p, const Vec3& half, double r) {
  const Vec3 q = p.cwiseAbs() - half + Vec3::Constant(r);
  return q.cwiseMax(0.0).norm() + std::min(q.maxCoeff(), 0.0) - r;
}

double capsule(const Vec3& p, const Vec3& a, const Vec3& b, double r) {
  const Vec3 ab = b - a;
  const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (p - a - t * ab).norm() - r;
}

double torus(const Vec3& p, double major, double minor) {
  const double q = std::hypot(p.x(), p.y()) - major;
  return std::hypot(q, p.z()) - minor;
}

/// Capped cylinder along z with rounded rim.
double cylinder(const Vec3& p, double radius, double halfHeight, double round) {
  const double dx = std::hypot(p.x(), p.y()) - radius + round;
  const double dz = std::abs(p.z()) - halfHeight + round;
  return std::min(std::max(dx, dz), 0.0) + std::hypot(std::max(dx, 0.0), std::max(dz, 0.0)) - round;
}

double hexPrism(const Vec3& p, double apothem, double halfHeight) {
  double d = -1e9;
  for (int k = 0; k < 6; ++k) {
    const double a = k * std::numbers::pi / 3.0;
    d = std::max(d, p.x() * std::cos(a) + p.y() * std::sin(a) - apothem);
  }
  return std::max(d, std::abs(p.z()) - halfHeight);
}

struct Shape {
  std::string name;
  Field field;
};

std::vector<Shape> shapes() {
  std::vector<Shape> s;
  // organic
  s.push_back({"blob", [](const Vec3& p) {
                 double d = sphere(p, Vec3(0, 0, 0), 0.6);
                 d = smin(d, sphere(p, Vec3(0.55, 0.2, 0.1), 0.4), 0.25);
                 d = smin(d, sphere(p, Vec3(-0.4, 0.45, -0.2), 0.35), 0.25);
                 return smin(d, sphere(p, Vec3(0.1, -0.5, 0.35), 0.38), 0.25);
               }});
  s.push_back({"bumpy_sphere", [](const Vec3& p) {
                 return p.norm() - 0.8 - 0.07 * std::sin(6 * p.x()) * std::sin(6 * p.y()) * std::sin(6 * p.z());
               }});
  s.push_back({"starfish", [](const Vec3& p) {
                 const double r = 0.55 + 0.4 * std::cos(5.0 * std::atan2(p.y(), p.x()));
                 const double rho = std::hypot(p.x(), p.y());
                 const double thick = 0.28 * std::max(0.15, 1.0 - rho / 1.0);
                 return std::max(rho - r, std::abs(p.z()) - thick) * 0.5 + 0.5 * (rho / r + std::abs(p.z()) / thick - 1.4);
               }});
  s.push_back({"twisted_ellipsoid", [](const Vec3& p) {
                 const double a = 1.2 * p.z();
                 const Vec3 q(std::cos(a) * p.x() - std::sin(a) * p.y(), std::sin(a) * p.x() + std::cos(a) * p.y(), p.z());
                 return (q.cwiseQuotient(Vec3(0.7, 0.3, 1.0))).norm() - 1.0;
               }});
  s.push_back({"cactus", [](const Vec3& p) {
                 double d = capsule(p, Vec3(0, 0, -0.8), Vec3(0, 0, 0.8), 0.25);
                 d = smin(d, capsule(p, Vec3(0, 0, 0.0), Vec3(0.5, 0, 0.1), 0.15), 0.1);
                 d = smin(d, capsule(p, Vec3(0.5, 0, 0.1), Vec3(0.5, 0, 0.5), 0.15), 0.1);
                 d = smin(d, capsule(p, Vec3(0, 0, -0.2), Vec3(-0.45, 0, -0.1), 0.13), 0.1);
                 return smin(d, capsule(p, Vec3(-0.45, 0, -0.1), Vec3(-0.45, 0, 0.25), 0.13), 0.1);
               }});
  s.push_back({"mushroom", [](const Vec3& p) {
                 const double cap = std::max(sphere(p, Vec3(0, 0, 0), 0.8), -(p.z() - 0.1));
                 const double stem = cylinder(p - Vec3(0, 0, -0.35), 0.25, 0.5, 0.08);
                 return smin(cap, stem, 0.12);
               }});
  s.push_back({"spiky_ball", [](const Vec3& p) {
                 double d = sphere(p, Vec3(0, 0, 0), 0.55);
                 const double g = (1.0 + std::sqrt(5.0)) / 2.0;
                 const Vec3 dirs[] = {{0, 1, g}, {0, -1, g}, {0, 1, -g}, {0, -1, -g}, {1, g, 0}, {-1, g, 0},
                                      {1, -g, 0}, {-1, -g, 0}, {g, 0, 1}, {-g, 0, 1}, {g, 0, -1}, {-g, 0, -1}};
                 for (const Vec3& dir : dirs) d = smin(d, capsule(p, Vec3::Zero(), 1.0 * dir.normalized(), 0.1), 0.12);
                 return d;
               }});
  s.push_back({"coral", [](const Vec3& p) {
                 double d = capsule(p, Vec3(0, 0, -0.9), Vec3(0, 0, 0.0), 0.2);
                 const Vec3 tips[] = {{0.6, 0.1, 0.7}, {-0.5, 0.4, 0.8}, {0.1, -0.6, 0.9}, {-0.2, 0.1, 1.0}};
                 for (const Vec3& t : tips) {
                   d = smin(d, capsule(p, Vec3(0, 0, 0.0), 0.5 * t, 0.14), 0.1);
                   d = smin(d, capsule(p, 0.5 * t, t, 0.1), 0.08);
                 }
                 return d;
               }});
  // CAD-like
  s.push_back({"l_bracket", [](const Vec3& p) {
                 return std::min(roundBox(p - Vec3(0, -0.5, 0), Vec3(0.9, 0.2, 0.4), 0.06),
                                 roundBox(p - Vec3(-0.7, 0.2, 0), Vec3(0.2, 0.9, 0.4), 0.06));
               }});
  s.push_back({"plus", [](const Vec3& p) {
                 return std::min(roundBox(p, Vec3(0.95, 0.3, 0.3), 0.06), roundBox(p, Vec3(0.3, 0.95, 0.3), 0.06));
               }});
  s.push_back({"gear", [](const Vec3& p) {
                 const double a = std::atan2(p.y(), p.x());
                 const double r = std::hypot(p.x(), p.y());
                 const double tooth = 0.72 + 0.16 * std::clamp(2.5 * std::cos(12.0 * a), -1.0, 1.0);
                 const double body = std::max(r - tooth, std::abs(p.z()) - 0.22);
                 return std::max(body, -(r - 0.25));
               }});
  s.push_back({"heat_sink", [](const Vec3& p) {
                 double d = roundBox(p - Vec3(0, 0, -0.6), Vec3(0.95, 0.7, 0.15), 0.03);
                 for (int i = 0; i < 5; ++i) {
                   d = std::min(d, roundBox(p - Vec3(-0.8 + 0.4 * i, 0, 0.0), Vec3(0.08, 0.7, 0.6), 0.03));
                 }
                 return d;
               }});
  s.push_back({"table", [](const Vec3& p) {
                 double d = roundBox(p - Vec3(0, 0, 0.55), Vec3(0.95, 0.7, 0.09), 0.03);
                 for (double sx : {-1.0, 1.0}) {
                   for (double sy : {-1.0, 1.0}) {
                     d = std::min(d, roundBox(p - Vec3(0.75 * sx, 0.5 * sy, -0.2), Vec3(0.1, 0.1, 0.7), 0.03));
                   }
                 }
                 return d;
               }});
  // genus >= 1
  s.push_back({"torus", [](const Vec3& p) { return torus(p, 0.75, 0.28); }});
  s.push_back({"hex_nut", [](const Vec3& p) {
                 return std::max(hexPrism(p, 0.8, 0.3), -(std::hypot(p.x(), p.y()) - 0.4));
               }});
  s.push_back({"double_torus", [](const Vec3& p) {
                 return smin(torus(p - Vec3(-0.55, 0, 0), 0.5, 0.2), torus(p - Vec3(0.55, 0, 0), 0.5, 0.2), 0.1);
               }});
  s.push_back({"mug", [](const Vec3& p) {
                 const double body = cylinder(p, 0.55, 0.7, 0.1);
                 const Vec3 q(p.x() - 0.6, p.z(), p.y());
                 return smin(body, torus(q, 0.38, 0.1), 0.06);
               }});
  s.push_back({"frame", [](const Vec3& p) {
                 return std::max(roundBox(p, Vec3(0.9, 0.9, 0.25), 0.08), -roundBox(p, Vec3(0.5, 0.5, 1.0), 0.08));
               }});
  s.push_back({"trefoil", [](const Vec3& p) {
                 double d = 1e9;
                 const int n = 240;
                 for (int i = 0; i < n; ++i) {
                   const double t = 2.0 * std::numbers::pi * i / n;
                   const Vec3 c(std::sin(t) + 2.0 * std::sin(2.0 * t), std::cos(t) - 2.0 * std::cos(2.0 * t),
                                -std::sin(3.0 * t));
                   d = std::min(d, (p - 0.33 * c).norm());
                 }
                 return d - 0.17;
               }});
  s.push_back({"plate_3holes", [](const Vec3& p) {
                 double d = roundBox(p, Vec3(1.0, 0.55, 0.18), 0.06);
                 for (double x : {-0.6, 0.0, 0.6}) d = std::max(d, -(std::hypot(p.x() - x, p.y()) - 0.2));
                 return d;
               }});
  return s;
}

/// Marching tetrahedra over the Kuhn split of a regular grid.
TriMesh polygonize(const Field& f, double extent, int n) {
  const double h = 2.0 * extent / n;
  auto index = [&](int i, int j, int k) { return (i * (n + 1) + j) * (n + 1) + k; };
  std::vector<double> value((n + 1) * (n + 1) * (n + 1));
  std::vector<Vec3> point(value.size());
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      for (int k = 0; k <= n; ++k) {
        const Vec3 p(-extent + i * h, -extent + j * h, -extent + k * h);
        double v = f(p);
        if (std::abs(v) < 1e-9) v = 1e-9;
        value[index(i, j, k)] = v;
        point[index(i, j, k)] = p;
      }
    }
  }
  std::vector<Vec3> verts;
  std::map<std::pair<int, int>, int> edgeVertex;
  auto cut = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    const auto it = edgeVertex.find(key);
    if (it != edgeVertex.end()) return it->second;
    const double t = value[a] / (value[a] - value[b]);
    verts.push_back(point[a] + t * (point[b] - point[a]));
    edgeVertex.emplace(key, static_cast<int>(verts.size()) - 1);
    return static_cast<int>(verts.size()) - 1;
  };
  std::vector<Face> faces;
  auto emit = [&](int a, int b, int c, const Vec3& outward) {
    const Vec3 nrm = (verts[b] - verts[a]).cross(verts[c] - verts[a]);
    if (nrm.dot(outward) >= 0.0) {
      faces.push_back({a, b, c});
    } else {
      faces.push_back({a, c, b});
    }
  };
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (const auto& perm : perms) {
          int c[3] = {i, j, k};
          int tet[4];
          tet[0] = index(c[0], c[1], c[2]);
          for (int s = 0; s < 3; ++s) {
            ++c[perm[s]];
            tet[s + 1] = index(c[0], c[1], c[2]);
          }
          std::vector<int> in, out;
          for (int t : tet) (value[t] < 0.0 ? in : out).push_back(t);
          if (in.empty() || out.empty()) continue;
          Vec3 cin = Vec3::Zero(), cout = Vec3::Zero();
          for (int t : in) cin += point[t];
          for (int t : out) cout += point[t];
          const Vec3 outward = cout / out.size() - cin / in.size();
          if (in.size() == 1) {
            emit(cut(in[0], out[0]), cut(in[0], out[1]), cut(in[0], out[2]), outward);
          } else if (in.size() == 3) {
            emit(cut(out[0], in[0]), cut(out[0], in[1]), cut(out[0], in[2]), outward);
          } else {
            const int a = cut(in[0], out[0]), b = cut(in[0], out[1]);
            const int c2 = cut(in[1], out[1]), d = cut(in[1], out[0]);
            emit(a, b, c2, outward);
            emit(a, c2, d, outward);
          }
        }
      }
    }
  }
  return TriMesh(std::move(verts), faces);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the evaluation corpus"};
  std::string out = "data/corpus";
  int faces = 500;
  int resolution = 64;
  app.add_option("-o,--output", out, "output directory");
  app.add_option("--faces", faces, "face budget per mesh");
  std::vector<std::string> only;
  app.add_option("--resolution", resolution, "grid cells per axis");
  app.add_option("--only", only, "shape names to generate (default: all)")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  std::filesystem::create_directories(out);
  int failures = 0;
  for (const auto& s : shapes()) {
    if (!only.empty() && std::find(only.begin(), only.end(), s.name) == only.end()) continue;
    // Quadric decimation can leave a self-intersection; coarser grids
    // usually avoid it.
    bool saved = false;
    for (int res = resolution; res >= resolution / 2 && !saved; res -= 8) {
      const TriMesh dense = polygonize(s.field, 1.25, res);
      TriMesh mesh;
      try {
        mesh = papernet::qslimBaseline(dense, faces);
      } catch (const papernet::MeshError& e) {
        std::cerr << s.name << " @" << res << ": " << e.what() << "\n";
        continue;
      }
      const auto report = papernet::validate(mesh);
      std::cout << s.name << " @" << res << ": " << dense.numFaces() << " -> " << mesh.numFaces() << " faces, genus "
                << papernet::genus(mesh) << ", " << report.describe() << "\n";
      if (!report.acceptable()) continue;
      papernet::saveMesh(std::filesystem::path(out) / (s.name + ".obj"), mesh);
      saved = true;
    }
    failures += !saved;
  }
  return failures == 0 ? 0 : 1;
}
