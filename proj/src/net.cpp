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

#include "papernet/net.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "papernet/predicates.hpp"

namespace papernet {

const char* toString(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::kCut: return "cut";
    case EdgeKind::kMountain: return "mountain";
    case EdgeKind::kValley: return "valley";
    case EdgeKind::kFlat: return "flat";
  }
  return "?";
}

Vec2 NetDocument::toPage(const Vec2& p) const {
  const double c = std::cos(angle), s = std::sin(angle);
  const Vec2 r(c * p.x() - s * p.y(), s * p.x() + c * p.y());
  return Vec2(mmPerUnit * r.x(), -mmPerUnit * r.y()) + offset;
}

EdgeKind foldKind(const TriMesh& mesh, int e) {
  const int h = mesh.edgeHalfedge(e);
  const int f = TriMesh::faceOf(h);
  const auto p = mesh.facePositions(f);
  const Vec3& w = mesh.position(mesh.start(TriMesh::prev(mesh.twin(h))));
  const int o = predicates::orient3d(p[0], p[1], p[2], w);
  if (o < 0) return EdgeKind::kMountain;
  if (o > 0) return EdgeKind::kValley;
  return EdgeKind::kFlat;
}

namespace {

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

std::vector<Vec2> convexHull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

struct Extent {
  Vec2 lo;
  Vec2 hi;
};

Extent extentAt(const std::vector<Vec2>& pts, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  const double inf = std::numeric_limits<double>::infinity();
  Extent x{Vec2(inf, inf), Vec2(-inf, -inf)};
  for (const Vec2& p : pts) {
    const Vec2 r(c * p.x() - s * p.y(), s * p.x() + c * p.y());
    x.lo = x.lo.cwiseMin(r);
    x.hi = x.hi.cwiseMax(r);
  }
  return x;
}

/// Rotation giving the minimum-area bounding rectangle, landscape.
double tightAngle(const std::vector<Vec2>& pts) {
  const std::vector<Vec2> hull = convexHull(pts);
  double best = 0.0;
  double bestArea = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec2 d = hull[(i + 1) % hull.size()] - hull[i];
    const double angle = -std::atan2(d.y(), d.x());
    const Extent x = extentAt(hull, angle);
    const Vec2 size = x.hi - x.lo;
    const double area = size.x() * size.y();
    if (area < bestArea * (1.0 - 1e-12)) {
      bestArea = area;
      best = angle;
    }
  }
  const Extent x = extentAt(hull, best);
  const Vec2 size = x.hi - x.lo;
  if (size.y() > size.x()) best += 0.5 * M_PI;
  return std::remainder(best, 2.0 * M_PI);
}

void appendNumber(std::string& out, double v) {
  char buf[64];
  if (std::abs(v) < 5e-10) v = 0.0;
  std::snprintf(buf, sizeof buf, "%.9f", v);
  std::string s(buf);
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  out += s;
}

}  // namespace

NetDocument buildNet(const TriMesh& mesh, const UnfoldTree& tree, const Layout& layout,
                     const NetOptions& options) {
  NetDocument net;
  net.mmPerUnit = options.mmPerUnit;
  std::vector<Vec2> pts;
  for (int f = 0; f < mesh.faceSlots(); ++f) {
    if (!mesh.faceAlive(f) || !layout.isPlaced(f)) continue;
    for (const Vec2& c : layout.corners[f]) pts.push_back(c);
  }
  net.angle = options.tightRotation && !pts.empty() ? tightAngle(pts) : 0.0;

  const double inf = std::numeric_limits<double>::infinity();
  Vec2 lo(inf, inf), hi(-inf, -inf);
  for (const Vec2& p : pts) {
    const Vec2 q = net.toPage(p);
    lo = lo.cwiseMin(q);
    hi = hi.cwiseMax(q);
  }
  if (pts.empty()) lo = hi = Vec2::Zero();
  net.offset = Vec2::Constant(options.marginMm) - lo;
  net.width = hi.x() - lo.x() + 2.0 * options.marginMm;
  net.height = hi.y() - lo.y() + 2.0 * options.marginMm;

  for (int f = 0; f < mesh.faceSlots(); ++f) {
    if (!mesh.faceAlive(f) || !layout.isPlaced(f)) continue;
    net.faces.push_back(f);
    const auto& c = layout.corners[f];
    net.polygons.push_back({net.toPage(c[0]), net.toPage(c[1]), net.toPage(c[2])});
  }

  auto corner = [&](int h, bool atEnd) {
    const int f = TriMesh::faceOf(h);
    const int k = atEnd ? TriMesh::next(h) % 3 : h % 3;
    return net.toPage(layout.corners[f][k]);
  };
  std::vector<NetSegment> folds;
  for (int e = 0; e < mesh.edgeSlots(); ++e) {
    if (!mesh.edgeAlive(e)) continue;
    const int h = mesh.edgeHalfedge(e);
    if (tree.isHinge(e)) {
      const int f = TriMesh::faceOf(h);
      const int g = TriMesh::faceOf(mesh.twin(h));
      const int parent = layout.topology.parentFace(mesh, g) == f ? f : g;
      const int hp = parent == f ? h : mesh.twin(h);
      folds.push_back({e, parent, foldKind(mesh, e), corner(hp, false), corner(hp, true)});
      continue;
    }
    for (int side : {h, mesh.twin(h)}) {
      if (!layout.isPlaced(TriMesh::faceOf(side))) continue;
      net.segments.push_back({e, TriMesh::faceOf(side), EdgeKind::kCut, corner(side, false), corner(side, true)});
    }
  }
  net.segments.insert(net.segments.end(), folds.begin(), folds.end());
  net.overlapFree = overlappingPairs(layout).empty();
  return net;
}

void writeSvg(std::ostream& out, const NetDocument& net) {
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"";
  appendNumber(s, net.width);
  s += "mm\" height=\"";
  appendNumber(s, net.height);
  s += "mm\" viewBox=\"0 0 ";
  appendNumber(s, net.width);
  s += ' ';
  appendNumber(s, net.height);
  s += "\" data-mm-per-unit=\"";
  appendNumber(s, net.mmPerUnit);
  s += "\">\n";
  s += "<style>\n"
       ".face{fill:#f4f1e8;stroke:none}\n"
       ".cut{stroke:#000;stroke-width:0.2;fill:none}\n"
       ".mountain{stroke:#c0392b;stroke-width:0.2;stroke-dasharray:2,1;fill:none}\n"
       ".valley{stroke:#2155a6;stroke-width:0.2;stroke-dasharray:2,0.7,0.4,0.7;fill:none}\n"
       ".flat{stroke:#999;stroke-width:0.1;stroke-dasharray:0.3,0.9;fill:none}\n"
       "</style>\n";
  s += "<g id=\"faces\">\n";
  for (std::size_t i = 0; i < net.faces.size(); ++i) {
    s += "<polygon class=\"face\" data-face=\"" + std::to_string(net.faces[i]) + "\" points=\"";
    for (int k = 0; k < 3; ++k) {
      if (k) s += ' ';
      appendNumber(s, net.polygons[i][k].x());
      s += ',';
      appendNumber(s, net.polygons[i][k].y());
    }
    s += "\"/>\n";
  }
  s += "</g>\n<g id=\"edges\">\n";
  for (const NetSegment& seg : net.segments) {
    s += "<line class=\"";
    s += toString(seg.kind);
    s += "\" data-edge=\"" + std::to_string(seg.edge) + "\" data-face=\"" + std::to_string(seg.face) + "\" x1=\"";
    appendNumber(s, seg.a.x());
    s += "\" y1=\"";
    appendNumber(s, seg.a.y());
    s += "\" x2=\"";
    appendNumber(s, seg.b.x());
    s += "\" y2=\"";
    appendNumber(s, seg.b.y());
    s += "\"/>\n";
  }
  s += "</g>\n</svg>\n";
  out << s;
}

void saveSvg(const std::filesystem::path& path, const NetDocument& net) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  writeSvg(out, net);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace papernet
