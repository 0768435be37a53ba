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

#include "papernet/predicates.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace papernet::predicates {
namespace {

constexpr double kEpsilon = 0x1p-53;
constexpr double kCcwErrBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;
constexpr double kO3dErrBound = (7.0 + 56.0 * kEpsilon) * kEpsilon;

// Nonoverlapping expansion, components in increasing magnitude, zeros
// eliminated. The represented value is the exact sum of the components.
using Expansion = std::vector<double>;

inline void twoSum(double a, double b, double& x, double& y) {
  x = a + b;
  const double bv = x - a;
  const double av = x - bv;
  y = (a - av) + (b - bv);
}

inline void twoProduct(double a, double b, double& x, double& y) {
  x = a * b;
  y = std::fma(a, b, -x);
}

void grow(Expansion& e, double b) {
  Expansion h;
  h.reserve(e.size() + 1);
  double q = b;
  for (double component : e) {
    double sum = 0.0;
    double err = 0.0;
    twoSum(q, component, sum, err);
    q = sum;
    if (err != 0.0) h.push_back(err);
  }
  if (q != 0.0) h.push_back(q);
  e = std::move(h);
}

Expansion add(const Expansion& e, const Expansion& f) {
  Expansion r = e;
  for (double c : f) grow(r, c);
  return r;
}

Expansion negate(Expansion e) {
  for (double& c : e) c = -c;
  return e;
}

Expansion mul(const Expansion& e, const Expansion& f) {
  Expansion r;
  for (double a : e) {
    for (double b : f) {
      double x = 0.0;
      double y = 0.0;
      twoProduct(a, b, x, y);
      if (y != 0.0) grow(r, y);
      if (x != 0.0) grow(r, x);
    }
  }
  return r;
}

Expansion diff(double a, double b) {
  double x = 0.0;
  double y = 0.0;
  twoSum(a, -b, x, y);
  Expansion e;
  if (y != 0.0) e.push_back(y);
  if (x != 0.0) e.push_back(x);
  return e;
}

int sign(const Expansion& e) {
  for (auto it = e.rbegin(); it != e.rend(); ++it) {
    if (*it > 0.0) return 1;
    if (*it < 0.0) return -1;
  }
  return 0;
}

int orient2dExact(const Vec2& a, const Vec2& b, const Vec2& c) {
  const Expansion left = mul(diff(a.x(), c.x()), diff(b.y(), c.y()));
  const Expansion right = mul(diff(a.y(), c.y()), diff(b.x(), c.x()));
  return sign(add(left, negate(right)));
}

// Sign of det[a-d; b-d; c-d].
int orient3dRawExact(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const Expansion adx = diff(a.x(), d.x()), ady = diff(a.y(), d.y()), adz = diff(a.z(), d.z());
  const Expansion bdx = diff(b.x(), d.x()), bdy = diff(b.y(), d.y()), bdz = diff(b.z(), d.z());
  const Expansion cdx = diff(c.x(), d.x()), cdy = diff(c.y(), d.y()), cdz = diff(c.z(), d.z());
  const Expansion m1 = add(mul(bdx, cdy), negate(mul(cdx, bdy)));
  const Expansion m2 = add(mul(cdx, ady), negate(mul(adx, cdy)));
  const Expansion m3 = add(mul(adx, bdy), negate(mul(bdx, ady)));
  return sign(add(add(mul(adz, m1), mul(bdz, m2)), mul(cdz, m3)));
}

// Projects coplanar geometry onto the coordinate plane most aligned with n.
struct Projector {
  int u = 0;
  int v = 1;
  explicit Projector(const Vec3& n) {
    const Vec3 an = n.cwiseAbs();
    if (an.x() >= an.y() && an.x() >= an.z()) {
      u = 1;
      v = 2;
    } else if (an.y() >= an.z()) {
      u = 2;
      v = 0;
    }
  }
  Vec2 operator()(const Vec3& p) const { return {p[u], p[v]}; }
};

bool onSegmentCollinear(const Vec2& p, const Vec2& q, const Vec2& x) {
  return std::min(p.x(), q.x()) <= x.x() && x.x() <= std::max(p.x(), q.x()) &&
         std::min(p.y(), q.y()) <= x.y() && x.y() <= std::max(p.y(), q.y());
}

bool trianglesIntersectClosed2d(const std::array<Vec2, 3>& t, const std::array<Vec2, 3>& u) {
  for (int i = 0; i < 3; ++i) {
    if (pointInTriangleClosed2d(t[i], u[0], u[1], u[2])) return true;
    if (pointInTriangleClosed2d(u[i], t[0], t[1], t[2])) return true;
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (segmentsIntersect2d(t[i], t[(i + 1) % 3], u[j], u[(j + 1) % 3])) return true;
    }
  }
  return false;
}

// Direction s->w lies in the closed cone of triangle (s, c, d) at s.
// All four points are coplanar.
bool spokeInCone(const Vec3& s, const Vec3& w, const Vec3& c, const Vec3& d, const Projector& proj) {
  const Vec2 s2 = proj(s);
  const Vec2 w2 = proj(w);
  Vec2 c2 = proj(c);
  Vec2 d2 = proj(d);
  if (orient2d(s2, c2, d2) < 0) std::swap(c2, d2);
  return orient2d(s2, c2, w2) >= 0 && orient2d(s2, w2, d2) >= 0;
}

bool collinearSameDirection(const Vec2& s, const Vec2& a, const Vec2& c) {
  return orient2d(s, a, c) == 0 && (a - s).dot(c - s) > 0.0;
}

}  // namespace

int orient2d(const Vec2& a, const Vec2& b, const Vec2& c) {
  auto same = [](const Vec2& p, const Vec2& q) { return p.x() == q.x() && p.y() == q.y(); };
  if (same(a, b) || same(b, c) || same(a, c)) return 0;
  const double detLeft = (a.x() - c.x()) * (b.y() - c.y());
  const double detRight = (a.y() - c.y()) * (b.x() - c.x());
  const double det = detLeft - detRight;
  double detSum = 0.0;
  if (detLeft > 0.0) {
    if (detRight <= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    detSum = detLeft + detRight;
  } else if (detLeft < 0.0) {
    if (detRight >= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    detSum = -detLeft - detRight;
  } else {
    return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
  }
  const double errBound = kCcwErrBound * detSum;
  if (det > errBound) return 1;
  if (-det > errBound) return -1;
  return orient2dExact(a, b, c);
}

int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const double adx = a.x() - d.x(), ady = a.y() - d.y(), adz = a.z() - d.z();
  const double bdx = b.x() - d.x(), bdy = b.y() - d.y(), bdz = b.z() - d.z();
  const double cdx = c.x() - d.x(), cdy = c.y() - d.y(), cdz = c.z() - d.z();
  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double det = adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) + cdz * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * std::abs(adz) +
                           (std::abs(cdxady) + std::abs(adxcdy)) * std::abs(bdz) +
                           (std::abs(adxbdy) + std::abs(bdxady)) * std::abs(cdz);
  const double errBound = kO3dErrBound * permanent;
  // Negated: the raw determinant is positive when d lies below plane(a,b,c).
  if (det > errBound) return -1;
  if (-det > errBound) return 1;
  return -orient3dRawExact(a, b, c, d);
}

bool pointInTriangleClosed2d(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
  const int o1 = orient2d(a, b, p);
  const int o2 = orient2d(b, c, p);
  const int o3 = orient2d(c, a, p);
  const bool hasNeg = o1 < 0 || o2 < 0 || o3 < 0;
  const bool hasPos = o1 > 0 || o2 > 0 || o3 > 0;
  if (hasNeg && hasPos) return false;
  if (hasNeg || hasPos) return true;
  // All zero: degenerate triangle; fall back to segment containment.
  return onSegmentCollinear(a, b, p) || onSegmentCollinear(b, c, p) || onSegmentCollinear(c, a, p);
}

bool pointInTriangleStrict2d(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
  const int o1 = orient2d(a, b, p);
  const int o2 = orient2d(b, c, p);
  const int o3 = orient2d(c, a, p);
  return (o1 > 0 && o2 > 0 && o3 > 0) || (o1 < 0 && o2 < 0 && o3 < 0);
}

bool segmentsIntersect2d(const Vec2& p, const Vec2& q, const Vec2& a, const Vec2& b) {
  const int o1 = orient2d(p, q, a);
  const int o2 = orient2d(p, q, b);
  const int o3 = orient2d(a, b, p);
  const int o4 = orient2d(a, b, q);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && onSegmentCollinear(p, q, a)) return true;
  if (o2 == 0 && onSegmentCollinear(p, q, b)) return true;
  if (o3 == 0 && onSegmentCollinear(a, b, p)) return true;
  if (o4 == 0 && onSegmentCollinear(a, b, q)) return true;
  return false;
}

bool trianglesOverlap2d(const std::array<Vec2, 3>& tIn, const std::array<Vec2, 3>& uIn) {
  std::array<Vec2, 3> t = tIn;
  std::array<Vec2, 3> u = uIn;
  const int ot = orient2d(t[0], t[1], t[2]);
  const int ou = orient2d(u[0], u[1], u[2]);
  if (ot == 0 || ou == 0) return false;
  if (ot < 0) std::swap(t[1], t[2]);
  if (ou < 0) std::swap(u[1], u[2]);
  auto separatedBy = [](const std::array<Vec2, 3>& owner, const std::array<Vec2, 3>& other) {
    for (int i = 0; i < 3; ++i) {
      const Vec2& p = owner[i];
      const Vec2& q = owner[(i + 1) % 3];
      if (orient2d(p, q, other[0]) <= 0 && orient2d(p, q, other[1]) <= 0 &&
          orient2d(p, q, other[2]) <= 0) {
        return true;
      }
    }
    return false;
  };
  return !separatedBy(t, u) && !separatedBy(u, t);
}

bool segmentTriangleIntersect3d(const Vec3& p, const Vec3& q, const Vec3& a, const Vec3& b,
                                const Vec3& c) {
  const int op = orient3d(a, b, c, p);
  const int oq = orient3d(a, b, c, q);
  if (op * oq > 0) return false;
  if (op == 0 && oq == 0) {
    const Vec3 n = (b - a).cross(c - a);
    if (n.squaredNorm() == 0.0) return false;
    const Projector proj(n);
    const Vec2 p2 = proj(p), q2 = proj(q), a2 = proj(a), b2 = proj(b), c2 = proj(c);
    return pointInTriangleClosed2d(p2, a2, b2, c2) || pointInTriangleClosed2d(q2, a2, b2, c2) ||
           segmentsIntersect2d(p2, q2, a2, b2) || segmentsIntersect2d(p2, q2, b2, c2) ||
           segmentsIntersect2d(p2, q2, c2, a2);
  }
  const int s1 = orient3d(p, q, a, b);
  const int s2 = orient3d(p, q, b, c);
  const int s3 = orient3d(p, q, c, a);
  const bool hasNeg = s1 < 0 || s2 < 0 || s3 < 0;
  const bool hasPos = s1 > 0 || s2 > 0 || s3 > 0;
  return !(hasNeg && hasPos);
}

bool facesIntersect3d(const std::array<Vec3, 3>& t, const Face& tv, const std::array<Vec3, 3>& u,
                      const Face& uv) {
  int shared = 0;
  int ti = -1;
  int ui = -1;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (tv[i] == uv[j]) {
        ++shared;
        ti = i;
        ui = j;
      }
    }
  }
  if (shared == 3) return true;

  if (shared == 2) {
    // Find the vertex of each face not on the shared edge.
    int ta = -1;
    int ua = -1;
    for (int i = 0; i < 3; ++i) {
      if (tv[i] != uv[0] && tv[i] != uv[1] && tv[i] != uv[2]) ta = i;
      if (uv[i] != tv[0] && uv[i] != tv[1] && uv[i] != tv[2]) ua = i;
    }
    const Vec3& s = t[(ta + 1) % 3];
    const Vec3& r = t[(ta + 2) % 3];
    if (orient3d(s, r, t[ta], u[ua]) != 0) return false;
    const Projector proj((r - s).cross(t[ta] - s));
    return orient2d(proj(s), proj(r), proj(t[ta])) * orient2d(proj(s), proj(r), proj(u[ua])) > 0;
  }

  if (shared == 1) {
    const Vec3& s = t[ti];
    const Vec3& a = t[(ti + 1) % 3];
    const Vec3& b = t[(ti + 2) % 3];
    const Vec3& c = u[(ui + 1) % 3];
    const Vec3& d = u[(ui + 2) % 3];
    const int oc = orient3d(s, a, b, c);
    const int od = orient3d(s, a, b, d);
    if (oc == 0 && od == 0) {
      const Projector proj((a - s).cross(b - s));
      const std::array<Vec2, 3> t2{proj(s), proj(a), proj(b)};
      const std::array<Vec2, 3> u2{proj(s), proj(c), proj(d)};
      if (trianglesOverlap2d(t2, u2)) return true;
      return collinearSameDirection(t2[0], t2[1], u2[1]) ||
             collinearSameDirection(t2[0], t2[1], u2[2]) ||
             collinearSameDirection(t2[0], t2[2], u2[1]) ||
             collinearSameDirection(t2[0], t2[2], u2[2]);
    }
    if (segmentTriangleIntersect3d(a, b, s, c, d)) return true;
    if (segmentTriangleIntersect3d(c, d, s, a, b)) return true;
    const Vec3 nu = (c - s).cross(d - s);
    const Vec3 nt = (a - s).cross(b - s);
    const Projector pu(nu);
    const Projector pt(nt);
    if (orient3d(s, c, d, a) == 0 && spokeInCone(s, a, c, d, pu)) return true;
    if (orient3d(s, c, d, b) == 0 && spokeInCone(s, b, c, d, pu)) return true;
    if (oc == 0 && spokeInCone(s, c, a, b, pt)) return true;
    if (od == 0 && spokeInCone(s, d, a, b, pt)) return true;
    return false;
  }

  // Disjoint vertex sets.
  int signsU[3];
  for (int i = 0; i < 3; ++i) signsU[i] = orient3d(t[0], t[1], t[2], u[i]);
  if ((signsU[0] > 0 && signsU[1] > 0 && signsU[2] > 0) ||
      (signsU[0] < 0 && signsU[1] < 0 && signsU[2] < 0)) {
    return false;
  }
  if (signsU[0] == 0 && signsU[1] == 0 && signsU[2] == 0) {
    const Vec3 n = (t[1] - t[0]).cross(t[2] - t[0]);
    if (n.squaredNorm() == 0.0) return false;
    const Projector proj(n);
    return trianglesIntersectClosed2d({proj(t[0]), proj(t[1]), proj(t[2])},
                                      {proj(u[0]), proj(u[1]), proj(u[2])});
  }
  int signsT[3];
  for (int i = 0; i < 3; ++i) signsT[i] = orient3d(u[0], u[1], u[2], t[i]);
  if ((signsT[0] > 0 && signsT[1] > 0 && signsT[2] > 0) ||
      (signsT[0] < 0 && signsT[1] < 0 && signsT[2] < 0)) {
    return false;
  }
  for (int i = 0; i < 3; ++i) {
    if (segmentTriangleIntersect3d(t[i], t[(i + 1) % 3], u[0], u[1], u[2])) return true;
    if (segmentTriangleIntersect3d(u[i], u[(i + 1) % 3], t[0], t[1], t[2])) return true;
  }
  return false;
}

}  // namespace papernet::predicates
