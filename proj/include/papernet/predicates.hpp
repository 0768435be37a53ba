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

#pragma once

#include "papernet/types.hpp"

/// Exact orientation predicates and the triangle intersection tests built on
/// them. Each predicate runs a floating-point filter first and falls back to
/// exact expansion arithmetic when the filter cannot certify the sign.
namespace papernet::predicates {

/// +1 if c lies left of a->b, -1 if right, 0 if collinear.
int orient2d(const Vec2& a, const Vec2& b, const Vec2& c);

/// +1 if d lies on the side of plane(a,b,c) that its CCW normal points to.
int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

/// Open interiors of two non-degenerate 2D triangles share a point.
/// Boundary contact alone is not an overlap.
bool trianglesOverlap2d(const std::array<Vec2, 3>& t, const std::array<Vec2, 3>& u);

/// Closed 2D segment/segment intersection (touching counts).
bool segmentsIntersect2d(const Vec2& p, const Vec2& q, const Vec2& a, const Vec2& b);

/// p lies in the closed triangle (either orientation).
bool pointInTriangleClosed2d(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c);

/// p lies strictly inside the triangle (either orientation).
bool pointInTriangleStrict2d(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c);

/// Closed segment/triangle intersection in 3D.
bool segmentTriangleIntersect3d(const Vec3& p, const Vec3& q, const Vec3& a, const Vec3& b,
                                const Vec3& c);

/// Relationship of two mesh faces given by their vertex ids. Shared vertices
/// are treated as legitimate contact; any other common point is reported.
bool facesIntersect3d(const std::array<Vec3, 3>& t, const Face& tv, const std::array<Vec3, 3>& u,
                      const Face& uv);

}  // namespace papernet::predicates
