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

#include <array>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "papernet/unfold.hpp"

namespace papernet {

/// Flat hinges join coplanar faces and need no crease.
enum class EdgeKind { kCut, kMountain, kValley, kFlat };
const char* toString(EdgeKind kind);

/// Page coordinates are millimetres with y pointing down.
struct NetSegment {
  int edge = -1;
  int face = -1;  ///< owning face for cuts; the parent face for folds
  EdgeKind kind = EdgeKind::kCut;
  Vec2 a = Vec2::Zero();
  Vec2 b = Vec2::Zero();
};

struct NetOptions {
  double mmPerUnit = 10.0;
  double marginMm = 5.0;
  bool tightRotation = true;  ///< rotate to the minimum-area bounding rectangle
};

struct NetDocument {
  std::vector<int> faces;                    ///< face ids in polygon order
  std::vector<std::array<Vec2, 3>> polygons; ///< parallel to `faces`
  std::vector<NetSegment> segments;          ///< cuts first, then folds, by edge id
  double width = 0.0;   ///< page size including margins
  double height = 0.0;
  double mmPerUnit = 1.0;
  /// page = scale * flipY(rotation * layout) + offset
  double angle = 0.0;
  Vec2 offset = Vec2::Zero();
  bool overlapFree = false;

  Vec2 toPage(const Vec2& p) const;
};

/// Mountain when the dihedral across `e` is convex seen from outside. Exact.
EdgeKind foldKind(const TriMesh& mesh, int e);

NetDocument buildNet(const TriMesh& mesh, const UnfoldTree& tree, const Layout& layout,
                     const NetOptions& options = {});

void writeSvg(std::ostream& out, const NetDocument& net);
void saveSvg(const std::filesystem::path& path, const NetDocument& net);

}  // namespace papernet
