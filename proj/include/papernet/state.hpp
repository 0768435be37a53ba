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

#include <vector>

#include "papernet/unfold.hpp"

namespace papernet {

/// Mesh, unfold tree and the derived layout and overlaps, kept in sync.
struct UnfoldState {
  TriMesh mesh;
  UnfoldTree tree;
  Layout layout;
  OverlapSet overlaps;
  std::vector<char> pinned;  ///< per vertex slot

  UnfoldState() = default;
  UnfoldState(TriMesh m, UnfoldTree t, std::vector<char> pins = {});

  /// Recomputes layout and overlaps from mesh and tree.
  void refresh();
  int overlapCount() const { return overlaps.count(); }
  bool isPinned(int v) const { return v < static_cast<int>(pinned.size()) && pinned[v]; }
};

}  // namespace papernet
