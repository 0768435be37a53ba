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

#include "papernet/state.hpp"

namespace papernet {

UnfoldState::UnfoldState(TriMesh m, UnfoldTree t, std::vector<char> pins)
    : mesh(std::move(m)), tree(std::move(t)), pinned(std::move(pins)) {
  pinned.resize(mesh.vertexSlots(), 0);
  refresh();
}

void UnfoldState::refresh() {
  layout = unfold(mesh, tree);
  overlaps = countOverlaps(mesh, layout);
}

}  // namespace papernet
