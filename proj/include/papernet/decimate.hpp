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

#include "papernet/mesh.hpp"

namespace papernet {

/// Quadric error metric decimation (Garland and Heckbert) down to at most
/// `targetFaces` faces. Collapses that break the link condition, flip or
/// degenerate a face are skipped. Returns a compacted mesh. Throws
/// MeshError when the budget cannot be reached.
TriMesh qslimBaseline(const TriMesh& mesh, int targetFaces);

}  // namespace papernet
