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

#include <filesystem>
#include <iosfwd>
#include <string>

#include "papernet/mesh.hpp"

namespace papernet {

/// Reads `v x y z` and `f i j k` records (1-based, negative indices relative
/// to the end). Texture/normal references after '/' are ignored, as are all
/// other record types. Throws MeshError naming the offending line.
TriMesh readObj(std::istream& in);
TriMesh loadMesh(const std::filesystem::path& path);

/// Writes alive elements only, renumbered densely. Coordinates use the
/// shortest decimal form that round-trips to the same double.
void writeObj(std::ostream& out, const TriMesh& mesh);
void saveMesh(const std::filesystem::path& path, const TriMesh& mesh);

}  // namespace papernet
