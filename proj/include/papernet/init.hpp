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

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "papernet/unfold.hpp"

namespace papernet {

/// Total length of cut edges, each counted once.
double cutLength(const TriMesh& mesh, const UnfoldTree& tree);

/// Maximum-weight spanning tree with edge length as weight: long edges
/// become hinges, leaving the shortest possible cut perimeter. Ties are
/// broken by edge id.
UnfoldTree minPerimeterTree(const TriMesh& mesh);

/// Minimum spanning tree under independent random link weights drawn from
/// mt19937_64(seed).
UnfoldTree randomSpanningTree(const TriMesh& mesh, std::uint64_t seed);

struct TabuConfig {
  int tenure = 16;
  int neighborhood = 256;    ///< non-tree links sampled per step
  int removalsPerLink = 2;   ///< tree links tried on each induced cycle
};

/// Link-swap local search on the overlap count, started from
/// minPerimeterTree. Returns the best tree seen; stops early at zero
/// overlaps.
UnfoldTree tabuSearchInit(const TriMesh& mesh, int budget, std::uint64_t seed, const TabuConfig& config = {});

/// Connected components of the hinge forest, each sorted, ordered by size
/// (descending) and then by smallest face id.
std::vector<std::vector<int>> forestPatches(const TriMesh& mesh, const std::vector<std::uint8_t>& hinge);

/// Joins the patches of an acyclic hinge forest into one spanning tree.
/// Patches are attached to the largest one in decreasing size; for each,
/// every connecting edge is tried and the one whose partial unfolding has
/// the fewest overlaps (lowest edge id on ties) becomes a hinge.
/// Throws UnfoldError if the hinges contain a cycle.
UnfoldTree mergePatches(const TriMesh& mesh, const std::vector<std::uint8_t>& hinge);

/// Tree whose cuts are exactly the given vertex pairs when they leave a
/// spanning tree; otherwise the remaining forest is merged. Throws
/// UnfoldError for unknown edges or when the hinges contain a cycle.
UnfoldTree treeFromCuts(const TriMesh& mesh, const std::vector<std::pair<int, int>>& cuts);

/// One `i j` vertex pair (0-based) per line; '#' starts a comment.
std::vector<std::pair<int, int>> readCutFile(const std::filesystem::path& path);
/// Whitespace-separated 0-based vertex ids; '#' starts a comment.
std::vector<int> readVertexList(const std::filesystem::path& path);

}  // namespace papernet
