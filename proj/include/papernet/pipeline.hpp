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
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "papernet/geom_repair.hpp"
#include "papernet/postprocess.hpp"
#include "papernet/topo_repair.hpp"

namespace papernet {

enum class InitKind { kMinPerimeter, kTabu, kRandom, kImport };
const char* toString(InitKind k);
InitKind parseInitKind(const std::string& name);

struct PipelineConfig {
  int maxIterations = 100;
  InitKind initializer = InitKind::kTabu;
  std::uint64_t seed = 1;
  int tabuBudget = 100;
  std::vector<std::pair<int, int>> importedCuts;  ///< input vertex ids
  GeomConfig geom;
  TopoConfig topo;
  PostConfig post;
  int maxReinits = 0;
  std::vector<int> pinned;  ///< input vertex ids
  double timeLimitSeconds = 0.0;  ///< 0 means unlimited
};

/// Sets one field from its config-file key; throws std::invalid_argument on
/// unknown keys or malformed values.
void setConfigValue(PipelineConfig& config, const std::string& key, const std::string& value);
/// Reads `key = value` lines; '#' starts a comment.
void readConfig(PipelineConfig& config, std::istream& in);
void readConfigFile(PipelineConfig& config, const std::filesystem::path& path);
/// Every field in a fixed order, in the same syntax readConfig accepts.
std::string configText(const PipelineConfig& config);
/// FNV-1a 64 of configText, as 16 hex digits.
std::string configDigest(const PipelineConfig& config);

struct IterationLog {
  int attempt = 0;
  int iteration = 0;
  int overlapsBefore = 0;
  int overlapsAfterGeometry = 0;
  int overlapsAfter = 0;
  int faces = 0;
  int vertexMoves = 0;
  int flattenings = 0;
  bool flow = false;
  int collapses = 0;
  bool broadened = false;
  bool lowered = false;
};

struct PipelineResult {
  bool success = false;
  TriMesh mesh;      ///< compacted, in input units
  UnfoldTree tree;   ///< over `mesh`
  Layout layout;     ///< unfolding of `mesh`, in input units
  std::string initializer;
  int inputFaces = 0;
  int outputFaces = 0;
  int initialOverlaps = 0;
  int finalOverlaps = 0;
  int reinits = 0;
  std::vector<IterationLog> log;
  /// Metrics against the input, with both meshes scaled to unit diagonal.
  double hausdorff = 0.0;
  double chamfer = 0.0;
  double chamferBeforePost = 0.0;
  bool postChanged = false;
  double runtimeSeconds = 0.0;
  double postRuntimeSeconds = 0.0;
};

/// Builds the initial tree of the configured kind; `attempt` > 0 selects a
/// re-initialization (seed offset, imported cuts replaced by the minimum
/// perimeter tree).
UnfoldTree initialTree(const TriMesh& mesh, const PipelineConfig& config, int attempt);

/// Re-expresses a tree over a compacted copy of its mesh.
UnfoldTree remapTree(const TriMesh& from, const UnfoldTree& tree, const TriMesh& to,
                     const std::vector<int>& vertexMap, const std::vector<int>& faceMap);

/// Alternates geometric and topological repair until the unfolding is
/// overlap-free or the iteration budget runs out, then post-processes.
/// Throws MeshError when the input fails validation.
PipelineResult runPipeline(const TriMesh& input, const PipelineConfig& config);

}  // namespace papernet
