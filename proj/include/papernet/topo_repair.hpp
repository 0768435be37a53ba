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

#include <string>
#include <vector>

#include "papernet/state.hpp"

namespace papernet {

/// Where the surviving vertex of a collapse goes. kEndA keeps the start
/// vertex of the edge's halfedge, kEndB its end vertex.
enum class Placement { kMidpoint, kEndA, kEndB };
const char* toString(Placement p);

struct TopoConfig {
  bool broaden = true;            ///< one-ring exit strategy
  bool lowerExpectations = true;  ///< least-bad collapse exit strategy
  bool smartPlacement = true;     ///< try both endpoints besides the midpoint
};

struct CollapseOutcome {
  bool accepted = false;
  int edge = -1;
  Placement placement = Placement::kMidpoint;
  int overlapsBefore = 0;
  int bestOverlaps = -1;  ///< lowest count over valid placements, -1 if none
  std::string reason;     ///< why it was rejected
  CollapseRecord record;  ///< valid when accepted
  UnfoldTree previousTree;
};

/// Tries the placements of one edge collapse, each with the tree repaired
/// by applyCollapseToTree. Placements failing the link condition or the
/// local safety check are skipped. Placements are ranked by overlap count,
/// ties by squared distance to the planes of the faces around the edge.
/// The best placement is applied when its
/// overlap count is lower than before, or unconditionally with `force`.
CollapseOutcome tryCollapse(UnfoldState& state, int edge, const TopoConfig& config, bool force = false);

/// Restores the state an accepted outcome started from.
void undoCollapse(UnfoldState& state, const CollapseOutcome& outcome);

struct PassResult {
  int before = 0;
  int after = 0;
  int accepted = 0;
  bool broadened = false;
  bool lowered = false;
  int loweredEdge = -1;
  std::vector<int> tried;  ///< edges evaluated, in order
};

/// One priority-queue pass over the edges of overlapping faces, highest
/// overlap involvement first (ties: longer edge, then lower id). With no
/// accepted collapse the exit strategies apply: the queue is refilled with
/// one-ring edges when iteration > 1, then the least-bad candidate is
/// forced.
PassResult decimationPass(UnfoldState& state, int iteration, const TopoConfig& config);

}  // namespace papernet
