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

#include "papernet/pipeline.hpp"

namespace papernet {

inline constexpr int kReportSchemaVersion = 1;

/// Wall-clock time lives beside the report, never inside it, so reports
/// of identical runs are byte-identical.
struct RunReport {
  std::string inputPath;
  bool success = false;
  int inputFaceCount = 0;
  int outputFaceCount = 0;
  double hausdorff = 0.0;
  double chamfer = 0.0;
  double chamferBeforePost = 0.0;
  int initialOverlaps = 0;
  int finalOverlaps = 0;
  int reinits = 0;
  std::vector<int> perIterationOverlapCounts;
  std::string initializer;
  std::string configDigest;
  double runtimeSeconds = 0.0;
};

RunReport makeReport(const std::string& inputPath, const PipelineResult& result, const PipelineConfig& config);

/// Pretty-printed JSON without the runtime field.
std::string reportJson(const RunReport& report);
std::string timingJson(const RunReport& report);

/// Parses and checks the schema; throws std::invalid_argument on mismatch.
RunReport parseReportJson(const std::string& text);

struct BatchRow {
  std::string name;
  RunReport report;
  std::string error;  ///< non-empty when the mesh could not be processed
};

/// Per-mesh rows followed by one aggregate row; deterministic.
std::string batchCsv(const std::vector<BatchRow>& rows);
std::string batchTimingCsv(const std::vector<BatchRow>& rows);

}  // namespace papernet
