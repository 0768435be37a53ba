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

#include "papernet/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace papernet {

namespace {

using Json = nlohmann::ordered_json;

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string csvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("report lacks '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument(std::string("report field '") + key + "' has the wrong type");
  }
}

double finiteField(const Json& j, const char* key) {
  const Json& v = j.contains(key) ? j.at(key) : Json();
  if (!v.is_number()) throw std::invalid_argument(std::string("report field '") + key + "' is not a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw std::invalid_argument(std::string("report field '") + key + "' is not finite");
  return d;
}

}  // namespace

RunReport makeReport(const std::string& inputPath, const PipelineResult& result, const PipelineConfig& config) {
  RunReport r;
  r.inputPath = inputPath;
  r.success = result.success;
  r.inputFaceCount = result.inputFaces;
  r.outputFaceCount = result.outputFaces;
  r.hausdorff = result.hausdorff;
  r.chamfer = result.chamfer;
  r.chamferBeforePost = result.chamferBeforePost;
  r.initialOverlaps = result.initialOverlaps;
  r.finalOverlaps = result.finalOverlaps;
  r.reinits = result.reinits;
  for (const IterationLog& l : result.log) r.perIterationOverlapCounts.push_back(l.overlapsAfter);
  r.initializer = result.initializer;
  r.configDigest = configDigest(config);
  r.runtimeSeconds = result.runtimeSeconds;
  return r;
}

std::string reportJson(const RunReport& r) {
  Json j;
  j["schemaVersion"] = kReportSchemaVersion;
  j["inputPath"] = r.inputPath;
  j["success"] = r.success;
  j["inputFaceCount"] = r.inputFaceCount;
  j["outputFaceCount"] = r.outputFaceCount;
  j["hausdorff"] = r.hausdorff;
  j["chamfer"] = r.chamfer;
  j["chamferBeforePostprocess"] = r.chamferBeforePost;
  j["initialOverlaps"] = r.initialOverlaps;
  j["finalOverlaps"] = r.finalOverlaps;
  j["reinitializations"] = r.reinits;
  j["perIterationOverlapCounts"] = r.perIterationOverlapCounts;
  j["initializer"] = r.initializer;
  j["configDigest"] = r.configDigest;
  return j.dump(2) + "\n";
}

std::string timingJson(const RunReport& r) {
  Json j;
  j["schemaVersion"] = kReportSchemaVersion;
  j["runtimeSeconds"] = r.runtimeSeconds;
  return j.dump(2) + "\n";
}

RunReport parseReportJson(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("report is not JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("report is not an object");
  if (field<int>(j, "schemaVersion") != kReportSchemaVersion) {
    throw std::invalid_argument("unsupported report schema version");
  }
  RunReport r;
  r.inputPath = field<std::string>(j, "inputPath");
  r.success = field<bool>(j, "success");
  r.inputFaceCount = field<int>(j, "inputFaceCount");
  r.outputFaceCount = field<int>(j, "outputFaceCount");
  r.hausdorff = finiteField(j, "hausdorff");
  r.chamfer = finiteField(j, "chamfer");
  r.chamferBeforePost = finiteField(j, "chamferBeforePostprocess");
  r.initialOverlaps = field<int>(j, "initialOverlaps");
  r.finalOverlaps = field<int>(j, "finalOverlaps");
  r.reinits = field<int>(j, "reinitializations");
  r.perIterationOverlapCounts = field<std::vector<int>>(j, "perIterationOverlapCounts");
  r.initializer = field<std::string>(j, "initializer");
  r.configDigest = field<std::string>(j, "configDigest");
  if (j.size() != 14) throw std::invalid_argument("report has unexpected fields");
  if (r.success && r.outputFaceCount > r.inputFaceCount) {
    throw std::invalid_argument("successful report grew the mesh");
  }
  return r;
}

std::string batchCsv(const std::vector<BatchRow>& rows) {
  std::string out =
      "mesh,success,input_faces,output_faces,initial_overlaps,final_overlaps,iterations,reinits,"
      "hausdorff,chamfer,initializer,config_digest,error\n";
  int successes = 0;
  double chamferSum = 0.0;
  double hausdorffSum = 0.0;
  for (const BatchRow& row : rows) {
    const RunReport& r = row.report;
    const bool ok = row.error.empty() && r.success;
    out += csvField(row.name) + ',' + (ok ? "1" : "0") + ',';
    if (row.error.empty()) {
      out += std::to_string(r.inputFaceCount) + ',' + std::to_string(r.outputFaceCount) + ',' +
             std::to_string(r.initialOverlaps) + ',' + std::to_string(r.finalOverlaps) + ',' +
             std::to_string(r.perIterationOverlapCounts.size()) + ',' + std::to_string(r.reinits) + ',' +
             number(r.hausdorff) + ',' + number(r.chamfer) + ',' + r.initializer + ',' + r.configDigest + ",\n";
    } else {
      out += ",,,,,,,,,," + csvField(row.error) + "\n";
    }
    if (ok) {
      ++successes;
      chamferSum += r.chamfer;
      hausdorffSum += r.hausdorff;
    }
  }
  if (rows.empty()) return out;
  out += "ALL," + number(successes / static_cast<double>(rows.size())) + ",,,,,,,";
  out += successes ? number(hausdorffSum / successes) + ',' + number(chamferSum / successes) : std::string(",");
  out += ",,," + std::to_string(successes) + "/" + std::to_string(rows.size()) + " succeeded\n";
  return out;
}

std::string batchTimingCsv(const std::vector<BatchRow>& rows) {
  std::string out = "mesh,runtime_seconds\n";
  double sum = 0.0;
  int counted = 0;
  for (const BatchRow& row : rows) {
    out += csvField(row.name) + ',';
    if (row.error.empty()) {
      out += number(row.report.runtimeSeconds);
      sum += row.report.runtimeSeconds;
      ++counted;
    }
    out += '\n';
  }
  if (!rows.empty()) out += "MEAN," + (counted ? number(sum / counted) : std::string()) + "\n";
  return out;
}

}  // namespace papernet
