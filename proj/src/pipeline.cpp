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

#include "papernet/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "papernet/distance.hpp"
#include "papernet/init.hpp"
#include "papernet/validate.hpp"

namespace papernet {

const char* toString(InitKind k) {
  switch (k) {
    case InitKind::kMinPerimeter: return "minper";
    case InitKind::kTabu: return "tabu";
    case InitKind::kRandom: return "random";
    case InitKind::kImport: return "import";
  }
  return "?";
}

InitKind parseInitKind(const std::string& name) {
  for (InitKind k : {InitKind::kMinPerimeter, InitKind::kTabu, InitKind::kRandom, InitKind::kImport}) {
    if (name == toString(k)) return k;
  }
  throw std::invalid_argument("unknown initializer '" + name + "'");
}

// --- configuration ------------------------------------------------------------

namespace {

bool parseBool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw std::invalid_argument("expected a boolean, got '" + s + "'");
}

template <typename T>
T parseNumber(const std::string& s) {
  std::istringstream in(s);
  T value{};
  in >> value;
  if (in.fail() || !in.eof()) {
    std::string rest;
    if (!in.fail() && !(in >> rest)) return value;
    throw std::invalid_argument("malformed number '" + s + "'");
  }
  return value;
}

std::string formatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<int> parseIds(const std::string& s) {
  std::istringstream in(s);
  std::vector<int> ids;
  std::string token;
  while (in >> token) {
    const int id = parseNumber<int>(token);
    if (id < 0) throw std::invalid_argument("negative vertex id " + token);
    ids.push_back(id);
  }
  return ids;
}

}  // namespace

void setConfigValue(PipelineConfig& c, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "max_iterations") c.maxIterations = parseNumber<int>(v);
  else if (key == "initializer") c.initializer = parseInitKind(v);
  else if (key == "seed") c.seed = parseNumber<std::uint64_t>(v);
  else if (key == "tabu_budget") c.tabuBudget = parseNumber<int>(v);
  else if (key == "vertex_repositioning") c.geom.enabled = parseBool(v);
  else if (key == "vertex_in_face") c.geom.vertexInTriangle = parseBool(v);
  else if (key == "flatten_vertices") c.geom.flattenVertices = parseBool(v);
  else if (key == "surface_flow") c.geom.surfaceFlow = parseBool(v);
  else if (key == "flow_wc") c.geom.flow.wc = parseNumber<double>(v);
  else if (key == "flow_ws") c.geom.flow.ws = parseNumber<double>(v);
  else if (key == "flow_step") c.geom.flow.step = parseNumber<double>(v);
  else if (key == "flow_iterations") c.geom.flow.iterations = parseNumber<int>(v);
  else if (key == "broaden") c.topo.broaden = parseBool(v);
  else if (key == "lower_expectations") c.topo.lowerExpectations = parseBool(v);
  else if (key == "smart_collapse") c.topo.smartPlacement = parseBool(v);
  else if (key == "postprocess") c.post.enabled = parseBool(v);
  else if (key == "post_distance_steps") c.post.distanceSteps = parseNumber<int>(v);
  else if (key == "post_rounds") c.post.rounds = parseNumber<int>(v);
  else if (key == "post_overlap_steps") c.post.overlapSteps = parseNumber<int>(v);
  else if (key == "post_coupling_steps") c.post.couplingSteps = parseNumber<int>(v);
  else if (key == "post_step") c.post.step = parseNumber<double>(v);
  else if (key == "post_isometry_tolerance") c.post.isometryTolerance = parseNumber<double>(v);
  else if (key == "metric_samples_per_face") c.post.metricSamplesPerFace = parseNumber<int>(v);
  else if (key == "reinits") c.maxReinits = parseNumber<int>(v);
  else if (key == "pinned") c.pinned = parseIds(v);
  else if (key == "time_limit") c.timeLimitSeconds = parseNumber<double>(v);
  else throw std::invalid_argument("unknown config key '" + key + "'");
}

void readConfig(PipelineConfig& config, std::istream& in) {
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(lineNo) + ": expected key = value");
    }
    try {
      setConfigValue(config, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineNo) + ": " + e.what());
    }
  }
}

void readConfigFile(PipelineConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  readConfig(config, in);
}

std::string configText(const PipelineConfig& c) {
  auto b = [](bool x) { return x ? "true" : "false"; };
  std::ostringstream os;
  os << "max_iterations = " << c.maxIterations << "\n"
     << "initializer = " << toString(c.initializer) << "\n"
     << "seed = " << c.seed << "\n"
     << "tabu_budget = " << c.tabuBudget << "\n"
     << "vertex_repositioning = " << b(c.geom.enabled) << "\n"
     << "vertex_in_face = " << b(c.geom.vertexInTriangle) << "\n"
     << "flatten_vertices = " << b(c.geom.flattenVertices) << "\n"
     << "surface_flow = " << b(c.geom.surfaceFlow) << "\n"
     << "flow_wc = " << formatDouble(c.geom.flow.wc) << "\n"
     << "flow_ws = " << formatDouble(c.geom.flow.ws) << "\n"
     << "flow_step = " << formatDouble(c.geom.flow.step) << "\n"
     << "flow_iterations = " << c.geom.flow.iterations << "\n"
     << "broaden = " << b(c.topo.broaden) << "\n"
     << "lower_expectations = " << b(c.topo.lowerExpectations) << "\n"
     << "smart_collapse = " << b(c.topo.smartPlacement) << "\n"
     << "postprocess = " << b(c.post.enabled) << "\n"
     << "post_distance_steps = " << c.post.distanceSteps << "\n"
     << "post_rounds = " << c.post.rounds << "\n"
     << "post_overlap_steps = " << c.post.overlapSteps << "\n"
     << "post_coupling_steps = " << c.post.couplingSteps << "\n"
     << "post_step = " << formatDouble(c.post.step) << "\n"
     << "post_isometry_tolerance = " << formatDouble(c.post.isometryTolerance) << "\n"
     << "metric_samples_per_face = " << c.post.metricSamplesPerFace << "\n"
     << "reinits = " << c.maxReinits << "\n"
     << "pinned =";
  for (int v : c.pinned) os << " " << v;
  os << "\n"
     << "time_limit = " << formatDouble(c.timeLimitSeconds) << "\n";
  return os.str();
}

std::string configDigest(const PipelineConfig& config) {
  std::string text = configText(config);
  for (const auto& [a, b] : config.importedCuts) text += "cut " + std::to_string(a) + " " + std::to_string(b) + "\n";
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// --- pipeline ---------------------------------------------------------------

UnfoldTree initialTree(const TriMesh& mesh, const PipelineConfig& config, int attempt) {
  const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(attempt);
  switch (config.initializer) {
    case InitKind::kMinPerimeter: return minPerimeterTree(mesh);
    case InitKind::kTabu: return tabuSearchInit(mesh, config.tabuBudget, seed);
    case InitKind::kRandom: return randomSpanningTree(mesh, seed);
    case InitKind::kImport: return attempt == 0 ? treeFromCuts(mesh, config.importedCuts) : minPerimeterTree(mesh);
  }
  return minPerimeterTree(mesh);
}

UnfoldTree remapTree(const TriMesh& from, const UnfoldTree& tree, const TriMesh& to,
                     const std::vector<int>& vertexMap, const std::vector<int>& faceMap) {
  std::map<std::pair<int, int>, int> edgeOf;
  for (int e = 0; e < to.edgeSlots(); ++e) {
    if (!to.edgeAlive(e)) continue;
    const auto v = to.edgeVertices(e);
    edgeOf[std::minmax(v[0], v[1])] = e;
  }
  UnfoldTree out;
  out.rootFace = faceMap[tree.rootFace];
  out.hinge.assign(to.edgeSlots(), 0);
  for (int e : tree.hingeEdges(from)) {
    const auto v = from.edgeVertices(e);
    out.hinge[edgeOf.at(std::minmax(vertexMap[v[0]], vertexMap[v[1]]))] = 1;
  }
  return out;
}

namespace {

struct Normalization {
  Vec3 center = Vec3::Zero();
  double scale = 1.0;  ///< normalized = (p - center) * scale
};

Normalization normalizationOf(const TriMesh& mesh) {
  Normalization n;
  const Box3 box = mesh.bounds();
  n.center = box.center();
  const double d = box.diagonal().norm();
  n.scale = d > 0.0 ? 1.0 / d : 1.0;
  return n;
}

TriMesh transformed(TriMesh mesh, const Vec3& shift, double scale, bool forward) {
  for (int v = 0; v < mesh.vertexSlots(); ++v) {
    const Vec3& p = mesh.position(v);
    mesh.setPosition(v, forward ? Vec3((p - shift) * scale) : Vec3(p / scale + shift));
  }
  return mesh;
}

}  // namespace

PipelineResult runPipeline(const TriMesh& input, const PipelineConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };

  const ValidationReport report = validate(input);
  if (!report.acceptable()) throw MeshError("invalid input mesh: " + report.describe());
  std::vector<char> pins(input.vertexSlots(), 0);
  for (int v : config.pinned) {
    if (v < 0 || v >= input.vertexSlots() || !input.vertexAlive(v)) {
      throw MeshError("pinned vertex " + std::to_string(v) + " does not exist");
    }
    pins[v] = 1;
  }

  PipelineResult result;
  result.initializer = toString(config.initializer);
  result.inputFaces = input.numFaces();
  const Normalization norm = normalizationOf(input);
  const TriMesh reference = transformed(input, norm.center, norm.scale, true);

  UnfoldState state(reference, initialTree(reference, config, 0), pins);
  result.initialOverlaps = state.overlapCount();
  bool timedOut = false;
  for (int attempt = 0;; ++attempt) {
    int iteration = 0;
    while (state.overlapCount() > 0 && iteration < config.maxIterations) {
      ++iteration;
      IterationLog log;
      log.attempt = attempt;
      log.iteration = iteration;
      log.overlapsBefore = state.overlapCount();
      const GeomStageResult g = geometricStage(state, config.geom);
      log.overlapsAfterGeometry = g.after;
      log.vertexMoves = g.vertexMoves;
      log.flattenings = g.flattenings;
      log.flow = g.flowAccepted;
      const PassResult p = decimationPass(state, iteration, config.topo);
      log.collapses = p.accepted + (p.lowered ? 1 : 0);
      log.broadened = p.broadened;
      log.lowered = p.lowered;
      log.overlapsAfter = state.overlapCount();
      log.faces = state.mesh.numFaces();
      result.log.push_back(log);
      if (config.timeLimitSeconds > 0.0 && elapsed() > config.timeLimitSeconds) {
        timedOut = true;
        break;
      }
      // Nothing changed: every further iteration would repeat this one.
      if (g.vertexMoves == 0 && g.flattenings == 0 && !g.flowAccepted && log.collapses == 0) break;
    }
    if (state.overlapCount() == 0 || timedOut || attempt >= config.maxReinits) break;
    ++result.reinits;
    state = UnfoldState(state.mesh, initialTree(state.mesh, config, attempt + 1), state.pinned);
  }
  result.finalOverlaps = state.overlapCount();
  result.success = result.finalOverlaps == 0;

  TriMesh finalMesh = state.mesh;
  result.chamferBeforePost = chamferDistance(finalMesh, reference, config.post.metricSamplesPerFace);
  result.chamfer = result.chamferBeforePost;
  if (result.success) {
    const auto tp = std::chrono::steady_clock::now();
    const PostResult post = postProcess(reference, state, config.post);
    result.postRuntimeSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - tp).count();
    finalMesh = post.mesh;
    result.chamfer = post.chamferAfter;
    result.postChanged = post.changed;
  }
  result.hausdorff = hausdorffDistance(finalMesh, reference, config.post.metricSamplesPerFace);

  std::vector<int> vmap, fmap;
  const TriMesh compact = finalMesh.compacted(&vmap, &fmap);
  result.tree = remapTree(finalMesh, state.tree, compact, vmap, fmap);
  result.mesh = transformed(compact, norm.center, norm.scale, false);
  // Vertices that never moved keep their exact input coordinates.
  for (int v = 0; v < finalMesh.vertexSlots(); ++v) {
    if (vmap[v] >= 0 && finalMesh.position(v) == reference.position(v)) result.mesh.setPosition(vmap[v], input.position(v));
  }
  result.outputFaces = result.mesh.numFaces();
  result.layout = unfold(result.mesh, result.tree);
  result.runtimeSeconds = elapsed();
  return result;
}

}  // namespace papernet
