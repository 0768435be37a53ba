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

// papernet: unfold meshes into single-patch paper nets.
//
//   papernet unfold <in.obj> -o <dir> [options]
//   papernet batch <dir> -o <summary.csv> [options]
//   papernet decimate <in.obj> --faces N [-o out.obj]

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "papernet/decimate.hpp"
#include "papernet/init.hpp"
#include "papernet/mesh_io.hpp"
#include "papernet/net.hpp"
#include "papernet/pipeline.hpp"
#include "papernet/report.hpp"
#include "papernet/validate.hpp"

namespace {

namespace fs = std::filesystem;
using namespace papernet;

constexpr int kExitSuccess = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitFailure = 2;

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Pipeline options shared by `unfold` and `batch`.
struct PipelineFlags {
  std::vector<std::string> init;
  std::uint64_t seed = 0;
  bool seedSet = false;
  std::string configPath;
  std::string pinPath;
  bool noPostprocess = false;
  bool noVertexRepositioning = false;
  bool simpleCollapse = false;
  int reinits = -1;
  int maxIterations = -1;

  void add(CLI::App* app, bool allowImport) {
    auto* init = app->add_option("--init", this->init,
                                 allowImport ? "initial tree: minper, tabu, random or import <cuts.txt>"
                                             : "initial tree: minper, tabu or random");
    init->expected(1, allowImport ? 2 : 1);
    app->add_option_function<std::uint64_t>(
        "--seed", [this](std::uint64_t s) { seed = s, seedSet = true; }, "random seed");
    app->add_option("--config", configPath, "key = value config file")->check(CLI::ExistingFile);
    if (allowImport) app->add_option("--pin", pinPath, "file of vertex ids to keep fixed")->check(CLI::ExistingFile);
    app->add_flag("--no-postprocess", noPostprocess, "skip the distance-reducing post-process");
    app->add_flag("--no-vertex-repositioning", noVertexRepositioning, "disable vertex moves");
    app->add_flag("--simple-collapse", simpleCollapse, "collapse to edge midpoints only");
    app->add_option("--reinit", reinits, "re-initializations after the iteration budget")->check(CLI::NonNegativeNumber);
    app->add_option("--max-iterations", maxIterations, "outer iteration budget")->check(CLI::NonNegativeNumber);
  }

  PipelineConfig config() const {
    PipelineConfig c;
    if (!configPath.empty()) readConfigFile(c, configPath);
    if (!init.empty()) {
      c.initializer = parseInitKind(init[0]);
      if (c.initializer == InitKind::kImport) {
        if (init.size() != 2) throw std::invalid_argument("--init import needs a cut-edge file");
        c.importedCuts = readCutFile(init[1]);
      } else if (init.size() != 1) {
        throw std::invalid_argument("--init " + init[0] + " takes no file");
      }
    }
    if (c.initializer == InitKind::kImport && c.importedCuts.empty()) {
      throw std::invalid_argument("the import initializer needs a cut-edge file");
    }
    if (seedSet) c.seed = seed;
    if (!pinPath.empty()) {
      for (int v : readVertexList(pinPath)) c.pinned.push_back(v);
    }
    if (noPostprocess) c.post.enabled = false;
    if (noVertexRepositioning) c.geom.enabled = false;
    if (simpleCollapse) c.topo.smartPlacement = false;
    if (reinits >= 0) c.maxReinits = reinits;
    if (maxIterations >= 0) c.maxIterations = maxIterations;
    return c;
  }
};

TriMesh loadValidMesh(const fs::path& path) {
  TriMesh mesh;
  try {
    mesh = loadMesh(path);
  } catch (const MeshError& e) {
    throw InvalidInput(e.what());
  }
  const ValidationReport report = validate(mesh);
  if (!report.acceptable()) throw InvalidInput(path.string() + ": " + report.describe());
  return mesh;
}

void writeText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

struct UnfoldArgs {
  std::string input;
  std::string outDir;
  double mmPerUnit = 10.0;
  PipelineFlags flags;
};

int cmdUnfold(const UnfoldArgs& args) {
  PipelineConfig config;
  TriMesh input;
  try {
    config = args.flags.config();
    input = loadValidMesh(args.input);
    if (config.initializer == InitKind::kImport) treeFromCuts(input, config.importedCuts);
  } catch (const std::exception& e) {
    std::cerr << "papernet: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  PipelineResult result;
  try {
    result = runPipeline(input, config);
  } catch (const MeshError& e) {
    std::cerr << "papernet: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  const fs::path dir(args.outDir);
  const std::string stem = fs::path(args.input).stem().string();
  std::error_code ec;
  fs::create_directories(dir, ec);

  bool success = result.success;
  NetOptions netOptions;
  netOptions.mmPerUnit = args.mmPerUnit;
  if (success) {
    const NetDocument net = buildNet(result.mesh, result.tree, result.layout, netOptions);
    if (!net.overlapFree) {
      std::cerr << "papernet: exported net overlaps\n";
      success = false;
      result.success = false;
    } else {
      saveSvg(dir / (stem + ".svg"), net);
    }
  }
  saveMesh(dir / (stem + ".obj"), result.mesh);
  const RunReport report = makeReport(args.input, result, config);
  writeText(dir / (stem + ".json"), reportJson(report));
  writeText(dir / (stem + ".timing.json"), timingJson(report));

  std::cout << stem << ": " << (success ? "success" : "failure") << ", " << result.inputFaces << " -> "
            << result.outputFaces << " faces, " << result.finalOverlaps << " overlaps\n";
  return success ? kExitSuccess : kExitFailure;
}

struct BatchArgs {
  std::string dir;
  std::string summary;
  unsigned jobs = 0;
  PipelineFlags flags;
};

BatchRow runOne(const fs::path& path, const PipelineConfig& config) {
  BatchRow row;
  row.name = path.filename().string();
  try {
    const TriMesh mesh = loadValidMesh(path);
    row.report = makeReport(row.name, runPipeline(mesh, config), config);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

int cmdBatch(const BatchArgs& args) {
  PipelineConfig config;
  std::vector<fs::path> inputs;
  try {
    config = args.flags.config();
    for (const auto& entry : fs::directory_iterator(args.dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".obj") inputs.push_back(entry.path());
    }
  } catch (const std::exception& e) {
    std::cerr << "papernet: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  std::sort(inputs.begin(), inputs.end());

  std::vector<BatchRow> rows(inputs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < inputs.size(); i = next++) rows[i] = runOne(inputs[i], config);
  };
  const unsigned jobs = std::max(1u, args.jobs ? args.jobs : std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(jobs, inputs.size()); ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  const fs::path summary(args.summary);
  if (summary.has_parent_path()) fs::create_directories(summary.parent_path());
  writeText(summary, batchCsv(rows));
  fs::path timing = summary;
  timing.replace_extension(".timing.csv");
  writeText(timing, batchTimingCsv(rows));

  int successes = 0;
  for (const BatchRow& r : rows) successes += r.error.empty() && r.report.success ? 1 : 0;
  std::cout << successes << "/" << rows.size() << " meshes unfolded\n";
  return kExitSuccess;
}

struct DecimateArgs {
  std::string input;
  int faces = 0;
  std::string output;
};

int cmdDecimate(const DecimateArgs& args) {
  TriMesh out;
  try {
    out = qslimBaseline(loadValidMesh(args.input), args.faces);
  } catch (const std::exception& e) {
    std::cerr << "papernet: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  if (args.output.empty()) {
    writeObj(std::cout, out);
  } else {
    saveMesh(args.output, out);
  }
  return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("Modify meshes minimally so they unfold into one overlap-free paper net.");
  app.require_subcommand(1);

  UnfoldArgs unfoldArgs;
  CLI::App* unfold = app.add_subcommand("unfold", "unfold one mesh; writes OBJ, SVG and JSON report");
  unfold->add_option("input", unfoldArgs.input, "input OBJ")->required();
  unfold->add_option("-o,--output", unfoldArgs.outDir, "output directory")->required();
  unfold->add_option("--mm-per-unit", unfoldArgs.mmPerUnit, "SVG scale")->check(CLI::PositiveNumber);
  unfoldArgs.flags.add(unfold, true);

  BatchArgs batchArgs;
  CLI::App* batch = app.add_subcommand("batch", "unfold every OBJ in a directory; writes a CSV summary");
  batch->add_option("dir", batchArgs.dir, "input directory")->required()->check(CLI::ExistingDirectory);
  batch->add_option("-o,--output", batchArgs.summary, "summary CSV")->required();
  batch->add_option("--jobs", batchArgs.jobs, "worker threads (default: all cores)");
  batchArgs.flags.add(batch, false);

  DecimateArgs decimateArgs;
  CLI::App* decimate = app.add_subcommand("decimate", "quadric-error decimation to a face budget");
  decimate->add_option("input", decimateArgs.input, "input OBJ")->required();
  decimate->add_option("--faces", decimateArgs.faces, "target face count")->required()->check(CLI::PositiveNumber);
  decimate->add_option("-o,--output", decimateArgs.output, "output OBJ (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitInvalidInput;
  }

  try {
    if (*unfold) return cmdUnfold(unfoldArgs);
    if (*batch) return cmdBatch(batchArgs);
    return cmdDecimate(decimateArgs);
  } catch (const std::exception& e) {
    std::cerr << "papernet: " << e.what() << "\n";
    return kExitFailure;
  }
}
