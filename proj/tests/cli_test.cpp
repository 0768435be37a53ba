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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "papernet/init.hpp"
#include "papernet/mesh_io.hpp"
#include "papernet/report.hpp"
#include "papernet/shapes.hpp"
#include "svg_reader.hpp"

namespace {

namespace fs = std::filesystem;
using namespace papernet;

const fs::path kCorpus = fs::path(PAPERNET_DATA_DIR) / "corpus";

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / "papernet_cli_test" / info->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  /// Runs the binary; stderr is kept in `err_`.
  int run(const std::string& args) {
    const fs::path errFile = dir_ / "stderr.txt";
    const std::string cmd = std::string(PAPERNET_CLI) + " " + args + " > " + (dir_ / "stdout.txt").string() +
                            " 2> " + errFile.string();
    const int status = std::system(cmd.c_str());
    err_ = read(errFile);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

  fs::path writeMesh(const std::string& name, const TriMesh& mesh) {
    const fs::path p = dir_ / name;
    saveMesh(p, mesh);
    return p;
  }

  fs::path dir_;
  std::string err_;
};

TriMesh makeOctahedron() {
  return TriMesh({Vec3(1, 0, 0), Vec3(-1, 0, 0), Vec3(0, 1, 0), Vec3(0, -1, 0), Vec3(0, 0, 1), Vec3(0, 0, -1)},
                 {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4}, {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}});
}

TEST_F(Cli, TetrahedronUnfolds) {
  const fs::path in = writeMesh("tet.obj", makeTetrahedron());
  ASSERT_EQ(run("unfold " + in.string() + " -o " + (dir_ / "out").string()), 0) << err_;
  const auto svg = testutil::readSvgNet(read(dir_ / "out" / "tet.svg"));
  EXPECT_EQ(svg.polygons.size(), 4u);
  int cuts = 0, folds = 0;
  for (const auto& l : svg.lines) (l.cls == "cut" ? cuts : folds) += 1;
  EXPECT_EQ(cuts, 6);
  EXPECT_EQ(folds, 3);
  const RunReport r = parseReportJson(read(dir_ / "out" / "tet.json"));
  EXPECT_TRUE(r.success);
  EXPECT_EQ(r.outputFaceCount, 4);
  EXPECT_EQ(loadMesh(dir_ / "out" / "tet.obj").numFaces(), 4);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "tet.timing.json"));
}

TEST_F(Cli, NonManifoldInputIsRejected) {
  // Three triangles on one edge.
  const fs::path in = write("fin.obj",
                            "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nv 0 -1 0\nv 0 0 -1\n"
                            "f 1 2 3\nf 2 1 4\nf 1 2 5\nf 2 1 6\nf 1 3 4\n");
  EXPECT_EQ(run("unfold " + in.string() + " -o " + (dir_ / "out").string()), 1);
  EXPECT_NE(err_.find("manifold=no"), std::string::npos) << err_;
  EXPECT_FALSE(fs::exists(dir_ / "out" / "fin.json"));
}

TEST_F(Cli, UnreadableInputIsRejected) {
  EXPECT_EQ(run("unfold " + (dir_ / "missing.obj").string() + " -o " + (dir_ / "out").string()), 1);
  const fs::path in = write("junk.obj", "v 0 0\n");
  EXPECT_EQ(run("unfold " + in.string() + " -o " + (dir_ / "out").string()), 1);
  EXPECT_FALSE(err_.empty());
}

TEST_F(Cli, BadArgumentsAreRejected) {
  const fs::path in = writeMesh("tet.obj", makeTetrahedron());
  const std::string out = " -o " + (dir_ / "out").string();
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("unfold " + in.string()), 1);
  EXPECT_EQ(run("unfold " + in.string() + out + " --init genetic"), 1);
  EXPECT_EQ(run("unfold " + in.string() + out + " --init import"), 1);
  EXPECT_EQ(run("unfold " + in.string() + out + " --reinit -1"), 1);
  EXPECT_EQ(run("unfold " + in.string() + out + " --config " + write("c.txt", "nonsense = 1\n").string()), 1);
  EXPECT_EQ(run("unfold " + in.string() + out + " --pin " + write("p.txt", "0 x\n").string()), 1);
  EXPECT_EQ(run("unfold " + in.string() + out + " --pin " + write("q.txt", "17\n").string()), 1);
  EXPECT_EQ(run("unfold " + in.string() + out + " --init import " + write("cuts.txt", "0 1\n0 9\n").string()), 1);
  EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, CorpusMeshReportMatchesSchema) {
  ASSERT_EQ(run("unfold " + (kCorpus / "frame.obj").string() + " -o " + (dir_ / "out").string()), 0) << err_;
  const RunReport r = parseReportJson(read(dir_ / "out" / "frame.json"));
  EXPECT_TRUE(r.success);
  EXPECT_EQ(r.inputFaceCount, 500);
  EXPECT_LE(r.outputFaceCount, 500);
  EXPECT_EQ(r.outputFaceCount, loadMesh(dir_ / "out" / "frame.obj").numFaces());
  EXPECT_EQ(r.perIterationOverlapCounts.back(), 0);
  EXPECT_EQ(r.initializer, "tabu");
  EXPECT_EQ(reportJson(r), read(dir_ / "out" / "frame.json"));
}

TEST_F(Cli, OutputsAreByteIdenticalAcrossRuns) {
  const std::string in = (kCorpus / "frame.obj").string();
  ASSERT_EQ(run("unfold " + in + " -o " + (dir_ / "a").string() + " --seed 7"), 0) << err_;
  ASSERT_EQ(run("unfold " + in + " -o " + (dir_ / "b").string() + " --seed 7"), 0) << err_;
  for (const char* f : {"frame.obj", "frame.svg", "frame.json"}) {
    const std::string a = read(dir_ / "a" / f);
    EXPECT_FALSE(a.empty()) << f;
    EXPECT_EQ(a, read(dir_ / "b" / f)) << f;
  }
}

TEST_F(Cli, FailureStillWritesReport) {
  const std::string in = (kCorpus / "blob.obj").string();
  EXPECT_EQ(run("unfold " + in + " -o " + (dir_ / "out").string() + " --init minper --max-iterations 0"), 2);
  const RunReport r = parseReportJson(read(dir_ / "out" / "blob.json"));
  EXPECT_FALSE(r.success);
  EXPECT_GT(r.finalOverlaps, 0);
  EXPECT_FALSE(fs::exists(dir_ / "out" / "blob.svg"));
}

TEST_F(Cli, FlagsReachTheConfig) {
  const TriMesh ico = makeIcosahedron();
  const fs::path in = writeMesh("ico.obj", ico);
  std::string cuts;
  for (int e : minPerimeterTree(ico).cutEdges(ico)) {
    const auto v = ico.edgeVertices(e);
    cuts += std::to_string(v[0]) + " " + std::to_string(v[1]) + "\n";
  }
  const fs::path cutFile = write("cuts.txt", "# cut edges\n" + cuts);
  const fs::path pins = write("pins.txt", "0 3\n5\n");
  const std::string out = (dir_ / "out").string();
  ASSERT_EQ(run("unfold " + in.string() + " -o " + out + " --init import " + cutFile.string() + " --pin " +
                pins.string() + " --no-postprocess --no-vertex-repositioning --simple-collapse --reinit 2"),
            0)
      << err_;
  const RunReport imported = parseReportJson(read(dir_ / "out" / "ico.json"));
  EXPECT_EQ(imported.initializer, "import");

  ASSERT_EQ(run("unfold " + in.string() + " -o " + out), 0) << err_;
  const RunReport plain = parseReportJson(read(dir_ / "out" / "ico.json"));
  EXPECT_NE(plain.configDigest, imported.configDigest);

  const fs::path config = write("c.txt", "initializer = random\nseed = 42\n");
  ASSERT_EQ(run("unfold " + in.string() + " -o " + out + " --config " + config.string()), 0) << err_;
  EXPECT_EQ(parseReportJson(read(dir_ / "out" / "ico.json")).initializer, "random");
}

TEST_F(Cli, ScaleFlagSetsSvgUnits) {
  const fs::path in = writeMesh("tet.obj", makeTetrahedron());
  ASSERT_EQ(run("unfold " + in.string() + " -o " + (dir_ / "out").string() + " --mm-per-unit 3.5"), 0) << err_;
  EXPECT_EQ(testutil::readSvgNet(read(dir_ / "out" / "tet.svg")).mmPerUnit, 3.5);
}

TEST_F(Cli, BatchOfEmptyDirectory) {
  fs::create_directories(dir_ / "empty");
  ASSERT_EQ(run("batch " + (dir_ / "empty").string() + " -o " + (dir_ / "summary.csv").string()), 0) << err_;
  const std::string csv = read(dir_ / "summary.csv");
  EXPECT_EQ(csv.find("mesh,success"), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1);
}

TEST_F(Cli, BatchOfPolyhedra) {
  fs::create_directories(dir_ / "solids");
  saveMesh(dir_ / "solids" / "tetrahedron.obj", makeTetrahedron());
  saveMesh(dir_ / "solids" / "cube.obj", makeBox());
  saveMesh(dir_ / "solids" / "octahedron.obj", makeOctahedron());
  saveMesh(dir_ / "solids" / "icosahedron.obj", makeIcosahedron());
  saveMesh(dir_ / "solids" / "geodesic.obj", makeIcosphere(1));
  write("solids/notes.txt", "not a mesh\n");
  const std::string args = "batch " + (dir_ / "solids").string() + " -o ";
  ASSERT_EQ(run(args + (dir_ / "a.csv").string()), 0) << err_;
  ASSERT_EQ(run(args + (dir_ / "b.csv").string() + " --jobs 3"), 0) << err_;
  const std::string a = read(dir_ / "a.csv");
  EXPECT_EQ(a, read(dir_ / "b.csv"));
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 7);
  EXPECT_NE(a.find("\nALL,1,"), std::string::npos) << a;
  EXPECT_LT(a.find("cube.obj"), a.find("geodesic.obj"));
  EXPECT_TRUE(fs::exists(dir_ / "a.timing.csv"));
}

TEST_F(Cli, BatchRecordsBrokenMeshes) {
  fs::create_directories(dir_ / "mixed");
  saveMesh(dir_ / "mixed" / "good.obj", makeTetrahedron());
  write("mixed/bad.obj", "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n");
  ASSERT_EQ(run("batch " + (dir_ / "mixed").string() + " -o " + (dir_ / "s.csv").string()), 0) << err_;
  const std::string csv = read(dir_ / "s.csv");
  EXPECT_NE(csv.find("bad.obj,0,"), std::string::npos);
  EXPECT_NE(csv.find("closed=no"), std::string::npos);
  EXPECT_NE(csv.find("good.obj,1,"), std::string::npos);
  EXPECT_NE(csv.find("ALL,0.5,"), std::string::npos);
}

TEST_F(Cli, DecimateToBudget) {
  const fs::path in = writeMesh("sphere.obj", makeIcosphere(3));
  ASSERT_EQ(run("decimate " + in.string() + " --faces 200 -o " + (dir_ / "d.obj").string()), 0) << err_;
  EXPECT_EQ(loadMesh(dir_ / "d.obj").numFaces(), 200);
  ASSERT_EQ(run("decimate " + in.string() + " --faces 100"), 0) << err_;
  EXPECT_EQ(loadMesh(dir_ / "stdout.txt").numFaces(), 100);
  EXPECT_EQ(run("decimate " + writeMesh("tet.obj", makeTetrahedron()).string() + " --faces 2"), 1);
  EXPECT_EQ(run("decimate " + in.string()), 1);
}

}  // namespace
