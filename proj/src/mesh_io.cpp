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

#include "papernet/mesh_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace papernet {
namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw MeshError("line " + std::to_string(line) + ": " + what);
}

double parseDouble(const std::string& token, int line) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) fail(line, "malformed number '" + token + "'");
  return value;
}

int parseIndex(const std::string& token, int vertexCount, int line) {
  const std::string head = token.substr(0, token.find('/'));
  long value = 0;
  const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), value);
  if (ec != std::errc() || ptr != head.data() + head.size() || value == 0) {
    fail(line, "malformed face index '" + token + "'");
  }
  const long index = value > 0 ? value - 1 : vertexCount + value;
  if (index < 0 || index >= vertexCount) fail(line, "face index " + head + " out of range");
  return static_cast<int>(index);
}

void appendDouble(std::string& out, double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

}  // namespace

TriMesh readObj(std::istream& in) {
  std::vector<Vec3> positions;
  std::vector<Face> faces;
  std::set<std::array<int, 3>> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      std::string x, y, z;
      if (!(ls >> x >> y >> z)) fail(line, "vertex needs three coordinates");
      positions.emplace_back(parseDouble(x, line), parseDouble(y, line), parseDouble(z, line));
    } else if (tag == "f") {
      std::vector<std::string> tokens;
      std::string tok;
      while (ls >> tok) tokens.push_back(tok);
      if (tokens.size() != 3) fail(line, "non-triangle face (" + std::to_string(tokens.size()) + " vertices)");
      const int n = static_cast<int>(positions.size());
      const Face f{parseIndex(tokens[0], n, line), parseIndex(tokens[1], n, line),
                   parseIndex(tokens[2], n, line)};
      if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) fail(line, "face repeats a vertex");
      std::array<int, 3> sorted = f;
      std::sort(sorted.begin(), sorted.end());
      if (!seen.insert(sorted).second) fail(line, "duplicate face");
      faces.push_back(f);
    }
  }
  return TriMesh(std::move(positions), faces);
}

TriMesh loadMesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open " + path.string());
  try {
    return readObj(in);
  } catch (const MeshError& e) {
    throw MeshError(path.string() + ": " + e.what());
  }
}

void writeObj(std::ostream& out, const TriMesh& mesh) {
  std::vector<int> vmap(mesh.vertexSlots(), -1);
  std::string text;
  int next = 0;
  for (int v = 0; v < mesh.vertexSlots(); ++v) {
    if (!mesh.vertexAlive(v)) continue;
    vmap[v] = ++next;
    const Vec3& p = mesh.position(v);
    text += "v ";
    appendDouble(text, p.x());
    text += ' ';
    appendDouble(text, p.y());
    text += ' ';
    appendDouble(text, p.z());
    text += '\n';
  }
  for (int f = 0; f < mesh.faceSlots(); ++f) {
    if (!mesh.faceAlive(f)) continue;
    const Face face = mesh.face(f);
    text += "f " + std::to_string(vmap[face[0]]) + ' ' + std::to_string(vmap[face[1]]) + ' ' +
            std::to_string(vmap[face[2]]) + '\n';
  }
  out << text;
}

void saveMesh(const std::filesystem::path& path, const TriMesh& mesh) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MeshError("cannot write " + path.string());
  writeObj(out, mesh);
  if (!out) throw MeshError("failed writing " + path.string());
}

}  // namespace papernet
