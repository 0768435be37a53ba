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

#include "papernet/init.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "papernet/predicates.hpp"
#include "papernet/union_find.hpp"

namespace papernet {

namespace {

template <typename T>
void shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[rng() % i]);
}

/// Kruskal over links sorted by `before`.
template <typename Less>
UnfoldTree kruskal(const TriMesh& mesh, Less before) {
  std::vector<DualGraph::Link> links = buildDualGraph(mesh).links;
  std::stable_sort(links.begin(), links.end(), before);
  std::vector<std::uint8_t> hinge(mesh.edgeSlots(), 0);
  UnionFind uf(mesh.faceSlots());
  for (const auto& l : links) {
    if (uf.unite(l.faceA, l.faceB)) hinge[l.edge] = 1;
  }
  return makeTree(mesh, std::move(hinge));
}

/// Tree links on the path between faces a and b.
std::vector<int> cyclePath(const TriMesh& mesh, const TreeTopology& topo, const std::vector<int>& depth, int a,
                           int b) {
  std::vector<int> path;
  while (a != b) {
    if (depth[a] >= depth[b]) {
      const int h = topo.parentHalfedge[a];
      path.push_back(mesh.edgeOf(h));
      a = TriMesh::faceOf(mesh.twin(h));
    } else {
      const int h = topo.parentHalfedge[b];
      path.push_back(mesh.edgeOf(h));
      b = TriMesh::faceOf(mesh.twin(h));
    }
  }
  return path;
}

}  // namespace

double cutLength(const TriMesh& mesh, const UnfoldTree& tree) {
  double sum = 0.0;
  for (int e : tree.cutEdges(mesh)) sum += mesh.edgeLength(e);
  return sum;
}

UnfoldTree minPerimeterTree(const TriMesh& mesh) {
  std::vector<double> length(mesh.edgeSlots(), 0.0);
  for (int e = 0; e < mesh.edgeSlots(); ++e) {
    if (mesh.edgeAlive(e)) length[e] = mesh.edgeLength(e);
  }
  return kruskal(mesh, [&](const DualGraph::Link& x, const DualGraph::Link& y) {
    return length[x.edge] > length[y.edge];
  });
}

UnfoldTree randomSpanningTree(const TriMesh& mesh, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> weight(mesh.edgeSlots(), 0);
  for (auto& w : weight) w = rng();
  return kruskal(mesh, [&](const DualGraph::Link& x, const DualGraph::Link& y) {
    return weight[x.edge] < weight[y.edge];
  });
}

namespace {

/// Uniform grid over the faces of one layout.
class LayoutGrid {
 public:
  explicit LayoutGrid(const Layout& layout) : layout_(layout) {
    std::vector<int> faces;
    double extent = 0.0;
    boxes_.resize(layout.corners.size());
    for (int f = 0; f < static_cast<int>(layout.corners.size()); ++f) {
      if (!layout.isPlaced(f)) continue;
      boxes_[f] = boxOf(layout.corners[f]);
      all_.extend(boxes_[f]);
      extent += 0.5 * (boxes_[f].sizes().x() + boxes_[f].sizes().y());
      faces.push_back(f);
    }
    const int n = std::max<int>(1, static_cast<int>(faces.size()));
    cell_ = extent / n;
    const Vec2 size = all_.isEmpty() ? Vec2::Zero() : Vec2(all_.sizes());
    if (!(cell_ > 0.0)) cell_ = std::max(size.maxCoeff(), 1.0);
    const double maxCells = 4.0 * n + 16.0;
    while ((std::floor(size.x() / cell_) + 1.0) * (std::floor(size.y() / cell_) + 1.0) > maxCells) cell_ *= 1.5;
    nx_ = static_cast<int>(size.x() / cell_) + 1;
    ny_ = static_cast<int>(size.y() / cell_) + 1;
    range_.resize(layout.corners.size());
    start_.assign(static_cast<std::size_t>(nx_) * ny_ + 1, 0);
    for (int f : faces) {
      range_[f] = rangeOf(boxes_[f]);
      forCells(range_[f], [&](std::size_t c) { ++start_[c + 1]; });
    }
    for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
    cells_.resize(start_.back());
    std::vector<int> fill(start_.begin(), start_.end() - 1);
    for (int f : faces) forCells(range_[f], [&](std::size_t c) { cells_[fill[c]++] = f; });
  }

  /// Faces accepted by `keep` whose triangles overlap t, counted once each.
  template <typename Keep>
  int countOverlapping(const std::array<Vec2, 3>& t, Keep keep) const {
    if (all_.isEmpty()) return 0;
    const Box2 box = boxOf(t);
    if (!box.intersects(all_)) return 0;
    const std::array<int, 4> r = rangeOf(box);
    int count = 0;
    for (int y = r[1]; y <= r[3]; ++y) {
      for (int x = r[0]; x <= r[2]; ++x) {
        const std::size_t c = static_cast<std::size_t>(y) * nx_ + x;
        for (int i = start_[c]; i < start_[c + 1]; ++i) {
          const int g = cells_[i];
          if (std::max(r[0], range_[g][0]) != x || std::max(r[1], range_[g][1]) != y) continue;
          if (!keep(g) || !box.intersects(boxes_[g])) continue;
          count += predicates::trianglesOverlap2d(t, layout_.corners[g]) ? 1 : 0;
        }
      }
    }
    return count;
  }

 private:
  static Box2 boxOf(const std::array<Vec2, 3>& t) {
    Box2 b(t[0]);
    b.extend(t[1]);
    b.extend(t[2]);
    return b;
  }
  std::array<int, 4> rangeOf(const Box2& b) const {
    auto cx = [&](double x) { return std::clamp(static_cast<int>((x - all_.min().x()) / cell_), 0, nx_ - 1); };
    auto cy = [&](double y) { return std::clamp(static_cast<int>((y - all_.min().y()) / cell_), 0, ny_ - 1); };
    return {cx(b.min().x()), cy(b.min().y()), cx(b.max().x()), cy(b.max().y())};
  }
  template <typename Fn>
  void forCells(const std::array<int, 4>& r, Fn fn) const {
    for (int y = r[1]; y <= r[3]; ++y) {
      for (int x = r[0]; x <= r[2]; ++x) fn(static_cast<std::size_t>(y) * nx_ + x);
    }
  }

  const Layout& layout_;
  std::vector<Box2> boxes_;
  std::vector<std::array<int, 4>> range_;
  std::vector<int> start_;
  std::vector<int> cells_;
  Box2 all_;
  double cell_ = 1.0;
  int nx_ = 1;
  int ny_ = 1;
};

/// Overlap counts of single link swaps from the current layout. Removing a
/// tree link splits the faces into the root side and a subtree; adding the
/// cut link moves the subtree rigidly, so only pairs across the two sides
/// need a new test.
class SwapEvaluator {
 public:
  SwapEvaluator(const TriMesh& mesh, const UnfoldTree& tree, const Layout& layout, const OverlapSet& overlaps)
      : mesh_(mesh), hinge_(tree.hinge), layout_(layout), overlaps_(overlaps), grid_(layout) {
    moved_.resize(mesh.faceSlots());
    parentOf_.assign(mesh.faceSlots(), -1);
    const TreeTopology& topo = layout.topology;
    const int n = mesh.faceSlots();
    std::vector<std::vector<int>> children(n);
    for (std::size_t i = 1; i < topo.order.size(); ++i) {
      const int f = topo.order[i];
      children[topo.parentFace(mesh, f)].push_back(f);
    }
    enter_.assign(n, -1);
    exit_.assign(n, -1);
    faceAt_.clear();
    if (topo.order.empty()) return;
    std::vector<std::pair<int, std::size_t>> stack = {{topo.order[0], 0}};
    enter_[topo.order[0]] = 0;
    faceAt_.push_back(topo.order[0]);
    while (!stack.empty()) {
      auto& [f, next] = stack.back();
      if (next < children[f].size()) {
        const int c = children[f][next++];
        enter_[c] = static_cast<int>(faceAt_.size());
        faceAt_.push_back(c);
        stack.emplace_back(c, 0);
      } else {
        exit_[f] = static_cast<int>(faceAt_.size());
        stack.pop_back();
      }
    }
  }

  /// Overlap count after hinge `add` replaces hinge `remove`. Pairs inside
  /// the moved subtree are taken from the current layout.
  int evaluate(int add, int remove) const {
    const TreeTopology& topo = layout_.topology;
    const auto rf = mesh_.edgeFaces(remove);
    const int top = topo.parentFace(mesh_, rf[0]) == rf[1] ? rf[0] : rf[1];
    const int lo = enter_[top], hi = exit_[top];
    auto inSubtree = [&](int f) { return enter_[f] >= lo && enter_[f] < hi; };

    // g is the subtree face on the added hinge; the subtree is re-placed
    // from there exactly as a full unfold would place it.
    int hg = mesh_.edgeHalfedge(add);
    if (!inSubtree(TriMesh::faceOf(hg))) hg = mesh_.twin(hg);
    const int g = TriMesh::faceOf(hg);
    moved_[g] = placeAcross(mesh_, layout_.corners[TriMesh::faceOf(mesh_.twin(hg))], hg);
    parentOf_[g] = -1;
    stack_.assign(1, g);
    int created = 0;
    while (!stack_.empty()) {
      const int x = stack_.back();
      stack_.pop_back();
      created += grid_.countOverlapping(moved_[x], [&](int h) { return !inSubtree(h); });
      for (int k = 0; k < 3; ++k) {
        const int h = 3 * x + k;
        const int e = mesh_.edgeOf(h);
        if (e == remove || !hinge_[e]) continue;
        const int t = mesh_.twin(h);
        const int y = TriMesh::faceOf(t);
        if (y == parentOf_[x]) continue;
        parentOf_[y] = x;
        moved_[y] = placeAcross(mesh_, moved_[x], t);
        stack_.push_back(y);
      }
    }

    int cross = 0;
    for (const auto& [a, b] : overlaps_.pairs) cross += inSubtree(a) != inSubtree(b) ? 1 : 0;
    return overlaps_.count() - cross + created;
  }

 private:
  const TriMesh& mesh_;
  const std::vector<std::uint8_t>& hinge_;
  const Layout& layout_;
  const OverlapSet& overlaps_;
  LayoutGrid grid_;
  mutable std::vector<std::array<Vec2, 3>> moved_;
  mutable std::vector<int> parentOf_;
  mutable std::vector<int> stack_;
  std::vector<int> enter_;
  std::vector<int> exit_;
  std::vector<int> faceAt_;
};

}  // namespace

UnfoldTree tabuSearchInit(const TriMesh& mesh, int budget, std::uint64_t seed, const TabuConfig& config) {
  UnfoldTree current = minPerimeterTree(mesh);
  if (budget <= 0) return current;
  std::mt19937_64 rng(seed);
  Layout layout = unfold(mesh, current);
  OverlapSet overlaps = countOverlaps(mesh, layout);
  UnfoldTree best = current;
  int bestCount = overlaps.count();
  std::vector<int> tabuUntil(mesh.edgeSlots(), -1);

  for (int it = 0; it < budget && bestCount > 0; ++it) {
    const TreeTopology& topo = layout.topology;
    std::vector<int> depth(mesh.faceSlots(), 0);
    for (std::size_t i = 1; i < topo.order.size(); ++i) {
      const int f = topo.order[i];
      depth[f] = depth[topo.parentFace(mesh, f)] + 1;
    }
    std::vector<int> hot, cold;
    for (int e : current.cutEdges(mesh)) {
      const auto f = mesh.edgeFaces(e);
      (overlaps.perFaceCount[f[0]] > 0 || overlaps.perFaceCount[f[1]] > 0 ? hot : cold).push_back(e);
    }
    shuffle(hot, rng);
    shuffle(cold, rng);
    hot.insert(hot.end(), cold.begin(), cold.end());
    if (static_cast<int>(hot.size()) > config.neighborhood) hot.resize(config.neighborhood);

    const SwapEvaluator evaluator(mesh, current, layout, overlaps);
    int moveAdd = -1, moveRemove = -1, moveCount = 0;
    for (int add : hot) {
      const auto f = mesh.edgeFaces(add);
      std::vector<int> cycle = cyclePath(mesh, topo, depth, f[0], f[1]);
      shuffle(cycle, rng);
      if (static_cast<int>(cycle.size()) > config.removalsPerLink) cycle.resize(config.removalsPerLink);
      for (int remove : cycle) {
        const int count = evaluator.evaluate(add, remove);
        const bool tabu = tabuUntil[add] > it || tabuUntil[remove] > it;
        if (tabu && count >= bestCount) continue;
        if (moveAdd < 0 || count < moveCount) {
          moveAdd = add;
          moveRemove = remove;
          moveCount = count;
        }
      }
    }
    if (moveAdd < 0) break;
    current.hinge[moveAdd] = 1;
    current.hinge[moveRemove] = 0;
    tabuUntil[moveAdd] = tabuUntil[moveRemove] = it + config.tenure;
    layout = unfold(mesh, current);
    overlaps = countOverlaps(mesh, layout);
    if (overlaps.count() < bestCount) {
      best = current;
      bestCount = overlaps.count();
    }
  }
  return best;
}

std::vector<std::vector<int>> forestPatches(const TriMesh& mesh, const std::vector<std::uint8_t>& hinge) {
  UnionFind uf(mesh.faceSlots());
  for (int e = 0; e < mesh.edgeSlots(); ++e) {
    if (e < static_cast<int>(hinge.size()) && hinge[e] && mesh.edgeAlive(e)) {
      const auto f = mesh.edgeFaces(e);
      if (!uf.unite(f[0], f[1])) throw UnfoldError("hinge edges contain a cycle");
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int f = 0; f < mesh.faceSlots(); ++f) {
    if (mesh.faceAlive(f)) groups[uf.find(f)].push_back(f);
  }
  std::vector<std::vector<int>> patches;
  for (auto& [root, faces] : groups) patches.push_back(std::move(faces));
  std::stable_sort(patches.begin(), patches.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() > b.size() : a.front() < b.front();
  });
  return patches;
}

UnfoldTree mergePatches(const TriMesh& mesh, const std::vector<std::uint8_t>& hinge) {
  const auto patches = forestPatches(mesh, hinge);
  UnfoldTree tree = makeTree(mesh, hinge);
  if (patches.size() <= 1) return tree;
  std::vector<int> patchOf(mesh.faceSlots(), -1);
  for (std::size_t i = 0; i < patches.size(); ++i) {
    for (int f : patches[i]) patchOf[f] = static_cast<int>(i);
  }
  std::vector<char> merged(patches.size(), 0);
  merged[0] = 1;
  const int anchor = patches[0].front();
  for (std::size_t done = 1; done < patches.size(); ++done) {
    // Largest remaining patch that touches the merged region.
    int next = -1;
    std::vector<int> candidates;
    for (std::size_t i = 1; i < patches.size() && next < 0; ++i) {
      if (merged[i]) continue;
      for (int f : patches[i]) {
        for (int k = 0; k < 3; ++k) {
          const int h = 3 * f + k;
          const int t = mesh.twin(h);
          if (t >= 0 && merged[patchOf[TriMesh::faceOf(t)]]) candidates.push_back(mesh.edgeOf(h));
        }
      }
      if (!candidates.empty()) next = static_cast<int>(i);
    }
    if (next < 0) throw UnfoldError("dual graph is disconnected");
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    int bestEdge = -1;
    std::size_t bestCount = 0;
    for (int e : candidates) {
      tree.hinge[e] = 1;
      const std::size_t count = overlappingPairs(unfoldFrom(mesh, tree, anchor)).size();
      tree.hinge[e] = 0;
      if (bestEdge < 0 || count < bestCount) {
        bestEdge = e;
        bestCount = count;
      }
    }
    tree.hinge[bestEdge] = 1;
    merged[next] = 1;
  }
  return tree;
}

UnfoldTree treeFromCuts(const TriMesh& mesh, const std::vector<std::pair<int, int>>& cuts) {
  std::map<std::pair<int, int>, int> edgeOf;
  for (int e = 0; e < mesh.edgeSlots(); ++e) {
    if (!mesh.edgeAlive(e)) continue;
    const auto v = mesh.edgeVertices(e);
    edgeOf[std::minmax(v[0], v[1])] = e;
  }
  std::vector<std::uint8_t> hinge(mesh.edgeSlots(), 0);
  for (int e = 0; e < mesh.edgeSlots(); ++e) hinge[e] = mesh.edgeAlive(e) ? 1 : 0;
  for (const auto& [a, b] : cuts) {
    const auto it = edgeOf.find(std::minmax(a, b));
    if (it == edgeOf.end()) {
      throw UnfoldError("cut " + std::to_string(a) + " " + std::to_string(b) + " is not a mesh edge");
    }
    hinge[it->second] = 0;
  }
  return mergePatches(mesh, hinge);
}

namespace {

std::vector<long long> readIntegers(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UnfoldError("cannot open " + path.string());
  std::vector<long long> values;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    line = line.substr(0, line.find('#'));
    std::istringstream ss(line);
    std::string token;
    while (ss >> token) {
      std::size_t used = 0;
      long long value = 0;
      try {
        value = std::stoll(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size() || value < 0) {
        throw UnfoldError(path.string() + ":" + std::to_string(lineNo) + ": bad vertex id '" + token + "'");
      }
      values.push_back(value);
    }
  }
  return values;
}

}  // namespace

std::vector<std::pair<int, int>> readCutFile(const std::filesystem::path& path) {
  const auto values = readIntegers(path);
  if (values.size() % 2 != 0) throw UnfoldError(path.string() + ": odd number of vertex ids");
  std::vector<std::pair<int, int>> cuts;
  for (std::size_t i = 0; i < values.size(); i += 2) {
    cuts.emplace_back(static_cast<int>(values[i]), static_cast<int>(values[i + 1]));
  }
  return cuts;
}

std::vector<int> readVertexList(const std::filesystem::path& path) {
  const auto values = readIntegers(path);
  return {values.begin(), values.end()};
}

}  // namespace papernet
