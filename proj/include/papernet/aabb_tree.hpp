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

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include <Eigen/Geometry>

namespace papernet {

/// Static bounding volume hierarchy over a set of boxes, split at the
/// median centroid along the widest axis.
template <int Dim>
class AabbTree {
 public:
  using BoxT = Eigen::AlignedBox<double, Dim>;
  using Point = Eigen::Matrix<double, Dim, 1>;

  AabbTree() = default;
  explicit AabbTree(std::vector<BoxT> boxes) : boxes_(std::move(boxes)) {
    order_.resize(boxes_.size());
    std::iota(order_.begin(), order_.end(), 0);
    if (!boxes_.empty()) build(0, static_cast<int>(order_.size()));
  }

  bool empty() const { return nodes_.empty(); }
  int size() const { return static_cast<int>(boxes_.size()); }
  const BoxT& box(int id) const { return boxes_[id]; }

  /// Calls fn(id) for every stored box intersecting `query` (closed test).
  template <typename Fn>
  void query(const BoxT& query, Fn&& fn) const {
    if (nodes_.empty()) return;
    int stack[128];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
      const Node& node = nodes_[stack[--top]];
      if (!node.box.intersects(query)) continue;
      if (node.left < 0) {
        for (int i = node.begin; i < node.end; ++i) {
          if (boxes_[order_[i]].intersects(query)) fn(order_[i]);
        }
      } else {
        stack[top++] = node.left;
        stack[top++] = node.right;
      }
    }
  }

  /// Branch-and-bound nearest search. `leafDistance(id)` returns the squared
  /// distance from p to element id; returns the best squared distance and
  /// stores the winning id.
  template <typename LeafDistance>
  double nearest(const Point& p, LeafDistance&& leafDistance, int* bestId) const {
    double best = std::numeric_limits<double>::infinity();
    int bestIndex = -1;
    if (!nodes_.empty()) visit(0, p, leafDistance, best, bestIndex);
    if (bestId) *bestId = bestIndex;
    return best;
  }

 private:
  struct Node {
    BoxT box;
    int left = -1;
    int right = -1;
    int begin = 0;
    int end = 0;
  };

  static constexpr int kLeafSize = 4;

  int build(int begin, int end) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    BoxT box;
    BoxT centroids;
    for (int i = begin; i < end; ++i) {
      box.extend(boxes_[order_[i]]);
      centroids.extend(boxes_[order_[i]].center());
    }
    nodes_[id].box = box;
    nodes_[id].begin = begin;
    nodes_[id].end = end;
    if (end - begin <= kLeafSize) return id;
    int axis = 0;
    centroids.sizes().maxCoeff(&axis);
    const int mid = (begin + end) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](int a, int b) {
                       const double ca = boxes_[a].center()[axis];
                       const double cb = boxes_[b].center()[axis];
                       return ca < cb || (ca == cb && a < b);
                     });
    const int left = build(begin, mid);
    const int right = build(mid, end);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  template <typename LeafDistance>
  void visit(int id, const Point& p, LeafDistance& leafDistance, double& best, int& bestIndex) const {
    const Node& node = nodes_[id];
    if (node.left < 0) {
      for (int i = node.begin; i < node.end; ++i) {
        const int e = order_[i];
        if (boxes_[e].squaredExteriorDistance(p) >= best) continue;
        const double d = leafDistance(e);
        if (d < best || (d == best && e < bestIndex)) {
          best = d;
          bestIndex = e;
        }
      }
      return;
    }
    const double dl = nodes_[node.left].box.squaredExteriorDistance(p);
    const double dr = nodes_[node.right].box.squaredExteriorDistance(p);
    const int first = dl <= dr ? node.left : node.right;
    const int second = dl <= dr ? node.right : node.left;
    const double d1 = std::min(dl, dr);
    const double d2 = std::max(dl, dr);
    if (d1 <= best) visit(first, p, leafDistance, best, bestIndex);
    if (d2 <= best) visit(second, p, leafDistance, best, bestIndex);
  }

  std::vector<BoxT> boxes_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
};

}  // namespace papernet
