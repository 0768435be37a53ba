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

#include "papernet/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "papernet/geom_repair.hpp"
#include "papernet/strain.hpp"
#include "papernet/validate.hpp"

namespace papernet {

DecoupledState makeDecoupledState(const UnfoldState& state) {
  DecoupledState d;
  d.mesh = state.mesh;
  d.tree = state.tree;
  d.pinned = state.pinned;
  d.pinned.resize(d.mesh.vertexSlots(), 0);
  for (const auto& img : state.layout.images) d.u.push_back(img.point);
  for (int f = 0; f < d.mesh.faceSlots(); ++f) {
    if (!d.mesh.faceAlive(f) || !state.layout.isPlaced(f)) continue;
    d.faces.push_back(f);
    d.images.push_back({state.layout.cornerImage[3 * f], state.layout.cornerImage[3 * f + 1],
                        state.layout.cornerImage[3 * f + 2]});
  }
  return d;
}

// --- distance ---------------------------------------------------------------

DistanceLinearization linearizeDistance(const TriMesh& mesh, const TriMesh& reference,
                                        const SurfaceLocator& referenceLocator) {
  DistanceLinearization lin;
  lin.projections.assign(mesh.vertexSlots(), Vec3::Zero());
  for (int v = 0; v < mesh.vertexSlots(); ++v) {
    if (mesh.vertexAlive(v)) lin.projections[v] = referenceLocator.closest(mesh.position(v)).point;
  }
  const SurfaceLocator current(mesh);
  for (int w = 0; w < reference.vertexSlots(); ++w) {
    if (!reference.vertexAlive(w)) continue;
    const SurfacePoint sp = current.closest(reference.position(w));
    lin.samples.push_back({reference.position(w), sp.face, sp.bary});
  }
  return lin;
}

double energyDistance(const TriMesh& mesh, const std::vector<Vec3>& v, const DistanceLinearization& lin,
                      std::vector<Vec3>* gradient) {
  if (gradient) gradient->assign(v.size(), Vec3::Zero());
  double e = 0.0;
  for (int i = 0; i < mesh.vertexSlots(); ++i) {
    if (!mesh.vertexAlive(i)) continue;
    const Vec3 d = v[i] - lin.projections[i];
    e += 0.5 * d.squaredNorm();
    if (gradient) (*gradient)[i] += d;
  }
  for (const auto& s : lin.samples) {
    const Face f = mesh.face(s.face);
    const Vec3 r = s.bary[0] * v[f[0]] + s.bary[1] * v[f[1]] + s.bary[2] * v[f[2]] - s.point;
    e += r.squaredNorm();
    if (gradient) {
      for (int k = 0; k < 3; ++k) (*gradient)[f[k]] += 2.0 * s.bary[k] * r;
    }
  }
  return e;
}

// --- overlap ----------------------------------------------------------------

namespace {

Layout planarLayout(const DecoupledState& state, const std::vector<Vec2>& u) {
  Layout layout;
  layout.corners.assign(state.mesh.faceSlots(), {Vec2::Zero(), Vec2::Zero(), Vec2::Zero()});
  layout.placed.assign(state.mesh.faceSlots(), 0);
  for (std::size_t i = 0; i < state.faces.size(); ++i) {
    const int f = state.faces[i];
    layout.placed[f] = 1;
    for (int k = 0; k < 3; ++k) layout.corners[f][k] = u[state.images[i][k]];
  }
  return layout;
}

}  // namespace

std::vector<std::pair<int, Vec2>> overlapTargets(const DecoupledState& state) {
  const Layout layout = planarLayout(state, state.u);
  std::vector<int> index(state.mesh.faceSlots(), -1);
  for (std::size_t i = 0; i < state.faces.size(); ++i) index[state.faces[i]] = static_cast<int>(i);
  std::vector<std::pair<int, Vec2>> targets;
  for (const auto& [a, b] : overlappingPairs(layout)) {
    double mean = 0.0;
    for (int f : {a, b}) {
      for (int k = 0; k < 3; ++k) mean += (layout.corners[f][(k + 1) % 3] - layout.corners[f][k]).norm();
    }
    mean /= 6.0;
    const auto t = separationTargets(layout.corners[a], layout.corners[b], kFlowMargin * mean);
    for (int side = 0; side < 2; ++side) {
      const int f = side == 0 ? a : b;
      for (int k = 0; k < 3; ++k) {
        if (t[side][k] != layout.corners[f][k]) targets.emplace_back(state.images[index[f]][k], t[side][k]);
      }
    }
  }
  return targets;
}

PlanarReference planarReference(const DecoupledState& state) {
  PlanarReference ref;
  for (std::size_t i = 0; i < state.faces.size(); ++i) {
    const auto t = state.layoutTriangle(i);
    const Matrix2<double> dm = referenceFrame<double>(t[0], t[1], t[2]);
    ref.dmInverse.push_back(dm.inverse());
    ref.area.push_back(0.5 * std::abs(dm.determinant()));
  }
  return ref;
}

double energyOverlap(const DecoupledState& state, const std::vector<Vec2>& u,
                     const std::vector<std::pair<int, Vec2>>& targets, const PlanarReference& reference,
                     std::vector<Vec2>* gradient) {
  if (gradient) gradient->assign(u.size(), Vec2::Zero());
  double e = 0.0;
  for (const auto& [i, target] : targets) {
    const Vec2 d = u[i] - target;
    e += 0.5 * d.squaredNorm();
    if (gradient) (*gradient)[i] += d;
  }
  for (std::size_t i = 0; i < state.faces.size(); ++i) {
    const auto& im = state.images[i];
    const auto term = strainEnergy<double, 2>(reference.area[i], reference.dmInverse[i], u[im[0]], u[im[1]], u[im[2]]);
    e += term.energy;
    if (gradient) {
      for (int k = 0; k < 3; ++k) (*gradient)[im[k]] += term.gradient.col(k);
    }
  }
  return e;
}

// --- coupling ---------------------------------------------------------------

double energyCoupling(const DecoupledState& state, const std::vector<Vec3>& v, const std::vector<Vec2>& u,
                      std::vector<Vec3>* gradientV, std::vector<Vec2>* gradientU) {
  if (gradientV) gradientV->assign(v.size(), Vec3::Zero());
  if (gradientU) gradientU->assign(u.size(), Vec2::Zero());
  double e = 0.0;
  for (std::size_t i = 0; i < state.faces.size(); ++i) {
    const auto& im = state.images[i];
    const Face f = state.mesh.face(state.faces[i]);
    const auto term = couplingEnergy<double>({u[im[0]], u[im[1]], u[im[2]]}, {v[f[0]], v[f[1]], v[f[2]]});
    e += term.energy;
    for (int k = 0; k < 3; ++k) {
      if (gradientV) (*gradientV)[f[k]] += term.gradientSpatial.col(k);
      if (gradientU) (*gradientU)[im[k]] += term.gradientPlanar.col(k);
    }
  }
  return e;
}

// --- driver -----------------------------------------------------------------

double isometryError(const TriMesh& mesh, const Layout& layout) {
  double worst = 0.0;
  for (int f = 0; f < mesh.faceSlots(); ++f) {
    if (!mesh.faceAlive(f)) continue;
    if (!layout.isPlaced(f)) return std::numeric_limits<double>::infinity();
    const auto p = mesh.facePositions(f);
    const auto& c = layout.corners[f];
    for (int k = 0; k < 3; ++k) {
      const double l3 = (p[(k + 1) % 3] - p[k]).norm();
      const double l2 = (c[(k + 1) % 3] - c[k]).norm();
      worst = std::max(worst, std::abs(l2 - l3) / l3);
    }
  }
  return worst;
}

namespace {

using Objective = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd*)>;

/// Fixed-step descent; the step halves whenever it would raise the energy.
/// Entries where `mask` is zero stay fixed.
void descend(Eigen::VectorXd& x, const Eigen::VectorXd& mask, double step, const Objective& fn) {
  Eigen::VectorXd g;
  const double e = fn(x, &g);
  g = g.cwiseProduct(mask);
  if (g.squaredNorm() == 0.0) return;
  for (int halving = 0; halving < 40; ++halving, step *= 0.5) {
    const Eigen::VectorXd trial = x - step * g;
    if (fn(trial, nullptr) <= e) {
      x = trial;
      return;
    }
  }
}

Eigen::VectorXd pack(const std::vector<Vec3>& v, const std::vector<Vec2>& u) {
  Eigen::VectorXd x(3 * v.size() + 2 * u.size());
  for (std::size_t i = 0; i < v.size(); ++i) x.segment<3>(3 * i) = v[i];
  for (std::size_t i = 0; i < u.size(); ++i) x.segment<2>(3 * v.size() + 2 * i) = u[i];
  return x;
}

void unpack(const Eigen::VectorXd& x, std::vector<Vec3>& v, std::vector<Vec2>& u) {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = x.segment<3>(3 * i);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = x.segment<2>(3 * v.size() + 2 * i);
}

class Optimizer {
 public:
  Optimizer(const TriMesh& reference, const UnfoldState& input, const PostConfig& config)
      : reference_(reference),
        locator_(reference),
        config_(config),
        state_(makeDecoupledState(input)),
        v_(state_.mesh.positions()) {
    nv_ = v_.size();
    nu_ = state_.u.size();
    maskV_ = Eigen::VectorXd::Zero(3 * nv_ + 2 * nu_);
    maskU_ = maskV_;
    for (std::size_t i = 0; i < nv_; ++i) {
      if (state_.mesh.vertexAlive(static_cast<int>(i)) && !state_.pinned[i]) maskV_.segment<3>(3 * i).setOnes();
    }
    maskU_.tail(2 * nu_).setOnes();
  }

  void distancePhase(int steps) {
    for (int s = 0; s < steps; ++s) {
      syncMesh();
      const DistanceLinearization lin = linearizeDistance(state_.mesh, reference_, locator_);
      runStep(maskV_, [&](const Eigen::VectorXd& x, Eigen::VectorXd* g) {
        std::vector<Vec3> v(nv_);
        std::vector<Vec2> u(nu_);
        unpack(x, v, u);
        std::vector<Vec3> gv;
        const double e = energyDistance(state_.mesh, v, lin, g ? &gv : nullptr);
        if (g) *g = pack(gv, std::vector<Vec2>(nu_, Vec2::Zero()));
        return e;
      });
    }
  }

  void overlapPhase(int steps) {
    const PlanarReference ref = planarReference(state_);
    for (int s = 0; s < steps; ++s) {
      const auto targets = overlapTargets(state_);
      runStep(maskU_, [&](const Eigen::VectorXd& x, Eigen::VectorXd* g) {
        std::vector<Vec3> v(nv_);
        std::vector<Vec2> u(nu_);
        unpack(x, v, u);
        std::vector<Vec2> gu;
        const double e = energyOverlap(state_, u, targets, ref, g ? &gu : nullptr);
        if (g) *g = pack(std::vector<Vec3>(nv_, Vec3::Zero()), gu);
        return e;
      });
    }
  }

  void couplingPhase(int steps) {
    const Eigen::VectorXd mask = maskV_ + maskU_;
    for (int s = 0; s < steps; ++s) {
      runStep(mask, [&](const Eigen::VectorXd& x, Eigen::VectorXd* g) {
        std::vector<Vec3> v(nv_);
        std::vector<Vec2> u(nu_);
        unpack(x, v, u);
        std::vector<Vec3> gv;
        std::vector<Vec2> gu;
        double e = 0.0;
        try {
          e = energyCoupling(state_, v, u, g ? &gv : nullptr, g ? &gu : nullptr);
        } catch (const UnfoldError&) {
          return std::numeric_limits<double>::infinity();
        }
        if (g) *g = pack(gv, gu);
        return e;
      });
    }
  }

  /// Current mesh positions as a standalone mesh.
  TriMesh currentMesh() {
    syncMesh();
    return state_.mesh;
  }

 private:
  void syncMesh() {
    for (std::size_t i = 0; i < nv_; ++i) state_.mesh.setPosition(static_cast<int>(i), v_[i]);
  }

  void runStep(const Eigen::VectorXd& mask, const Objective& fn) {
    Eigen::VectorXd x = pack(v_, state_.u);
    descend(x, mask, config_.step, fn);
    unpack(x, v_, state_.u);
  }

  const TriMesh& reference_;
  SurfaceLocator locator_;
  PostConfig config_;
  DecoupledState state_;
  std::vector<Vec3> v_;
  std::size_t nv_ = 0;
  std::size_t nu_ = 0;
  Eigen::VectorXd maskV_;
  Eigen::VectorXd maskU_;
};

}  // namespace

PostResult postProcess(const TriMesh& reference, const UnfoldState& state, const PostConfig& config) {
  PostResult result;
  result.mesh = state.mesh;
  result.layout = state.layout;
  result.chamferBefore = chamferDistance(state.mesh, reference, config.metricSamplesPerFace);
  result.chamferAfter = result.chamferBefore;
  if (!config.enabled || state.overlapCount() != 0 || result.chamferBefore == 0.0) return result;

  // Gains below this are sampling noise.
  const double minGain = 1e-9 * reference.bounds().diagonal().norm();
  std::vector<Vec3> normals(state.mesh.faceSlots(), Vec3::Zero());
  for (int f = 0; f < state.mesh.faceSlots(); ++f) {
    if (state.mesh.faceAlive(f)) normals[f] = state.mesh.faceNormal(f);
  }
  auto consider = [&](const TriMesh& candidate) {
    ++result.checkpoints;
    for (int f = 0; f < candidate.faceSlots(); ++f) {
      if (!candidate.faceAlive(f)) continue;
      const auto p = candidate.facePositions(f);
      if ((p[1] - p[0]).cross(p[2] - p[0]).dot(normals[f]) <= 0.0) return;
    }
    Layout layout;
    try {
      layout = unfold(candidate, state.tree);
    } catch (const UnfoldError&) {
      return;
    }
    if (!overlappingPairs(layout).empty()) return;
    if (!(isometryError(candidate, layout) <= config.isometryTolerance)) return;
    if (!validate(candidate).acceptable()) return;
    ++result.validCheckpoints;
    const double chamfer = chamferDistance(candidate, reference, config.metricSamplesPerFace);
    if (chamfer < result.chamferAfter - minGain) {
      result.chamferAfter = chamfer;
      result.mesh = candidate;
      result.layout = std::move(layout);
      result.changed = true;
    }
  };

  Optimizer opt(reference, state, config);
  for (int s = 0; s < config.distanceSteps; ++s) {
    opt.distancePhase(1);
    consider(opt.currentMesh());
  }
  for (int r = 0; r < config.rounds; ++r) {
    opt.overlapPhase(config.overlapSteps);
    consider(opt.currentMesh());
    opt.couplingPhase(config.couplingSteps);
    consider(opt.currentMesh());
  }
  return result;
}

}  // namespace papernet
