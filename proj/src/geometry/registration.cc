// Copyright 2026 The Policy Arena Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "arena/geometry/registration.h"

#include <cmath>
#include <string>

#include "arena/common/error.h"

namespace arena::geometry {
namespace {

bool DepthAt(const DepthView& view, const Eigen::Vector2d& pixel, double* depth) {
  if (!pixel.allFinite()) return false;
  const long x = std::lround(pixel.x());
  const long y = std::lround(pixel.y());
  if (!view.depth.contains(static_cast<int>(x), static_cast<int>(y))) return false;
  if (!view.depth.valid(static_cast<int>(x), static_cast<int>(y))) return false;
  *depth = view.depth.at(static_cast<int>(x), static_cast<int>(y));
  return true;
}

}  // namespace

RegistrationResult EstimateRigidTransform(std::span<const PointPair> pairs) {
  if (pairs.size() < 3) {
    Fail(ErrorCode::kInsufficientCorrespondences,
         "rigid registration needs at least 3 pairs, got " +
             std::to_string(pairs.size()));
  }
  Eigen::Vector3d sim_mean = Eigen::Vector3d::Zero();
  Eigen::Vector3d orig_mean = Eigen::Vector3d::Zero();
  for (const PointPair& p : pairs) {
    Require(p.sim.allFinite() && p.orig.allFinite(),
            "correspondence coordinates must be finite");
    sim_mean += p.sim;
    orig_mean += p.orig;
  }
  sim_mean /= static_cast<double>(pairs.size());
  orig_mean /= static_cast<double>(pairs.size());

  Eigen::Matrix3d cross = Eigen::Matrix3d::Zero();
  for (const PointPair& p : pairs) {
    cross += (p.sim - sim_mean) * (p.orig - orig_mean).transpose();
  }
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(cross,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix3d& u = svd.matrixU();
  const Eigen::Matrix3d& v = svd.matrixV();
  Eigen::Vector3d signs(1.0, 1.0, 1.0);
  // Singular values are sorted, so a reflection is undone on the axis of the
  // smallest one.
  if ((v * u.transpose()).determinant() < 0.0) signs.z() = -1.0;

  RegistrationResult result;
  result.transform.rotation = v * signs.asDiagonal() * u.transpose();
  result.transform.translation = orig_mean - result.transform.rotation * sim_mean;
  result.rmsd = Rmsd(pairs, result.transform);
  const Eigen::Vector3d sv = svd.singularValues();
  result.degenerate = sv[0] <= 0.0 || sv[1] <= 1e-12 * sv[0];
  return result;
}

double Rmsd(std::span<const PointPair> pairs, const RigidTransform& transform) {
  if (pairs.empty()) return 0.0;
  double total = 0.0;
  for (const PointPair& p : pairs) {
    total += (p.orig - transform.Apply(p.sim)).squaredNorm();
  }
  return std::sqrt(total / static_cast<double>(pairs.size()));
}

LiftResult LiftCorrespondences(std::span<const KeypointPair> keypoints,
                               const DepthView& sim, const DepthView& orig) {
  LiftResult result;
  for (size_t i = 0; i < keypoints.size(); ++i) {
    double sim_depth = 0.0;
    double orig_depth = 0.0;
    if (!DepthAt(sim, keypoints[i].sim, &sim_depth) ||
        !DepthAt(orig, keypoints[i].orig, &orig_depth)) {
      ++result.rejected;
      continue;
    }
    result.correspondences.push_back(
        {Unproject(keypoints[i].sim, sim_depth, sim.camera),
         Unproject(keypoints[i].orig, orig_depth, orig.camera)});
    result.kept.push_back(i);
  }
  if (result.correspondences.size() < 3) {
    Fail(ErrorCode::kInsufficientCorrespondences,
         std::to_string(result.correspondences.size()) +
             " keypoint pairs survived depth lookup, need 3");
  }
  return result;
}

BoundingBox ComputeBoundingBox(std::span<const Eigen::Vector3d> points) {
  Require(!points.empty(), "bounding box of an empty point set");
  BoundingBox box{points[0], points[0]};
  for (const Eigen::Vector3d& p : points) {
    box.min = box.min.cwiseMin(p);
    box.max = box.max.cwiseMax(p);
  }
  return box;
}

double AlignScale(const BoundingBox& mesh, const BoundingBox& cloud) {
  const double mesh_diagonal = mesh.diagonal();
  const double cloud_diagonal = cloud.diagonal();
  if (!(mesh_diagonal > 0.0) || !(cloud_diagonal > 0.0)) {
    Fail(ErrorCode::kDegenerateBox, "bounding box has zero diagonal");
  }
  return cloud_diagonal / mesh_diagonal;
}

}  // namespace arena::geometry
