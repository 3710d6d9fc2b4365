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

#ifndef ARENA_GEOMETRY_REGISTRATION_H_
#define ARENA_GEOMETRY_REGISTRATION_H_

// Rigid alignment of paired 3D points and the helpers that feed it: lifting
// 2D keypoint matches to 3D through depth, and bounding-box scale alignment.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "arena/geometry/camera.h"
#include "arena/geometry/depth.h"

namespace arena::geometry {

struct PointPair {
  Eigen::Vector3d sim;
  Eigen::Vector3d orig;
};

using Correspondence3D = std::vector<PointPair>;

// orig ~= rotation * sim + translation
struct RigidTransform {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  Eigen::Vector3d Apply(const Eigen::Vector3d& p) const {
    return rotation * p + translation;
  }
};

struct RegistrationResult {
  RigidTransform transform;
  double rmsd = 0.0;
  // Set when the points are collinear or coincident; the rotation about the
  // degenerate axis is then arbitrary.
  bool degenerate = false;
};

// Least-squares rigid fit via SVD of the cross-covariance, with the reflection
// case corrected so det(R) = +1. Throws kInsufficientCorrespondences for fewer
// than three pairs.
RegistrationResult EstimateRigidTransform(std::span<const PointPair> pairs);

double Rmsd(std::span<const PointPair> pairs, const RigidTransform& transform);

struct KeypointPair {
  Eigen::Vector2d sim;   // pixel in the rendered view
  Eigen::Vector2d orig;  // pixel in the original image
};

struct DepthView {
  CameraModel camera;
  DepthMap depth;
};

struct LiftResult {
  Correspondence3D correspondences;
  std::vector<size_t> kept;  // indices into the keypoint list
  size_t rejected = 0;
};

// Depth is sampled at the nearest pixel. Pairs outside either image or on
// invalid depth are dropped; fewer than three survivors throws
// kInsufficientCorrespondences.
LiftResult LiftCorrespondences(std::span<const KeypointPair> keypoints,
                               const DepthView& sim, const DepthView& orig);

struct BoundingBox {
  Eigen::Vector3d min;
  Eigen::Vector3d max;

  double diagonal() const { return (max - min).norm(); }
};

BoundingBox ComputeBoundingBox(std::span<const Eigen::Vector3d> points);

// Uniform scale taking the mesh box diagonal to the cloud box diagonal.
// Throws kDegenerateBox when either diagonal is zero.
double AlignScale(const BoundingBox& mesh, const BoundingBox& cloud);

}  // namespace arena::geometry

#endif  // ARENA_GEOMETRY_REGISTRATION_H_
