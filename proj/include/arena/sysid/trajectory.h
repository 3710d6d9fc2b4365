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

#ifndef ARENA_SYSID_TRAJECTORY_H_
#define ARENA_SYSID_TRAJECTORY_H_

#include <vector>

#include <Eigen/Dense>

namespace arena::sysid {

// End-effector poses over time.
struct EePoseTrajectory {
  std::vector<Eigen::Vector3d> positions;
  std::vector<Eigen::Matrix3d> rotations;

  size_t size() const { return positions.size(); }
  // Throws kInvalidArgument on length mismatch or a non-rotation.
  void Validate() const;
};

// Orthonormal within `tolerance` (max abs entry of R^T R - I) with det > 0.
bool IsRotation(const Eigen::Matrix3d& r, double tolerance = 1e-6);

// asin(|Ra - Rb|_F / (2 sqrt 2)): half the geodesic angle, in [0, pi/2].
double RotationDistance(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b);

// Sum over steps of position error norm plus RotationDistance.
double TrajectoryLoss(const EePoseTrajectory& truth, const EePoseTrajectory& sim);

}  // namespace arena::sysid

#endif  // ARENA_SYSID_TRAJECTORY_H_
