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

#include "arena/sysid/trajectory.h"

#include <cmath>

#include "arena/common/error.h"

namespace arena::sysid {

bool IsRotation(const Eigen::Matrix3d& r, double tolerance) {
  if (!r.allFinite()) return false;
  const double drift =
      (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  return drift <= tolerance && r.determinant() > 0.0;
}

void EePoseTrajectory::Validate() const {
  Require(positions.size() == rotations.size(),
          "trajectory positions and rotations differ in length");
  for (size_t t = 0; t < size(); ++t) {
    Require(positions[t].allFinite(), "non-finite position at step " + std::to_string(t));
    Require(IsRotation(rotations[t]), "invalid rotation at step " + std::to_string(t));
  }
}

double RotationDistance(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
  Require(IsRotation(a) && IsRotation(b), "rotation distance needs rotations");
  // Same value as asin(|Ra - Rb|_F / (2 sqrt 2)), but asin loses about half
  // the digits as the angle approaches pi.
  const Eigen::Quaterniond q(a.transpose() * b);
  return std::atan2(q.vec().norm(), std::abs(q.w()));
}

double TrajectoryLoss(const EePoseTrajectory& truth, const EePoseTrajectory& sim) {
  Require(truth.positions.size() == truth.rotations.size() &&
              sim.positions.size() == sim.rotations.size(),
          "trajectory positions and rotations differ in length");
  Require(truth.size() == sim.size(), "trajectories differ in length");
  double loss = 0.0;
  for (size_t t = 0; t < truth.size(); ++t) {
    loss += (truth.positions[t] - sim.positions[t]).norm() +
            RotationDistance(truth.rotations[t], sim.rotations[t]);
  }
  return loss;
}

}  // namespace arena::sysid
