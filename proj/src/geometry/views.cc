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

#include "arena/geometry/views.h"

#include <cmath>

#include "arena/common/error.h"

namespace arena::geometry {

CameraModel ViewPose::camera(const Intrinsics& intrinsics) const {
  CameraModel model;
  model.intrinsics = intrinsics;
  model.rotation = rotation;
  model.translation = -position;
  return model;
}

Eigen::Matrix3d LookAtRotation(const Eigen::Vector3d& eye,
                               const Eigen::Vector3d& target) {
  const Eigen::Vector3d forward = (target - eye).normalized();
  Eigen::Vector3d up = Eigen::Vector3d::UnitZ();
  if (forward.cross(up).norm() < 1e-9) up = Eigen::Vector3d::UnitY();
  const Eigen::Vector3d right = forward.cross(up).normalized();
  const Eigen::Vector3d down = forward.cross(right);
  Eigen::Matrix3d rotation;
  rotation.row(0) = right;
  rotation.row(1) = down;
  rotation.row(2) = forward;
  return rotation;
}

std::vector<ViewPose> OrbitViewPoses(const Eigen::Vector3d& target,
                                     double radius,
                                     std::span<const double> z_levels,
                                     std::span<const double> theta_values) {
  Require(!z_levels.empty() && !theta_values.empty(),
          "elevation and azimuth lists must be non-empty");
  Require(std::isfinite(radius) && radius > 0.0, "radius must be positive");
  const size_t per_ring = theta_values.size();
  const size_t count = z_levels.size() * per_ring;
  std::vector<ViewPose> views;
  views.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    const double theta = theta_values[i % per_ring];
    const double z = z_levels[i / per_ring];
    const Eigen::Vector3d raw(std::cos(theta), std::sin(theta), z);
    const Eigen::Vector3d direction = raw / raw.norm();
    ViewPose view;
    view.position = target + radius * direction;
    view.target = target;
    view.elevation = z;
    view.azimuth = theta;
    view.radius = radius;
    view.rotation = LookAtRotation(view.position, target);
    views.push_back(view);
  }
  return views;
}

size_t SelectOptimalView(std::span<const uint64_t> match_counts) {
  Require(!match_counts.empty(), "no views to choose from");
  size_t best = 0;
  for (size_t i = 1; i < match_counts.size(); ++i) {
    if (match_counts[i] > match_counts[best]) best = i;
  }
  return best;
}

}  // namespace arena::geometry
