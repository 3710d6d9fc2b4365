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

#ifndef ARENA_GEOMETRY_VIEWS_H_
#define ARENA_GEOMETRY_VIEWS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "arena/geometry/camera.h"

namespace arena::geometry {

// A camera placed on a sphere of radius `radius` around `target`.
struct ViewPose {
  Eigen::Vector3d position;
  Eigen::Vector3d target;
  double elevation = 0.0;  // z component before normalization
  double azimuth = 0.0;    // radians
  double radius = 0.0;
  // World-to-camera rotation: x right, y down, z toward the target.
  Eigen::Matrix3d rotation;

  CameraModel camera(const Intrinsics& intrinsics) const;
};

// Look-at rotation (rows right, down, forward) with world +z as up.
Eigen::Matrix3d LookAtRotation(const Eigen::Vector3d& eye,
                               const Eigen::Vector3d& target);

// View i uses azimuth theta_values[i mod M] and elevation
// z_levels[floor(i / M)], direction (cos, sin, z) normalized, for L*M views.
std::vector<ViewPose> OrbitViewPoses(const Eigen::Vector3d& target,
                                     double radius,
                                     std::span<const double> z_levels,
                                     std::span<const double> theta_values);

// Smallest index attaining the largest match count.
size_t SelectOptimalView(std::span<const uint64_t> match_counts);

}  // namespace arena::geometry

#endif  // ARENA_GEOMETRY_VIEWS_H_
