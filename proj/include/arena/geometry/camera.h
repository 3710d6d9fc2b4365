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

#ifndef ARENA_GEOMETRY_CAMERA_H_
#define ARENA_GEOMETRY_CAMERA_H_

// Pinhole camera with the extrinsic convention
//
//   P_world = R^T * (depth * K^-1 * [u, v, 1]^T) - t
//
// so a world point maps to camera coordinates as R * (P_world + t) and the
// camera center sits at -t.

#include <Eigen/Dense>
#include <json.hpp>

namespace arena::geometry {

struct Intrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;

  Eigen::Matrix3d matrix() const;
  friend bool operator==(const Intrinsics&, const Intrinsics&) = default;
};

struct CameraModel {
  Intrinsics intrinsics;
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  // Throws kInvalidArgument unless fx, fy > 0 and rotation is a proper
  // rotation within `tolerance`.
  void Validate(double tolerance = 1e-9) const;

  Eigen::Vector3d center() const { return -translation; }

  friend bool operator==(const CameraModel& a, const CameraModel& b) {
    return a.intrinsics == b.intrinsics && a.rotation == b.rotation &&
           a.translation == b.translation;
  }
};

bool IsRotation(const Eigen::Matrix3d& m, double tolerance);

struct PixelDepth {
  Eigen::Vector2d pixel;
  double depth = 0.0;
};

// Throws kInvalidArgument for non-positive or non-finite depth.
Eigen::Vector3d Unproject(const Eigen::Vector2d& pixel, double depth,
                          const CameraModel& camera);

// Inverse of Unproject. Throws kInvalidArgument for points at or behind the
// image plane.
PixelDepth Project(const Eigen::Vector3d& world, const CameraModel& camera);

// {fx, fy, cx, cy, R (row-major 9), t (3)}
nlohmann::json CameraToJson(const CameraModel& camera);
CameraModel CameraFromJson(const nlohmann::json& j);

}  // namespace arena::geometry

#endif  // ARENA_GEOMETRY_CAMERA_H_
