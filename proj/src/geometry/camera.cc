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

#include "arena/geometry/camera.h"

#include <cmath>
#include <string>
#include <vector>

#include "arena/common/error.h"

namespace arena::geometry {

Eigen::Matrix3d Intrinsics::matrix() const {
  Eigen::Matrix3d k;
  k << fx, 0.0, cx, 0.0, fy, cy, 0.0, 0.0, 1.0;
  return k;
}

bool IsRotation(const Eigen::Matrix3d& m, double tolerance) {
  if (!m.allFinite()) return false;
  const double orthogonality =
      (m.transpose() * m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  return orthogonality <= tolerance && std::abs(m.determinant() - 1.0) <= tolerance;
}

void CameraModel::Validate(double tolerance) const {
  Require(intrinsics.fx > 0.0 && intrinsics.fy > 0.0,
          "focal lengths must be positive");
  Require(std::isfinite(intrinsics.cx) && std::isfinite(intrinsics.cy),
          "principal point must be finite");
  Require(IsRotation(rotation, tolerance),
          "camera rotation is not orthonormal with determinant +1");
  Require(translation.allFinite(), "camera translation must be finite");
}

Eigen::Vector3d Unproject(const Eigen::Vector2d& pixel, double depth,
                          const CameraModel& camera) {
  Require(std::isfinite(depth) && depth > 0.0, "depth must be positive");
  Require(pixel.allFinite(), "pixel coordinates must be finite");
  const Intrinsics& k = camera.intrinsics;
  // K^-1 [u, v, 1] written out for the upper-triangular pinhole K.
  const Eigen::Vector3d ray((pixel.x() - k.cx) / k.fx, (pixel.y() - k.cy) / k.fy,
                            1.0);
  return camera.rotation.transpose() * (depth * ray) - camera.translation;
}

PixelDepth Project(const Eigen::Vector3d& world, const CameraModel& camera) {
  const Eigen::Vector3d p = camera.rotation * (world + camera.translation);
  Require(p.z() > 0.0, "point lies behind the camera");
  const Intrinsics& k = camera.intrinsics;
  PixelDepth out;
  out.pixel = {k.fx * p.x() / p.z() + k.cx, k.fy * p.y() / p.z() + k.cy};
  out.depth = p.z();
  return out;
}

nlohmann::json CameraToJson(const CameraModel& camera) {
  std::vector<double> r;
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) r.push_back(camera.rotation(row, col));
  }
  const Eigen::Vector3d& t = camera.translation;
  return {{"fx", camera.intrinsics.fx}, {"fy", camera.intrinsics.fy},
          {"cx", camera.intrinsics.cx}, {"cy", camera.intrinsics.cy},
          {"R", r},                     {"t", {t.x(), t.y(), t.z()}}};
}

CameraModel CameraFromJson(const nlohmann::json& j) {
  CameraModel camera;
  try {
    camera.intrinsics.fx = j.at("fx").get<double>();
    camera.intrinsics.fy = j.at("fy").get<double>();
    camera.intrinsics.cx = j.at("cx").get<double>();
    camera.intrinsics.cy = j.at("cy").get<double>();
    const auto r = j.at("R").get<std::vector<double>>();
    const auto t = j.at("t").get<std::vector<double>>();
    if (r.size() != 9 || t.size() != 3) {
      Fail(ErrorCode::kParseError, "camera R needs 9 entries and t needs 3");
    }
    for (int i = 0; i < 9; ++i) camera.rotation(i / 3, i % 3) = r[i];
    camera.translation = {t[0], t[1], t[2]};
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParseError, std::string("bad camera model: ") + e.what());
  }
  camera.Validate();
  return camera;
}

}  // namespace arena::geometry
