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

#include "arena/sysid/plant.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "arena/common/error.h"

namespace arena::sysid {

void GainBounds::Validate() const {
  Require(std::isfinite(kp_min) && std::isfinite(kp_max) && kp_min < kp_max,
          "kp bounds must satisfy min < max");
  Require(std::isfinite(kd_min) && std::isfinite(kd_max) && kd_min < kd_max,
          "kd bounds must satisfy min < max");
}

PdGains GainBounds::Clip(const PdGains& g) const {
  return {std::clamp(g.kp, kp_min, kp_max), std::clamp(g.kd, kd_min, kd_max)};
}

ReferencePlant::ReferencePlant(double dt, double mass) : dt_(dt), mass_(mass) {
  Require(std::isfinite(dt) && dt > 0.0, "dt must be positive");
  Require(std::isfinite(mass) && mass > 0.0, "mass must be positive");
}

EePoseTrajectory ReferencePlant::Simulate(
    const PdGains& gains, std::span<const Eigen::VectorXd> commands) const {
  EePoseTrajectory out;
  if (commands.empty()) return out;
  for (const auto& c : commands) {
    Require(c.size() == 3, "reference plant commands must be 3-vectors");
  }
  Eigen::Vector3d x = commands.front();
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  out.positions.reserve(commands.size());
  out.rotations.assign(commands.size(), Eigen::Matrix3d::Identity());
  out.positions.push_back(x);
  for (size_t k = 1; k < commands.size(); ++k) {
    const Eigen::Vector3d accel =
        (gains.kp * (commands[k] - x) - gains.kd * v) / mass_;
    v += dt_ * accel;
    x += dt_ * v;
    if (!x.allFinite() || x.cwiseAbs().maxCoeff() > kInstabilityLimit) {
      Fail(ErrorCode::kNumericalInstability,
           "reference plant diverged at step " + std::to_string(k) + " with " +
               DescribeGains(gains));
    }
    out.positions.push_back(x);
  }
  return out;
}

std::string DescribeGains(const PdGains& g) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "kp=%.6g kd=%.6g", g.kp, g.kd);
  return buf;
}

}  // namespace arena::sysid
