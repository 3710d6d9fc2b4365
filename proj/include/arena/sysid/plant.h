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

#ifndef ARENA_SYSID_PLANT_H_
#define ARENA_SYSID_PLANT_H_

#include <span>
#include <string>

#include <Eigen/Dense>

#include "arena/sysid/trajectory.h"

namespace arena::sysid {

struct PdGains {
  double kp = 0.0;
  double kd = 0.0;

  friend bool operator==(const PdGains&, const PdGains&) = default;
};

struct GainBounds {
  double kp_min = 2000.0;
  double kp_max = 15000.0;
  double kd_min = 10.0;
  double kd_max = 2000.0;

  // Finite with min < max on both axes.
  void Validate() const;
  bool Contains(const PdGains& g) const {
    return g.kp >= kp_min && g.kp <= kp_max && g.kd >= kd_min && g.kd <= kd_max;
  }
  PdGains Clip(const PdGains& g) const;
  PdGains Midpoint() const {
    return {0.5 * (kp_min + kp_max), 0.5 * (kd_min + kd_max)};
  }
};

// Simulator seam: must be deterministic for fixed inputs. Commands are one
// joint-space target per timestep; the result has one pose per command.
class Plant {
 public:
  virtual ~Plant() = default;
  virtual EePoseTrajectory Simulate(const PdGains& gains,
                                    std::span<const Eigen::VectorXd> commands) const = 0;
};

// Per-axis m * x'' = kp (x_cmd - x) - kd x', semi-implicit Euler. Commands are
// 3-vectors; the state starts at rest on the first command and the pose at
// step k is the state after integrating toward commands[k]. Orientation stays
// at identity. Any |x| > 1e6 raises kNumericalInstability.
class ReferencePlant : public Plant {
 public:
  ReferencePlant(double dt, double mass);

  EePoseTrajectory Simulate(const PdGains& gains,
                            std::span<const Eigen::VectorXd> commands) const override;

  double dt() const { return dt_; }
  double mass() const { return mass_; }

 private:
  double dt_;
  double mass_;
};

inline constexpr double kInstabilityLimit = 1e6;

std::string DescribeGains(const PdGains& g);

}  // namespace arena::sysid

#endif  // ARENA_SYSID_PLANT_H_
