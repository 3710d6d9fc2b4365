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

#ifndef ARENA_SYSID_ANNEAL_H_
#define ARENA_SYSID_ANNEAL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "arena/sysid/plant.h"
#include "arena/sysid/trajectory.h"

namespace arena::sysid {

// One identification target: commands fed to the plant and the recorded
// poses it should reproduce.
struct SysIdTrajectory {
  std::vector<Eigen::VectorXd> commands;
  EePoseTrajectory truth;
};

struct AnnealConfig {
  int steps = 5000;
  // Defaults to the loss at the initial candidate.
  std::optional<double> initial_temperature;
  double cooling = 0.999;
  double sigma_fraction = 0.05;
  int restart_after = 1000;
  uint64_t seed = 0;

  void Validate() const;
};

struct AnnealResult {
  PdGains gains;
  double loss = 0.0;
  // Entry 0 is the initial candidate, entry k the state after proposal k.
  std::vector<double> trace;          // best so far
  std::vector<double> current_trace;  // chain state
  int accepted = 0;
  int failed_candidates = 0;
  int restarts = 0;
  std::vector<std::string> diagnostics;
};

// Mean of TrajectoryLoss over trajectories, summed in input order.
double MeanTrajectoryLoss(const Plant& plant, const PdGains& gains,
                          std::span<const SysIdTrajectory> data);

// Simulated annealing from the bounds midpoint. Gaussian proposals with
// sigma = sigma_fraction of each range, clipped; T_k = T0 * cooling^k;
// restart from the best after `restart_after` proposals without improvement.
// Candidates whose simulation throws are rejected and noted in diagnostics;
// if none succeeds, raises kOptimizationFailed.
AnnealResult AnnealGains(const Plant& plant, std::span<const SysIdTrajectory> data,
                         const GainBounds& bounds, const AnnealConfig& config);

}  // namespace arena::sysid

#endif  // ARENA_SYSID_ANNEAL_H_
