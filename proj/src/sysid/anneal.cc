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

#include "arena/sysid/anneal.h"

#include <cmath>
#include <exception>
#include <limits>

#include "arena/common/error.h"
#include "arena/common/random.h"

namespace arena::sysid {
namespace {

constexpr size_t kMaxDiagnostics = 100;

}  // namespace

void AnnealConfig::Validate() const {
  Require(steps >= 1, "steps must be at least 1");
  Require(cooling > 0.0 && cooling < 1.0, "cooling factor must lie in (0, 1)");
  Require(sigma_fraction > 0.0, "proposal sigma must be positive");
  Require(restart_after >= 1, "restart interval must be positive");
  if (initial_temperature) {
    Require(*initial_temperature >= 0.0, "initial temperature must be non-negative");
  }
}

double MeanTrajectoryLoss(const Plant& plant, const PdGains& gains,
                          std::span<const SysIdTrajectory> data) {
  Require(!data.empty(), "no trajectories to fit");
  double total = 0.0;
  for (const SysIdTrajectory& item : data) {
    total += TrajectoryLoss(item.truth, plant.Simulate(gains, item.commands));
  }
  return total / static_cast<double>(data.size());
}

AnnealResult AnnealGains(const Plant& plant, std::span<const SysIdTrajectory> data,
                         const GainBounds& bounds, const AnnealConfig& config) {
  bounds.Validate();
  config.Validate();
  Require(!data.empty(), "no trajectories to fit");
  for (const SysIdTrajectory& item : data) item.truth.Validate();

  constexpr double kInf = std::numeric_limits<double>::infinity();
  AnnealResult result;
  Rng rng(config.seed);

  auto evaluate = [&](const PdGains& g, int step) -> double {
    try {
      const double loss = MeanTrajectoryLoss(plant, g, data);
      if (std::isfinite(loss)) return loss;
      throw Error(ErrorCode::kNumericalInstability, "non-finite loss");
    } catch (const std::exception& e) {
      ++result.failed_candidates;
      if (result.diagnostics.size() < kMaxDiagnostics) {
        result.diagnostics.push_back("step " + std::to_string(step) + " " +
                                     DescribeGains(g) + ": " + e.what());
      }
      return kInf;
    }
  };

  PdGains current = bounds.Midpoint();
  double current_loss = evaluate(current, 0);
  PdGains best = current;
  double best_loss = current_loss;
  std::optional<double> t0 = config.initial_temperature;
  if (!t0 && std::isfinite(current_loss)) t0 = current_loss;

  result.trace.reserve(config.steps + 1);
  result.current_trace.reserve(config.steps + 1);
  result.trace.push_back(best_loss);
  result.current_trace.push_back(current_loss);

  const double sigma_kp = config.sigma_fraction * (bounds.kp_max - bounds.kp_min);
  const double sigma_kd = config.sigma_fraction * (bounds.kd_max - bounds.kd_min);
  int stale = 0;
  for (int k = 1; k <= config.steps; ++k) {
    const double dkp = sigma_kp * rng.Normal();
    const double dkd = sigma_kd * rng.Normal();
    const PdGains candidate = bounds.Clip({current.kp + dkp, current.kd + dkd});
    const double loss = evaluate(candidate, k);
    const double temperature = t0 ? *t0 * std::pow(config.cooling, k) : 0.0;
    bool accept = false;
    if (std::isfinite(loss)) {
      if (!t0) t0 = loss;  // first finite loss seeds the schedule
      if (loss <= current_loss) {
        accept = true;
      } else if (temperature > 0.0) {
        accept = rng.Uniform() < std::exp(-(loss - current_loss) / temperature);
      }
    }
    if (accept) {
      current = candidate;
      current_loss = loss;
      ++result.accepted;
    }
    if (current_loss < best_loss) {
      best = current;
      best_loss = current_loss;
      stale = 0;
    } else if (++stale >= config.restart_after) {
      current = best;
      current_loss = best_loss;
      stale = 0;
      ++result.restarts;
    }
    result.trace.push_back(best_loss);
    result.current_trace.push_back(current_loss);
  }
  if (!std::isfinite(best_loss)) {
    Fail(ErrorCode::kOptimizationFailed,
         "every candidate failed to simulate (" +
             std::to_string(result.failed_candidates) + " failures)" +
             (result.diagnostics.empty() ? "" : "; first: " + result.diagnostics.front()));
  }
  result.gains = best;
  result.loss = best_loss;
  return result;
}

}  // namespace arena::sysid
