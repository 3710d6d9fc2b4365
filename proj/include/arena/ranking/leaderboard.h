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

#ifndef ARENA_RANKING_LEADERBOARD_H_
#define ARENA_RANKING_LEADERBOARD_H_

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "arena/ranking/bradley_terry.h"

namespace arena::ranking {

struct PolicyCounts {
  int wins = 0;
  int losses = 0;
  int ties = 0;
};

// Fit, sandwich covariance, confidence band and ranking over one snapshot of
// comparison records.
struct Leaderboard {
  FitReport fit;
  ConfidenceBand band;
  std::vector<RankEntry> ranking;
  std::map<PolicyId, PolicyCounts> counts;
  size_t decisive_records = 0;
  size_t tie_records = 0;
};

// Propagates kEmptyDecisiveSet and GraphDisconnectedError from the fit.
Leaderboard BuildLeaderboard(std::span<const ComparisonRecord> records,
                             double alpha = 0.05,
                             const FitConfig& config = {});

}  // namespace arena::ranking

#endif  // ARENA_RANKING_LEADERBOARD_H_
