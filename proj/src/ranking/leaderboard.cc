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

#include "arena/ranking/leaderboard.h"

#include <utility>

namespace arena::ranking {

Leaderboard BuildLeaderboard(std::span<const ComparisonRecord> records,
                             double alpha, const FitConfig& config) {
  Leaderboard board;
  const std::vector<ComparisonRecord> decisive = DecisiveOnly(records);
  board.fit = FitBradleyTerry(records, config);
  AbilityEstimate& estimate = board.fit.estimate;
  estimate.centered_covariance =
      SandwichCovariance(estimate.policies, decisive, estimate.betas);
  board.band = ConfidenceIntervals(estimate, alpha);
  board.ranking = GlobalRanking(estimate, board.band);

  for (const ComparisonRecord& record : records) {
    if (!estimate.policies.contains(record.policy_a) ||
        !estimate.policies.contains(record.policy_b)) {
      // Ties against policies without decisive results still count as ties.
      if (!record.decisive()) ++board.tie_records;
      continue;
    }
    PolicyCounts& a = board.counts[record.policy_a];
    PolicyCounts& b = board.counts[record.policy_b];
    if (record.outcome > 0) {
      ++a.wins;
      ++b.losses;
      ++board.decisive_records;
    } else if (record.outcome < 0) {
      ++b.wins;
      ++a.losses;
      ++board.decisive_records;
    } else {
      ++a.ties;
      ++b.ties;
      ++board.tie_records;
    }
  }
  return board;
}

}  // namespace arena::ranking
