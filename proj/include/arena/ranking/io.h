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

#ifndef ARENA_RANKING_IO_H_
#define ARENA_RANKING_IO_H_

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arena/ranking/bradley_terry.h"
#include "arena/ranking/leaderboard.h"

namespace arena::ranking {

void to_json(nlohmann::json& j, const ComparisonRecord& record);
void from_json(const nlohmann::json& j, ComparisonRecord& record);

// One JSON object per line; blank lines are skipped. Malformed lines raise
// kParseError with the 1-based line number in the message.
std::vector<ComparisonRecord> ReadComparisonLog(std::istream& in);
std::vector<ComparisonRecord> ReadComparisonLogFile(const std::string& path);

std::string FitFlagName(FitFlag flag);

// {policies, betas, thetas, covariance (row-major), flags, iterations,
//  final_gradient_norm}
nlohmann::json FitReportToJson(const FitReport& report);

nlohmann::json LeaderboardToJson(const Leaderboard& board);

// Fixed-width text rendering of a leaderboard.
std::string FormatLeaderboardTable(const Leaderboard& board);

}  // namespace arena::ranking

#endif  // ARENA_RANKING_IO_H_
