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

#include "arena/ranking/io.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "arena/common/error.h"

namespace arena::ranking {
namespace {

std::string OptionalString(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  return it->get<std::string>();
}

nlohmann::json MatrixRowMajor(const Eigen::MatrixXd& m) {
  nlohmann::json flat = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
  }
  return flat;
}

}  // namespace

void to_json(nlohmann::json& j, const ComparisonRecord& record) {
  j = nlohmann::json{{"policy_a", record.policy_a},
                     {"policy_b", record.policy_b},
                     {"outcome", record.outcome},
                     {"task", record.task},
                     {"annotator", record.annotator},
                     {"rationale", record.rationale},
                     {"timestamp", record.timestamp}};
}

void from_json(const nlohmann::json& j, ComparisonRecord& record) {
  if (!j.is_object()) {
    Fail(ErrorCode::kParseError, "comparison record must be a JSON object");
  }
  const nlohmann::json& outcome = j.at("outcome");
  if (!outcome.is_number_integer()) {
    Fail(ErrorCode::kParseError, "outcome must be an integer");
  }
  record.policy_a = j.at("policy_a").get<std::string>();
  record.policy_b = j.at("policy_b").get<std::string>();
  record.outcome = outcome.get<int>();
  record.task = OptionalString(j, "task");
  record.annotator = OptionalString(j, "annotator");
  record.rationale = OptionalString(j, "rationale");
  record.timestamp = OptionalString(j, "timestamp");
}

std::vector<ComparisonRecord> ReadComparisonLog(std::istream& in) {
  std::vector<ComparisonRecord> records;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      ComparisonRecord record = nlohmann::json::parse(line);
      ValidateRecord(record);
      records.push_back(std::move(record));
    } catch (const std::exception& e) {
      Fail(ErrorCode::kParseError,
           "line " + std::to_string(line_number) + ": " + e.what());
    }
  }
  return records;
}

std::vector<ComparisonRecord> ReadComparisonLogFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIoError, "cannot open comparison log " + path);
  return ReadComparisonLog(in);
}

std::string FitFlagName(FitFlag flag) {
  switch (flag) {
    case FitFlag::kDiverged: return "DIVERGED";
    case FitFlag::kSeparated: return "SEPARATED";
  }
  return "UNKNOWN";
}

nlohmann::json FitReportToJson(const FitReport& report) {
  const AbilityEstimate& estimate = report.estimate;
  nlohmann::json flags = nlohmann::json::array();
  for (FitFlag flag : report.flags) flags.push_back(FitFlagName(flag));
  nlohmann::json betas = nlohmann::json::array();
  nlohmann::json thetas = nlohmann::json::array();
  for (Eigen::Index i = 0; i < estimate.betas.size(); ++i) {
    betas.push_back(estimate.betas[i]);
    thetas.push_back(estimate.thetas[i]);
  }
  return {{"policies", estimate.policies.ids()},
          {"betas", betas},
          {"thetas", thetas},
          {"covariance", MatrixRowMajor(estimate.centered_covariance)},
          {"gauge", "sum-zero"},
          {"flags", flags},
          {"iterations", report.iterations},
          {"final_gradient_norm", report.final_gradient_norm}};
}

nlohmann::json LeaderboardToJson(const Leaderboard& board) {
  const AbilityEstimate& estimate = board.fit.estimate;
  nlohmann::json entries = nlohmann::json::array();
  for (const RankEntry& entry : board.ranking) {
    const size_t i = estimate.policies.index(entry.policy);
    const PolicyCounts counts = board.counts.contains(entry.policy)
                                    ? board.counts.at(entry.policy)
                                    : PolicyCounts{};
    entries.push_back({{"policy", entry.policy},
                       {"rank", entry.rank},
                       {"beta", estimate.betas[i]},
                       {"theta", estimate.thetas[i]},
                       {"ci_lower", board.band.lower[i]},
                       {"ci_upper", board.band.upper[i]},
                       {"decisive_over_next", entry.decisive},
                       {"wins", counts.wins},
                       {"losses", counts.losses},
                       {"ties", counts.ties}});
  }
  return {{"ranking", entries},
          {"alpha", board.band.alpha},
          {"z", board.band.z},
          {"decisive_records", board.decisive_records},
          {"tie_records", board.tie_records},
          {"fit", FitReportToJson(board.fit)}};
}

std::string FormatLeaderboardTable(const Leaderboard& board) {
  const AbilityEstimate& estimate = board.fit.estimate;
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-4s  %-24s  %10s  %10s  %21s  %s\n",
                "rank", "policy", "beta", "theta", "ci", "sep");
  out << line;
  for (const RankEntry& entry : board.ranking) {
    const size_t i = estimate.policies.index(entry.policy);
    std::snprintf(line, sizeof(line),
                  "%-4d  %-24s  %10.4f  %10.4f  [%9.4f, %9.4f]  %s\n",
                  entry.rank, entry.policy.c_str(), estimate.betas[i],
                  estimate.thetas[i], board.band.lower[i], board.band.upper[i],
                  entry.decisive ? ">" : "~");
    out << line;
  }
  out << "decisive=" << board.decisive_records << " ties=" << board.tie_records;
  for (FitFlag flag : board.fit.flags) out << " " << FitFlagName(flag);
  out << "\n";
  return out.str();
}

}  // namespace arena::ranking
