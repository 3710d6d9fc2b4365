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

#ifndef ARENA_SERVICE_ARENA_H_
#define ARENA_SERVICE_ARENA_H_

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "arena/common/random.h"
#include "arena/ranking/bradley_terry.h"
#include "arena/scoring/progress.h"
#include "arena/service/event_log.h"

namespace arena::service {

enum class Choice { kLeft, kRight, kTie };

std::string_view ChoiceName(Choice choice);
// "LEFT", "RIGHT" or "TIE", case-insensitive; kInvalidArgument otherwise.
Choice ParseChoice(std::string_view text);

struct ExecutionRecord {
  std::string execution_id;  // assigned on registration
  std::string policy;
  std::string environment_id;
  std::string task;
  std::string perturbation;  // empty when unperturbed
  std::string video_uri;
  std::string initial_condition_hash;
  std::optional<scoring::FrameScoreSeries> frame_scores;

  friend bool operator==(const ExecutionRecord&, const ExecutionRecord&) = default;
};

nlohmann::json ExecutionToJson(const ExecutionRecord& record);
ExecutionRecord ExecutionFromJson(const nlohmann::json& j);

// What the annotator sees. Policy identities are never part of it.
struct PairAssignment {
  std::string pair_id;
  std::string left;   // execution id
  std::string right;  // execution id
  std::string left_video_uri;
  std::string right_video_uri;
  std::string annotator;
  std::string issued_at;
  std::string environment_id;
  std::string task;
  bool blinded = true;
};

nlohmann::json AssignmentToJson(const PairAssignment& assignment);

struct GoldPair {
  std::string left_uri;
  std::string right_uri;
  Choice correct = Choice::kTie;
};

inline constexpr size_t kQuizSize = 10;
inline constexpr int kQuizPassMark = 8;

// {pairs: [{left_uri, right_uri, correct}]} with exactly ten entries.
std::vector<GoldPair> GoldPairsFromJson(const nlohmann::json& j);

struct QuizItem {
  size_t gold_index = 0;
  std::string left_uri;
  std::string right_uri;
};

struct QuizAnswer {
  size_t gold_index = 0;
  Choice response = Choice::kTie;
  bool correct = false;
};

struct QuizState {
  std::string annotator;
  std::vector<QuizAnswer> answered;
  bool passed = false;
  std::string token;  // issued on pass
};

struct LeaderboardFilter {
  std::optional<std::string> environment;
  // "none" selects unperturbed executions.
  std::optional<std::string> perturbation;
};

struct ArenaConfig {
  uint64_t seed = 0;
  int64_t assignment_ttl_ms = 30 * 60 * 1000;
  double alpha = 0.05;
  ranking::FitConfig fit;
  std::vector<GoldPair> gold;
  // Unix milliseconds; defaults to the system clock.
  std::function<int64_t()> clock;
};

// The live arena. Every state change is an event appended to the log and
// applied through one code path, so constructing an Arena over an existing
// log rebuilds the same state. All public methods are thread-safe.
class Arena {
 public:
  explicit Arena(ArenaConfig config, EventLog log = {});

  void RegisterPolicy(const std::string& policy);
  // Returns the existing id when (policy, environment, perturbation, initial
  // condition hash) is already registered.
  std::string RegisterExecution(const ExecutionRecord& record);

  // Fresh seeded ordering of the gold pairs for `annotator`.
  std::vector<QuizItem> IssueQuiz(const std::string& annotator);
  // `responses` follow the order of the latest issued quiz.
  QuizState EvaluateQuiz(const std::string& annotator, const std::vector<Choice>& responses);
  // Annotator owning a pass token; kNotQualified otherwise.
  std::string AnnotatorForToken(const std::string& token) const;

  PairAssignment NextPair(const std::string& annotator);
  ranking::ComparisonRecord SubmitPreference(const std::string& pair_id,
                                             const std::string& annotator, Choice choice,
                                             const std::string& rationale);

  nlohmann::json Leaderboard(const LeaderboardFilter& filter = {});

  std::vector<Event> events() const;
  std::vector<ranking::ComparisonRecord> records() const;
  std::optional<ExecutionRecord> execution(const std::string& id) const;

 private:
  struct Assignment {
    PairAssignment view;
    std::string left_policy;
    std::string right_policy;
    std::string perturbation;
    int64_t issued_ms = 0;
    bool judged = false;
  };
  struct Judgment {
    ranking::ComparisonRecord record;
    std::string environment_id;
    std::string perturbation;
  };
  using PairKey = std::pair<std::string, std::string>;  // sorted execution ids

  static PairKey KeyOf(const std::string& a, const std::string& b);
  int64_t Now() const;
  Rng CommandRng() const;
  const Event& Commit(std::string type, nlohmann::json payload);
  void Apply(const Event& event);

  ArenaConfig config_;
  mutable std::mutex mu_;
  EventLog log_;

  std::set<std::string> policies_;
  std::vector<ExecutionRecord> executions_;
  std::map<std::string, size_t> execution_index_;
  std::map<std::array<std::string, 4>, std::string> execution_keys_;
  std::map<std::string, std::vector<size_t>> quiz_orders_;
  std::map<std::string, std::string> tokens_;  // token -> annotator
  std::set<std::string> qualified_;
  std::map<std::string, Assignment> assignments_;
  std::map<std::string, std::set<PairKey>> seen_pairs_;
  std::map<PairKey, int> judgment_counts_;
  std::vector<Judgment> judgments_;
  std::map<std::pair<std::string, std::string>, std::pair<size_t, nlohmann::json>>
      leaderboard_cache_;
};

}  // namespace arena::service

#endif  // ARENA_SERVICE_ARENA_H_
