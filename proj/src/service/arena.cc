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

#include "arena/service/arena.h"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>

#include "arena/common/error.h"
#include "arena/ranking/io.h"
#include "arena/ranking/leaderboard.h"

namespace arena::service {
namespace {

constexpr char kPolicyRegistered[] = "policy_registered";
constexpr char kExecutionRegistered[] = "execution_registered";
constexpr char kQuizIssued[] = "quiz_issued";
constexpr char kQuizEvaluated[] = "quiz_evaluated";
constexpr char kPairAssigned[] = "pair_assigned";
constexpr char kPreferenceRecorded[] = "preference_recorded";

std::string Hex(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string Trim(const std::string& s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  const auto begin = std::find_if(s.begin(), s.end(), not_space);
  const auto end = std::find_if(s.rbegin(), s.rend(), not_space).base();
  return begin < end ? std::string(begin, end) : std::string();
}

std::string Upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string OptionalKey(const std::optional<std::string>& v) {
  return v ? "=" + *v : "*";
}

bool MatchesPerturbation(const std::optional<std::string>& filter, const std::string& value) {
  if (!filter) return true;
  if (*filter == "none") return value.empty();
  return *filter == value;
}

}  // namespace

std::string_view ChoiceName(Choice choice) {
  switch (choice) {
    case Choice::kLeft: return "LEFT";
    case Choice::kRight: return "RIGHT";
    case Choice::kTie: return "TIE";
  }
  return "TIE";
}

Choice ParseChoice(std::string_view text) {
  const std::string upper = Upper(text);
  if (upper == "LEFT") return Choice::kLeft;
  if (upper == "RIGHT") return Choice::kRight;
  if (upper == "TIE") return Choice::kTie;
  Fail(ErrorCode::kInvalidArgument, "choice must be LEFT, RIGHT or TIE, got " + std::string(text));
}

nlohmann::json ExecutionToJson(const ExecutionRecord& r) {
  nlohmann::json j = {{"execution_id", r.execution_id},
                      {"policy", r.policy},
                      {"environment_id", r.environment_id},
                      {"task", r.task},
                      {"perturbation", nullptr},
                      {"video_uri", r.video_uri},
                      {"initial_condition_hash", r.initial_condition_hash}};
  if (!r.perturbation.empty()) j["perturbation"] = r.perturbation;
  if (r.frame_scores) j["frame_scores"] = scoring::SeriesToJson(*r.frame_scores);
  return j;
}

ExecutionRecord ExecutionFromJson(const nlohmann::json& j) {
  ExecutionRecord r;
  try {
    r.execution_id = j.value("execution_id", "");
    r.policy = j.at("policy").get<std::string>();
    r.environment_id = j.at("environment_id").get<std::string>();
    r.task = j.value("task", "");
    if (j.contains("perturbation") && !j["perturbation"].is_null()) {
      r.perturbation = j["perturbation"].get<std::string>();
    }
    r.video_uri = j.at("video_uri").get<std::string>();
    r.initial_condition_hash = j.value("initial_condition_hash", "");
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParseError, std::string("bad execution record: ") + e.what());
  }
  if (j.contains("frame_scores") && !j["frame_scores"].is_null()) {
    r.frame_scores = scoring::SeriesFromJson(j["frame_scores"]);
  }
  return r;
}

nlohmann::json AssignmentToJson(const PairAssignment& a) {
  return {{"pair_id", a.pair_id},
          {"left", {{"execution_id", a.left}, {"video_uri", a.left_video_uri}}},
          {"right", {{"execution_id", a.right}, {"video_uri", a.right_video_uri}}},
          {"annotator", a.annotator},
          {"issued_at", a.issued_at},
          {"environment_id", a.environment_id},
          {"task", a.task},
          {"blinded", a.blinded}};
}

std::vector<GoldPair> GoldPairsFromJson(const nlohmann::json& j) {
  std::vector<GoldPair> gold;
  try {
    for (const auto& item : j.at("pairs")) {
      gold.push_back({item.at("left_uri").get<std::string>(),
                      item.at("right_uri").get<std::string>(),
                      ParseChoice(item.at("correct").get<std::string>())});
    }
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParseError, std::string("bad gold quiz config: ") + e.what());
  }
  Require(gold.size() == kQuizSize, "gold quiz config needs exactly 10 pairs, found " +
                                        std::to_string(gold.size()));
  return gold;
}

Arena::Arena(ArenaConfig config, EventLog log) : config_(std::move(config)), log_(std::move(log)) {
  Require(config_.alpha > 0.0 && config_.alpha < 1.0, "alpha must lie in (0, 1)");
  Require(config_.assignment_ttl_ms > 0, "assignment TTL must be positive");
  Require(config_.gold.empty() || config_.gold.size() == kQuizSize,
          "gold quiz needs exactly 10 pairs");
  if (!config_.clock) {
    config_.clock = [] {
      return std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::system_clock::now().time_since_epoch())
          .count();
    };
  }
  for (const Event& event : log_.events()) Apply(event);
}

Arena::PairKey Arena::KeyOf(const std::string& a, const std::string& b) {
  return a < b ? PairKey{a, b} : PairKey{b, a};
}

int64_t Arena::Now() const { return config_.clock(); }

Rng Arena::CommandRng() const {
  return Rng(config_.seed ^ (0x9E3779B97F4A7C15ULL * log_.next_seq()));
}

const Event& Arena::Commit(std::string type, nlohmann::json payload) {
  const Event& event = log_.Append(std::move(type), std::move(payload), FormatTimestamp(Now()));
  Apply(event);
  return event;
}

void Arena::Apply(const Event& event) {
  const nlohmann::json& p = event.payload;
  try {
    if (event.type == kPolicyRegistered) {
      policies_.insert(p.at("policy").get<std::string>());
    } else if (event.type == kExecutionRegistered) {
      ExecutionRecord r = ExecutionFromJson(p);
      execution_keys_[{r.policy, r.environment_id, r.perturbation, r.initial_condition_hash}] =
          r.execution_id;
      execution_index_[r.execution_id] = executions_.size();
      executions_.push_back(std::move(r));
    } else if (event.type == kQuizIssued) {
      quiz_orders_[p.at("annotator").get<std::string>()] =
          p.at("order").get<std::vector<size_t>>();
    } else if (event.type == kQuizEvaluated) {
      if (p.at("passed").get<bool>()) {
        const auto annotator = p.at("annotator").get<std::string>();
        qualified_.insert(annotator);
        tokens_[p.at("token").get<std::string>()] = annotator;
      }
    } else if (event.type == kPairAssigned) {
      Assignment a;
      a.view.pair_id = p.at("pair_id").get<std::string>();
      a.view.left = p.at("left").get<std::string>();
      a.view.right = p.at("right").get<std::string>();
      a.view.annotator = p.at("annotator").get<std::string>();
      a.view.issued_at = event.timestamp;
      a.view.environment_id = p.at("environment_id").get<std::string>();
      a.view.task = p.at("task").get<std::string>();
      a.left_policy = p.at("left_policy").get<std::string>();
      a.right_policy = p.at("right_policy").get<std::string>();
      a.perturbation = p.at("perturbation").get<std::string>();
      a.issued_ms = p.at("issued_ms").get<int64_t>();
      a.view.left_video_uri = executions_.at(execution_index_.at(a.view.left)).video_uri;
      a.view.right_video_uri = executions_.at(execution_index_.at(a.view.right)).video_uri;
      seen_pairs_[a.view.annotator].insert(KeyOf(a.view.left, a.view.right));
      assignments_[a.view.pair_id] = std::move(a);
    } else if (event.type == kPreferenceRecorded) {
      Assignment& a = assignments_.at(p.at("pair_id").get<std::string>());
      a.judged = true;
      ++judgment_counts_[KeyOf(a.view.left, a.view.right)];
      judgments_.push_back({p.at("record").get<ranking::ComparisonRecord>(),
                            a.view.environment_id, a.perturbation});
    } else {
      Fail(ErrorCode::kParseError, "unknown event type " + event.type);
    }
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParseError,
         "event " + std::to_string(event.seq) + " (" + event.type + "): " + e.what());
  } catch (const std::out_of_range&) {
    Fail(ErrorCode::kParseError,
         "event " + std::to_string(event.seq) + " references an unknown entity");
  }
}

void Arena::RegisterPolicy(const std::string& policy) {
  Require(!Trim(policy).empty(), "policy id must not be empty");
  std::lock_guard lock(mu_);
  if (policies_.contains(policy)) return;
  Commit(kPolicyRegistered, {{"policy", policy}});
}

std::string Arena::RegisterExecution(const ExecutionRecord& record) {
  Require(!Trim(record.video_uri).empty(), "video_uri must not be empty");
  Require(!record.environment_id.empty(), "environment_id must not be empty");
  if (record.frame_scores) scoring::ValidateSeries(*record.frame_scores);
  std::lock_guard lock(mu_);
  Require(policies_.contains(record.policy), "unknown policy " + record.policy);
  const std::array<std::string, 4> key{record.policy, record.environment_id,
                                       record.perturbation, record.initial_condition_hash};
  if (auto it = execution_keys_.find(key); it != execution_keys_.end()) return it->second;
  ExecutionRecord stored = record;
  if (stored.execution_id.empty()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "exec-%06zu", executions_.size() + 1);
    stored.execution_id = buf;
  }
  Require(!execution_index_.contains(stored.execution_id),
          "execution id " + stored.execution_id + " is already taken");
  Commit(kExecutionRegistered, ExecutionToJson(stored));
  return stored.execution_id;
}

std::vector<QuizItem> Arena::IssueQuiz(const std::string& annotator) {
  Require(!Trim(annotator).empty(), "annotator name must not be empty");
  std::lock_guard lock(mu_);
  Require(config_.gold.size() == kQuizSize, "no gold quiz configured");
  std::vector<size_t> order(kQuizSize);
  for (size_t i = 0; i < kQuizSize; ++i) order[i] = i;
  Rng rng = CommandRng();
  rng.Shuffle(std::span<size_t>(order));
  Commit(kQuizIssued, {{"annotator", annotator}, {"order", order}});
  std::vector<QuizItem> items;
  for (size_t index : order) {
    items.push_back({index, config_.gold[index].left_uri, config_.gold[index].right_uri});
  }
  return items;
}

QuizState Arena::EvaluateQuiz(const std::string& annotator,
                              const std::vector<Choice>& responses) {
  Require(responses.size() == kQuizSize,
          "quiz needs exactly 10 responses, got " + std::to_string(responses.size()));
  std::lock_guard lock(mu_);
  const auto it = quiz_orders_.find(annotator);
  Require(it != quiz_orders_.end(), "no quiz was issued to " + annotator);
  QuizState state;
  state.annotator = annotator;
  int correct = 0;
  nlohmann::json response_names = nlohmann::json::array();
  nlohmann::json marks = nlohmann::json::array();
  for (size_t i = 0; i < kQuizSize; ++i) {
    const size_t gold = it->second[i];
    const bool ok = config_.gold[gold].correct == responses[i];
    correct += ok ? 1 : 0;
    state.answered.push_back({gold, responses[i], ok});
    response_names.push_back(ChoiceName(responses[i]));
    marks.push_back(ok);
  }
  state.passed = correct >= kQuizPassMark;
  if (state.passed) {
    Rng rng = CommandRng();
    do {
      state.token = Hex(rng.NextU64()) + Hex(rng.NextU64());
    } while (tokens_.contains(state.token));
  }
  Commit(kQuizEvaluated, {{"annotator", annotator},
                          {"responses", response_names},
                          {"correct", marks},
                          {"score", correct},
                          {"passed", state.passed},
                          {"token", state.token}});
  return state;
}

std::string Arena::AnnotatorForToken(const std::string& token) const {
  std::lock_guard lock(mu_);
  const auto it = tokens_.find(token);
  if (it == tokens_.end()) Fail(ErrorCode::kNotQualified, "unknown annotator token");
  return it->second;
}

PairAssignment Arena::NextPair(const std::string& annotator) {
  std::lock_guard lock(mu_);
  if (!qualified_.contains(annotator)) {
    Fail(ErrorCode::kNotQualified, annotator + " has not passed the qualification quiz");
  }
  std::map<std::array<std::string, 4>, std::vector<size_t>> groups;
  for (size_t i = 0; i < executions_.size(); ++i) {
    const ExecutionRecord& e = executions_[i];
    groups[{e.environment_id, e.task, e.initial_condition_hash, e.perturbation}].push_back(i);
  }
  const auto seen = seen_pairs_.find(annotator);
  std::vector<std::pair<size_t, size_t>> best;
  int fewest = 0;
  for (const auto& [key, members] : groups) {
    for (size_t x = 0; x < members.size(); ++x) {
      for (size_t y = x + 1; y < members.size(); ++y) {
        const ExecutionRecord& a = executions_[members[x]];
        const ExecutionRecord& b = executions_[members[y]];
        if (a.policy == b.policy) continue;
        const PairKey pair = KeyOf(a.execution_id, b.execution_id);
        if (seen != seen_pairs_.end() && seen->second.contains(pair)) continue;
        const auto count_it = judgment_counts_.find(pair);
        const int count = count_it == judgment_counts_.end() ? 0 : count_it->second;
        if (best.empty() || count < fewest) {
          best.clear();
          fewest = count;
        }
        if (count == fewest) best.push_back({members[x], members[y]});
      }
    }
  }
  if (best.empty()) Fail(ErrorCode::kNoPairsAvailable, "no eligible pairs for " + annotator);

  Rng rng = CommandRng();
  auto [first, second] = best[rng.UniformIndex(best.size())];
  if (rng.Coin()) std::swap(first, second);
  const ExecutionRecord& left = executions_[first];
  const ExecutionRecord& right = executions_[second];
  std::string pair_id;
  do {
    pair_id = "pair-" + Hex(rng.NextU64());
  } while (assignments_.contains(pair_id));
  const int64_t now = Now();
  Commit(kPairAssigned, {{"pair_id", pair_id},
                         {"annotator", annotator},
                         {"left", left.execution_id},
                         {"right", right.execution_id},
                         {"left_policy", left.policy},
                         {"right_policy", right.policy},
                         {"environment_id", left.environment_id},
                         {"task", left.task},
                         {"perturbation", left.perturbation},
                         {"issued_ms", now}});
  return assignments_.at(pair_id).view;
}

ranking::ComparisonRecord Arena::SubmitPreference(const std::string& pair_id,
                                                  const std::string& annotator,
                                                  Choice choice,
                                                  const std::string& rationale) {
  std::lock_guard lock(mu_);
  const auto it = assignments_.find(pair_id);
  if (it == assignments_.end() || it->second.view.annotator != annotator) {
    Fail(ErrorCode::kInvalidPair, "pair " + pair_id + " was not issued to " + annotator);
  }
  const Assignment& a = it->second;
  if (a.judged) Fail(ErrorCode::kAlreadyJudged, "pair " + pair_id + " was already judged");
  const int64_t now = Now();
  if (now - a.issued_ms > config_.assignment_ttl_ms) {
    Fail(ErrorCode::kInvalidPair, "pair " + pair_id + " has expired");
  }
  if (Trim(rationale).empty()) {
    Fail(ErrorCode::kRationaleRequired, "a written rationale is required");
  }
  ranking::ComparisonRecord record;
  record.policy_a = std::min(a.left_policy, a.right_policy);
  record.policy_b = std::max(a.left_policy, a.right_policy);
  if (choice != Choice::kTie) {
    const std::string& winner = choice == Choice::kLeft ? a.left_policy : a.right_policy;
    record.outcome = winner == record.policy_a ? 1 : -1;
  }
  record.task = a.view.task;
  record.annotator = annotator;
  record.rationale = rationale;
  record.timestamp = FormatTimestamp(now);
  Commit(kPreferenceRecorded,
         {{"pair_id", pair_id}, {"choice", ChoiceName(choice)}, {"record", record}});
  return record;
}

nlohmann::json Arena::Leaderboard(const LeaderboardFilter& filter) {
  const auto key = std::make_pair(OptionalKey(filter.environment), OptionalKey(filter.perturbation));
  std::vector<ranking::ComparisonRecord> snapshot;
  size_t length = 0;
  {
    std::lock_guard lock(mu_);
    length = log_.size();
    if (auto it = leaderboard_cache_.find(key);
        it != leaderboard_cache_.end() && it->second.first == length) {
      return it->second.second;
    }
    for (const Judgment& j : judgments_) {
      if (filter.environment && *filter.environment != j.environment_id) continue;
      if (!MatchesPerturbation(filter.perturbation, j.perturbation)) continue;
      snapshot.push_back(j.record);
    }
  }
  nlohmann::json payload = ranking::LeaderboardToJson(
      ranking::BuildLeaderboard(snapshot, config_.alpha, config_.fit));
  payload["filter"] = {{"environment", nullptr}, {"perturbation", nullptr}};
  if (filter.environment) payload["filter"]["environment"] = *filter.environment;
  if (filter.perturbation) payload["filter"]["perturbation"] = *filter.perturbation;
  payload["log_length"] = length;
  std::lock_guard lock(mu_);
  leaderboard_cache_[key] = {length, payload};
  return payload;
}

std::vector<Event> Arena::events() const {
  std::lock_guard lock(mu_);
  return log_.events();
}

std::vector<ranking::ComparisonRecord> Arena::records() const {
  std::lock_guard lock(mu_);
  std::vector<ranking::ComparisonRecord> out;
  for (const Judgment& j : judgments_) out.push_back(j.record);
  return out;
}

std::optional<ExecutionRecord> Arena::execution(const std::string& id) const {
  std::lock_guard lock(mu_);
  const auto it = execution_index_.find(id);
  if (it == execution_index_.end()) return std::nullopt;
  return executions_[it->second];
}

}  // namespace arena::service
