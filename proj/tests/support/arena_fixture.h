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

#ifndef ARENA_TESTS_SUPPORT_ARENA_FIXTURE_H_
#define ARENA_TESTS_SUPPORT_ARENA_FIXTURE_H_

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "arena/service/arena.h"

namespace arena::testing {

// Ten gold pairs with answers cycling LEFT, RIGHT, TIE.
inline nlohmann::json GoldConfig() {
  static const char* kAnswers[] = {"LEFT", "RIGHT", "TIE"};
  nlohmann::json pairs = nlohmann::json::array();
  for (int i = 0; i < 10; ++i) {
    pairs.push_back({{"left_uri", "gold/" + std::to_string(i) + "-l.mp4"},
                     {"right_uri", "gold/" + std::to_string(i) + "-r.mp4"},
                     {"correct", kAnswers[i % 3]}});
  }
  return {{"pairs", pairs}};
}

// Correct answer keyed by left_uri, as an annotator with the answer sheet
// would know it.
inline std::map<std::string, std::string> GoldAnswers() {
  std::map<std::string, std::string> out;
  const nlohmann::json config = GoldConfig();
  for (const auto& p : config["pairs"]) {
    out[p["left_uri"].get<std::string>()] = p["correct"].get<std::string>();
  }
  return out;
}

struct FakeClock {
  std::shared_ptr<std::atomic<int64_t>> now =
      std::make_shared<std::atomic<int64_t>>(1'790'000'000'000);
  std::function<int64_t()> fn() const {
    auto ptr = now;
    return [ptr] { return ptr->load(); };
  }
  void Advance(int64_t ms) { *now += ms; }
};

inline service::ArenaConfig TestConfig(uint64_t seed, const FakeClock& clock) {
  service::ArenaConfig config;
  config.seed = seed;
  config.gold = service::GoldPairsFromJson(GoldConfig());
  config.clock = clock.fn();
  return config;
}

// Takes the quiz answering `correct` items right and the rest wrong.
inline service::QuizState TakeQuiz(service::Arena& arena, const std::string& annotator,
                                   int correct = 10) {
  const auto gold = service::GoldPairsFromJson(GoldConfig());
  std::vector<service::Choice> responses;
  for (const auto& item : arena.IssueQuiz(annotator)) {
    service::Choice right = gold[item.gold_index].correct;
    if (static_cast<int>(responses.size()) >= correct) {
      right = right == service::Choice::kLeft ? service::Choice::kRight : service::Choice::kLeft;
    }
    responses.push_back(right);
  }
  return arena.EvaluateQuiz(annotator, responses);
}

inline service::ExecutionRecord Execution(const std::string& policy, const std::string& env,
                                          const std::string& ich = "ic-1",
                                          const std::string& perturbation = "") {
  service::ExecutionRecord r;
  r.policy = policy;
  r.environment_id = env;
  r.task = "put the carrot on the plate";
  r.perturbation = perturbation;
  r.initial_condition_hash = ich;
  r.video_uri = "videos/" + policy + "-" + env + "-" + ich + "-" + perturbation + ".mp4";
  return r;
}

}  // namespace arena::testing

#endif  // ARENA_TESTS_SUPPORT_ARENA_FIXTURE_H_
