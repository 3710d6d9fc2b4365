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

#ifndef ARENA_SERVICE_EVENT_LOG_H_
#define ARENA_SERVICE_EVENT_LOG_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

namespace arena::service {

// Envelope {type, payload, seq, timestamp}. seq starts at 1 and has no gaps.
struct Event {
  std::string type;
  nlohmann::json payload;
  uint64_t seq = 0;
  std::string timestamp;

  friend bool operator==(const Event&, const Event&) = default;
};

nlohmann::json EventToJson(const Event& event);
Event EventFromJson(const nlohmann::json& j);

// Append-only JSONL event log. In-memory by default; when backed by a file,
// existing events are loaded on open and each append is flushed before it
// returns.
class EventLog {
 public:
  EventLog() = default;
  static EventLog Open(const std::filesystem::path& path);
  // Parses a whole log; kParseError names the offending line.
  static std::vector<Event> Read(std::istream& in);

  const Event& Append(std::string type, nlohmann::json payload, std::string timestamp);

  const std::vector<Event>& events() const { return events_; }
  size_t size() const { return events_.size(); }
  uint64_t next_seq() const { return events_.size() + 1; }

 private:
  std::vector<Event> events_;
  std::unique_ptr<std::ofstream> sink_;
};

// RFC 3339 UTC with millisecond precision.
std::string FormatTimestamp(int64_t unix_ms);

}  // namespace arena::service

#endif  // ARENA_SERVICE_EVENT_LOG_H_
