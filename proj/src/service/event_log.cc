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

#include "arena/service/event_log.h"

#include <cstdio>
#include <ctime>

#include "arena/common/error.h"

namespace arena::service {

nlohmann::json EventToJson(const Event& event) {
  return {{"type", event.type},
          {"payload", event.payload},
          {"seq", event.seq},
          {"timestamp", event.timestamp}};
}

Event EventFromJson(const nlohmann::json& j) {
  Event event;
  try {
    event.type = j.at("type").get<std::string>();
    event.payload = j.at("payload");
    event.seq = j.at("seq").get<uint64_t>();
    event.timestamp = j.at("timestamp").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParseError, std::string("bad event envelope: ") + e.what());
  }
  return event;
}

std::vector<Event> EventLog::Read(std::istream& in) {
  std::vector<Event> events;
  std::string text;
  size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      Event event = EventFromJson(nlohmann::json::parse(text));
      if (event.seq != events.size() + 1) {
        Fail(ErrorCode::kParseError, "expected seq " + std::to_string(events.size() + 1) +
                                         ", found " + std::to_string(event.seq));
      }
      events.push_back(std::move(event));
    } catch (const nlohmann::json::exception& e) {
      Fail(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + e.what());
    } catch (const Error& e) {
      Fail(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + e.what());
    }
  }
  return events;
}

EventLog EventLog::Open(const std::filesystem::path& path) {
  EventLog log;
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    if (!in) Fail(ErrorCode::kIoError, "cannot read " + path.string());
    log.events_ = Read(in);
  }
  log.sink_ = std::make_unique<std::ofstream>(path, std::ios::app);
  if (!*log.sink_) Fail(ErrorCode::kIoError, "cannot append to " + path.string());
  return log;
}

const Event& EventLog::Append(std::string type, nlohmann::json payload,
                              std::string timestamp) {
  Event event{std::move(type), std::move(payload), next_seq(), std::move(timestamp)};
  if (sink_) {
    *sink_ << EventToJson(event).dump() << '\n';
    sink_->flush();
    if (!*sink_) Fail(ErrorCode::kIoError, "event log write failed");
  }
  events_.push_back(std::move(event));
  return events_.back();
}

std::string FormatTimestamp(int64_t unix_ms) {
  const std::time_t seconds = static_cast<std::time_t>(unix_ms / 1000);
  std::tm utc{};
  gmtime_r(&seconds, &utc);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", utc.tm_year + 1900,
                utc.tm_mon + 1, utc.tm_mday, utc.tm_hour, utc.tm_min, utc.tm_sec,
                static_cast<int>(unix_ms % 1000));
  return buf;
}

}  // namespace arena::service
