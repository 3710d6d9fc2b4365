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

#include "arena/service/task_roles.h"

#include <cctype>
#include <vector>

#include "arena/common/error.h"

namespace arena::service {
namespace {

std::string Trim(std::string_view s) {
  size_t begin = 0, end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return std::string(s.substr(begin, end - begin));
}

std::string Lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// "target" or "destination" when `clause` starts with that key and a colon.
std::optional<std::string> KeyOf(std::string_view clause, std::string* value) {
  const size_t colon = clause.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  const std::string key = Lower(Trim(clause.substr(0, colon)));
  if (key != "target" && key != "destination") return std::nullopt;
  *value = Trim(clause.substr(colon + 1));
  return key;
}

}  // namespace

TaskRoles ParseTaskRoles(std::string_view text) {
  std::vector<std::string_view> clauses;
  size_t start = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      clauses.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  std::optional<std::string> target;
  std::optional<std::string> destination;
  std::optional<std::string>* open = nullptr;
  for (std::string_view clause : clauses) {
    std::string value;
    const auto key = KeyOf(clause, &value);
    if (key) {
      open = *key == "target" ? &target : &destination;
      if (open->has_value()) Fail(ErrorCode::kParseError, "repeated " + *key + " clause");
      *open = value;
    } else if (open != nullptr) {
      **open += "," + std::string(clause);
      **open = Trim(**open);
    } else if (!Trim(clause).empty()) {
      Fail(ErrorCode::kParseError, "expected 'target:' in \"" + std::string(text) + "\"");
    }
  }
  if (!target || target->empty()) {
    Fail(ErrorCode::kParseError, "no target clause in \"" + std::string(text) + "\"");
  }
  if (destination && destination->empty()) destination.reset();
  return {*target, destination};
}

}  // namespace arena::service
