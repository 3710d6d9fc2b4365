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

#ifndef ARENA_SERVICE_TASK_ROLES_H_
#define ARENA_SERVICE_TASK_ROLES_H_

#include <optional>
#include <string>
#include <string_view>

namespace arena::service {

struct TaskRoles {
  std::string target;
  std::optional<std::string> destination;

  friend bool operator==(const TaskRoles&, const TaskRoles&) = default;
};

// Accepts "target: X, destination: Y" and "target: X". Keys are matched
// case-insensitively and surrounding whitespace is ignored; a comma not
// followed by a known key stays inside the value. Throws kParseError when
// no non-empty target is present.
TaskRoles ParseTaskRoles(std::string_view text);

}  // namespace arena::service

#endif  // ARENA_SERVICE_TASK_ROLES_H_
