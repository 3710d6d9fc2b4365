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

#ifndef ARENA_CLI_CLI_H_
#define ARENA_CLI_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "arena/common/error.h"

namespace arena::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInfeasible = 2;

// 2 for statistical or numerical infeasibility, 1 for everything else.
int ExitCodeFor(ErrorCode code);

// Entry point for the `arena` binary. `args` excludes the program name.
//   rank LOG [--alpha A]
//   report --scores DIR [--group-by environment|perturbation|none] [--method M]
//   perturb color --alpha A [--mask M.png] IN.png OUT.png
//   perturb poses SCENE.json OUTDIR
//   perturb bg --id ID [--catalog FILE] SCENE.json OUT.json
//   sysid run --traj DIR [--steps N] [--kp-min ..] [--dt S] [--mass KG] [--overlay CSV]
//   serve --gold GOLD.json [--log EVENTS.jsonl] [--host H] [--port P]
// Global: --seed, --output, --format {json,csv,table}.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arena::cli

#endif  // ARENA_CLI_CLI_H_
