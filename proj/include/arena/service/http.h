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

#ifndef ARENA_SERVICE_HTTP_H_
#define ARENA_SERVICE_HTTP_H_

#include <memory>
#include <string>
#include <thread>

#include <json.hpp>

#include "arena/common/error.h"
#include "arena/service/arena.h"

namespace httplib {
class Server;
}

namespace arena::service {

// 400 bad input, 403 NotQualified, 404 NoPairsAvailable / InvalidPair,
// 409 AlreadyJudged, 422 RationaleRequired and fit infeasibility, 500 else.
int HttpStatusFor(ErrorCode code);

// {error, message}, plus components for GraphDisconnected.
nlohmann::json ErrorBody(const Error& error);

// POST /policies            {policy}
// POST /executions          ExecutionRecord JSON -> {execution_id}
// GET  /quiz?annotator=     -> {annotator, pairs: [{position, left_uri, right_uri}]}
// POST /quiz                {annotator, responses: [10 x LEFT|RIGHT|TIE]}
// GET  /pairs/next          Authorization: Bearer <token>
// POST /preferences         Authorization: Bearer <token>; {pair_id, choice, rationale}
// GET  /leaderboard?environment=&perturbation=
void RegisterRoutes(httplib::Server& server, Arena& arena);

// Owns a server thread bound to `host`.
class ArenaServer {
 public:
  explicit ArenaServer(Arena& arena);
  ~ArenaServer();

  // Port 0 picks a free port. Returns the bound port.
  int Start(const std::string& host = "127.0.0.1", int port = 0);
  // Blocks in the calling thread until Stop() from elsewhere.
  void Run(const std::string& host, int port);
  void Stop();

 private:
  Arena& arena_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace arena::service

#endif  // ARENA_SERVICE_HTTP_H_
