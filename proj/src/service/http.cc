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

#include "arena/service/http.h"

#include <httplib.h>

#include <optional>

namespace arena::service {
namespace {

void Reply(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

nlohmann::json ParseBody(const httplib::Request& req) {
  try {
    return nlohmann::json::parse(req.body);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParseError, std::string("request body is not JSON: ") + e.what());
  }
}

template <typename T>
T Field(const nlohmann::json& body, const char* key) {
  try {
    return body.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    Fail(ErrorCode::kInvalidArgument, std::string("missing or malformed field '") + key + "'");
  }
}

std::string BearerToken(const httplib::Request& req) {
  const std::string header = req.get_header_value("Authorization");
  const std::string prefix = "Bearer ";
  if (header.size() <= prefix.size() || header.compare(0, prefix.size(), prefix) != 0) {
    Fail(ErrorCode::kNotQualified, "missing bearer token");
  }
  return header.substr(prefix.size());
}

std::optional<std::string> Param(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return std::nullopt;
  std::string value = req.get_param_value(key);
  if (value.empty()) return std::nullopt;
  return value;
}

// Wraps a handler so domain errors become JSON error responses.
template <typename Fn>
httplib::Server::Handler Guard(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      Reply(res, HttpStatusFor(e.code()), ErrorBody(e));
    } catch (const std::exception& e) {
      Reply(res, 500, {{"error", "Internal"}, {"message", e.what()}});
    }
  };
}

}  // namespace

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParseError:
    case ErrorCode::kPreconditionViolation:
      return 400;
    case ErrorCode::kNotQualified:
      return 403;
    case ErrorCode::kNoPairsAvailable:
    case ErrorCode::kInvalidPair:
      return 404;
    case ErrorCode::kAlreadyJudged:
      return 409;
    case ErrorCode::kRationaleRequired:
    case ErrorCode::kEmptyDecisiveSet:
    case ErrorCode::kGraphDisconnected:
      return 422;
    default:
      return 500;
  }
}

nlohmann::json ErrorBody(const Error& error) {
  nlohmann::json body = {{"error", ErrorCodeName(error.code())}, {"message", error.what()}};
  if (const auto* split = dynamic_cast<const GraphDisconnectedError*>(&error)) {
    body["components"] = split->components();
  }
  return body;
}

void RegisterRoutes(httplib::Server& server, Arena& arena) {
  server.Post("/policies", Guard([&arena](const httplib::Request& req, httplib::Response& res) {
    const auto policy = Field<std::string>(ParseBody(req), "policy");
    arena.RegisterPolicy(policy);
    Reply(res, 200, {{"policy", policy}});
  }));

  server.Post("/executions", Guard([&arena](const httplib::Request& req, httplib::Response& res) {
    const ExecutionRecord record = ExecutionFromJson(ParseBody(req));
    Reply(res, 200, {{"execution_id", arena.RegisterExecution(record)}});
  }));

  server.Get("/quiz", Guard([&arena](const httplib::Request& req, httplib::Response& res) {
    const auto annotator = Param(req, "annotator");
    Require(annotator.has_value(), "annotator query parameter is required");
    nlohmann::json pairs = nlohmann::json::array();
    const auto items = arena.IssueQuiz(*annotator);
    for (size_t i = 0; i < items.size(); ++i) {
      pairs.push_back({{"position", i},
                       {"left_uri", items[i].left_uri},
                       {"right_uri", items[i].right_uri}});
    }
    Reply(res, 200, {{"annotator", *annotator}, {"pairs", pairs}});
  }));

  server.Post("/quiz", Guard([&arena](const httplib::Request& req, httplib::Response& res) {
    const nlohmann::json body = ParseBody(req);
    const auto annotator = Field<std::string>(body, "annotator");
    std::vector<Choice> responses;
    for (const auto& r : Field<std::vector<std::string>>(body, "responses")) {
      responses.push_back(ParseChoice(r));
    }
    const QuizState state = arena.EvaluateQuiz(annotator, responses);
    int correct = 0;
    for (const auto& a : state.answered) correct += a.correct ? 1 : 0;
    nlohmann::json out = {{"annotator", annotator}, {"correct", correct},
                          {"passed", state.passed}};
    if (state.passed) out["token"] = state.token;
    Reply(res, 200, out);
  }));

  server.Get("/pairs/next", Guard([&arena](const httplib::Request& req, httplib::Response& res) {
    const std::string annotator = arena.AnnotatorForToken(BearerToken(req));
    Reply(res, 200, AssignmentToJson(arena.NextPair(annotator)));
  }));

  server.Post("/preferences", Guard([&arena](const httplib::Request& req, httplib::Response& res) {
    const std::string annotator = arena.AnnotatorForToken(BearerToken(req));
    const nlohmann::json body = ParseBody(req);
    const auto pair_id = Field<std::string>(body, "pair_id");
    const Choice choice = ParseChoice(Field<std::string>(body, "choice"));
    const std::string rationale = body.value("rationale", "");
    arena.SubmitPreference(pair_id, annotator, choice, rationale);
    Reply(res, 200, {{"pair_id", pair_id}, {"recorded", true}});
  }));

  server.Get("/leaderboard", Guard([&arena](const httplib::Request& req, httplib::Response& res) {
    LeaderboardFilter filter;
    filter.environment = Param(req, "environment");
    filter.perturbation = Param(req, "perturbation");
    Reply(res, 200, arena.Leaderboard(filter));
  }));
}

ArenaServer::ArenaServer(Arena& arena)
    : arena_(arena), server_(std::make_unique<httplib::Server>()) {
  RegisterRoutes(*server_, arena_);
}

ArenaServer::~ArenaServer() { Stop(); }

int ArenaServer::Start(const std::string& host, int port) {
  const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) Fail(ErrorCode::kIoError, "cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

void ArenaServer::Run(const std::string& host, int port) {
  if (!server_->listen(host, port)) {
    Fail(ErrorCode::kIoError, "cannot listen on " + host + ":" + std::to_string(port));
  }
}

void ArenaServer::Stop() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace arena::service
